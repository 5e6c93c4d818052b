"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line and the
session summary repeats them."""

import math
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE
from poset_entropy.bounds import (
    RATIO_BOUNDS,
    check_bounds,
    check_log_inequality,
    closed_form,
    edge_removal_experiment,
    epsilon,
    nonneg,
    path_lhs,
    star_gap,
)
from poset_entropy.corpus import enumerate_width2, epoch_poset, path_poset, random_width2, residual_case_poset
from poset_entropy.entropy import entropy_bruteforce, km_for_poset
from poset_entropy.exact import ExactReal, log2
from poset_entropy.intervals import analyze
from poset_entropy.linext import (
    count_linext,
    count_linext_bruteforce,
    count_linext_downsets,
    count_linext_width2,
    fibonacci,
)
from poset_entropy.poset import comparability_graph, incomparability_graph, kappa2
from poset_entropy.supi import budget_report, greedy_sort, random_linear_extension
from poset_entropy.sweep import exhaustive_items, sweep

SEED = 20240601


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


def corpus(n_max):
    for n in range(n_max + 1):
        yield from enumerate_width2(n)


def test_criterion_1_example(example1):
    t0 = time.perf_counter()
    pl = analyze(example1)
    hbar = pl.km.entropy
    h = log2(6) - hbar
    thirds = {Fraction(k, 3) for k in range(4)}
    checks = {
        "Hbar=1": hbar == 1,
        "H=log3": h == log2(3),
        "e=13": count_linext(example1) == 13,
        "thirds": all({lo, hi} <= thirds and hi - lo == Fraction(1, 3) for lo, hi in pl.rep.intervals.values()),
        "kappa2(P)=0": kappa2(example1) == 0,
        "kappa2(I(P))=3": kappa2(pl.IP) == 3,
        "phantoms": pl.phantoms.pairs() == {frozenset("db"), frozenset("ec")},
        "Q=P": pl.Q == example1,
    }
    elapsed = time.perf_counter() - t0
    checks["runtime<1s"] = elapsed < 1.0
    bad = [k for k, v in checks.items() if not v]
    record(1, not bad, f"{elapsed:.3f}s" + (f" failed: {bad}" if bad else ""))
    assert not bad


def test_criterion_2_bound_sweep():
    t0 = time.perf_counter()
    bad, tight_mismatch, count, tight = [], [], 0, 0
    for pid, p in exhaustive_items(0, 8):
        r = check_bounds(p, tol=1e-9)
        count += 1
        tight += r.tight
        if not (r.ok1 and r.ok2 and r.ok3):
            bad.append(pid)
        if r.tight != (r.max_degree <= 1):
            tight_mismatch.append(pid)
    elapsed = time.perf_counter() - t0
    ok = not bad and not tight_mismatch and count == 1055
    record(2, ok, f"{count} posets, {tight} tight, violations={len(bad)}, "
                  f"equality/degree mismatches={len(tight_mismatch)}, {elapsed:.1f}s single-threaded")
    assert ok


def test_criterion_2_parallel_agrees():
    items = list(exhaustive_items(0, 8))
    seq = sweep(items[:300])
    par = sweep(items[:300], workers=4)
    assert seq == par


def test_criterion_3_km_vs_frank_wolfe():
    worst_km, worst_pgh, count = 0.0, 0.0, 0
    for p in corpus(8):
        g = incomparability_graph(p)
        if p.n < 2 or len(g.components) != 1:
            continue
        count += 1
        h_bar = float(km_for_poset(p).entropy)
        fw_bar = entropy_bruteforce(g).value
        fw_comp = entropy_bruteforce(comparability_graph(p)).value
        worst_km = max(worst_km, abs(h_bar - fw_bar))
        worst_pgh = max(worst_pgh, abs(fw_bar + fw_comp - math.log2(p.n)))
    ok = worst_km <= 1e-6 and worst_pgh <= 1e-6
    record(3, ok, f"{count} connected graphs, max |KM-FW|={worst_km:.2e}, max |H+Hc-log n|={worst_pgh:.2e}")
    assert ok


def test_criterion_4_closed_forms():
    fib = all(count_linext(path_poset(n)) == fibonacci(n + 1) for n in range(3, 21))
    ratio = path_lhs(2)
    expected = 3 * log2(Fraction(5, 3)) + 2 * log2(Fraction(5, 2))
    ratio_ok = (
        ratio == expected
        and log2(count_linext(path_poset(5))) == log2(8)
        and (ratio - Fraction(1615, 1000) * log2(8)).sign() > 0
        and (Fraction(1625, 1000) * log2(8) - ratio).sign() > 0
    )
    star_ok = star_gap(2).is_zero()
    eps = epsilon()
    eps_ok = (eps - Fraction(2615, 10000)).sign() > 0 and (Fraction(2625, 10000) - eps).sign() > 0
    ok = fib and ratio_ok and star_ok and eps_ok
    record(4, ok, f"F_(n+1)={fib}, path ratio {float(expected / 3):.5f} in range={ratio_ok}, "
                  f"f(2)=2-eps exactly={star_ok}, eps={float(eps):.5f} in range={eps_ok}")
    assert ok


EDGE_PAIRS = [
    (psi, omega)
    for omega in range(2, 9)
    for psi in range(omega, 9)
    if psi > omega + 1 and math.gcd(psi, omega) == 1
]


def test_criterion_5_edge_removal():
    assert EDGE_PAIRS == [(5, 2), (7, 2), (5, 3), (7, 3), (8, 3), (7, 4), (7, 5), (8, 5)]
    t0 = time.perf_counter()
    failures = []
    notes = []
    for psi, omega in EDGE_PAIRS:
        ex = edge_removal_experiment(epoch_poset(psi, omega), tol=1e-9)
        sub = {
            "a": ex.overlap == Fraction(1, psi * omega),
            "b": nonneg(ex.bound_h - ex.delta_h, 1e-9),
            "c": nonneg(ex.delta_e - ex.bound_e, 1e-9),
            "d": ex.checks["ordinal_sum"] and min(ex.epoch_elements_per_part) >= 3,
            "e": ex.classes["M"] <= ex.M_bound,
            "f": ex.classes["backward"] == ex.classes["good_forward"],
        }
        for k, v in sub.items():
            if not v:
                failures.append(f"({psi},{omega}){k}")
        if not sub["e"]:
            notes.append(f"({psi},{omega}): largest class {ex.classes['M']} > {ex.M_bound}"
                         f" (forward members {ex.classes['M_forward']})")
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 300
    record(5, ok, f"{len(EDGE_PAIRS)} pairs, {elapsed:.1f}s" + (f"; failed {failures}; " + "; ".join(notes) if failures else ""))
    assert ok


def test_criterion_6_gap_inequality():
    grid = sorted({Fraction(p, q) for q in range(1, 9) for p in range(q, 16 * q + 1)})
    poly_ok = all(
        (u + Fraction(7, 4)) ** 4 * (u + Fraction(5, 2)) ** 3 - (u + 2) ** 7 >= 0 for u in grid
    )
    pairs = [(x, y) for y in range(2, 9) for x in range(y, 16 * y + 1)]
    assert {Fraction(x, y) for x, y in pairs} == set(grid)
    log_ok = all(check_log_inequality(x, y) for x, y in pairs)
    ok = poly_ok and log_ok
    record(6, ok, f"{len(grid)} grid points exact={poly_ok}, {len(pairs)} (x,y) pairs certified={log_ok}")
    assert ok


RESIDUAL_PARAMS = {3: range(2, 9), 4: range(2, 9), 5: range(1, 9), 6: range(1, 9)}


def test_criterion_7_residual_cases():
    failures = []
    for case, params in RESIDUAL_PARAMS.items():
        bound = RATIO_BOUNDS[case]
        for param in params:
            p = residual_case_poset(case, param)
            lhs = km_for_poset(p).n_entropy
            e = count_linext(p)
            log_e = log2(e)
            lhs_f, log_e_f = closed_form(case, param)
            if lhs != lhs_f:
                failures.append(f"case {case} param {param}: |P|Hbar")
            if log_e != log_e_f:
                tab = 2 ** float(log_e_f)
                failures.append(f"case {case} param {param}: e={e}, closed form {tab:.0f}")
            if not nonneg(ExactReal.const(bound) * log_e - lhs, 0.0):
                failures.append(f"case {case} param {param}: ratio {float(lhs) / float(log_e):.4f} > {bound}")
    ok = not failures
    by_kind = {}
    for f in failures:
        by_kind.setdefault(f.split(":")[0].split(" param")[0], []).append(f.split(": ", 1)[1])
    summary = "; ".join(f"{k}: {len(v)} mismatches (first: {v[0]})" for k, v in by_kind.items())
    record(7, ok, "all cases match" if ok else summary)
    assert ok, failures


def test_criterion_8_sorter():
    rng = random.Random(SEED)
    runs, over, broken = 0, [], []

    def run(p):
        nonlocal runs
        t = greedy_sort(p, random_linear_extension(p, rng))
        r = budget_report(t)
        runs += 1
        if not r["within_budget2"]:
            over.append((p, t.n_queries, t.budget2))
        if not (r["conserved"] and r["sound"]):
            broken.append(p)

    for p in corpus(8):
        for _ in range(3):
            run(p)
    for _ in range(200):
        run(random_width2(rng.randint(1, 12), rng))
    ok = not over and not broken
    record(8, ok, f"{runs} transcripts, over budget={len(over)}, conservation/soundness failures={len(broken)}")
    assert ok


def test_criterion_9_oracle_triad():
    count, bad = 0, []
    for p in corpus(9):
        count += 1
        a, b, c = count_linext_width2(p), count_linext_downsets(p), count_linext_bruteforce(p)
        if not a == b == c:
            bad.append((p, a, b, c))
    ok = not bad
    record(9, ok, f"{count} posets with n <= 9, disagreements={len(bad)}")
    assert ok
