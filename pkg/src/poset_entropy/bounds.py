"""Checks of the entropy / linear-extension inequalities and supporting steps.

Every inequality is decided on :class:`~poset_entropy.exact.ExactReal`
values: exact equalities symbolically, strict signs by certified interval
evaluation.  A check with tolerance ``tol`` passes when the certified lower
bound of the slack is at least ``-tol``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .entropy import km_for_poset
from .errors import OracleMismatch, PreconditionFailed
from .exact import DEFAULT_PRECISION, ExactReal, iv_log2e, log2
from .intervals import (
    EpochStructure,
    IntervalRep,
    breakpoints_and_epochs,
    canonical_intervals,
    interval_order_of,
)
from .linext import count_linext, fibonacci, iter_linear_extensions
from .poset import Poset, chain_cover_2, incomparability_graph, kappa2

__all__ = [
    "epsilon",
    "BoundReport",
    "check_bounds",
    "check_tightness",
    "OverlapPair",
    "find_small_overlap_pair",
    "solve_overlap",
    "EdgeRemovalExperiment",
    "edge_removal_experiment",
    "classify_extensions",
    "check_log_inequality",
    "GAP_POLYNOMIAL",
    "gap_polynomial",
    "SpecialCase",
    "classify_special_case",
    "path_lhs",
    "star_lhs",
    "path_f",
    "star_f",
    "star_gap",
    "closed_form",
    "RATIO_BOUNDS",
    "nonneg",
]

TOL = 1e-9


def epsilon() -> ExactReal:
    """``2 - (3 log 3 - 2)/log 3``, i.e. ``2/log 3 - 1``."""
    return 2 / log2(3) - 1


def nonneg(x: ExactReal, tol: float = TOL, prec: int = DEFAULT_PRECISION) -> bool:
    """Certified ``x >= -tol`` (exact zero is detected symbolically)."""
    if x.is_zero():
        return True
    if x.is_rational():
        return x.as_fraction() >= -Fraction(tol)
    return bool(x.interval(prec).a >= -tol)


def _c0_slack(lhs: ExactReal, log_e: ExactReal, prec: int):
    """Certified enclosure of ``c0 * log e - lhs`` with ``c0 = 1 + 7 log2(e)``."""
    with mpmath.workprec(prec):
        c0 = 1 + 7 * iv_log2e(prec)
        return c0 * log_e.interval(prec) - lhs.interval(prec)


@dataclass(frozen=True)
class BoundReport:
    n: int
    e: int
    lhs: ExactReal  # n * Hbar(P)
    log_e: ExactReal
    kappa2: int
    rhs2: ExactReal
    rhs3: ExactReal
    slack1_lower: ExactReal  # lhs - log e
    slack1_upper: float  # certified lower bound of c0 log e - lhs
    slack2: ExactReal
    slack3: ExactReal
    tight: bool
    max_degree: int
    ok1: bool
    ok2: bool
    ok3: bool

    @property
    def ok(self) -> bool:
        return self.ok1 and self.ok2 and self.ok3

    @property
    def tight_iff_matching(self) -> bool:
        return self.tight == (self.max_degree <= 1)


def check_bounds(p: Poset, *, tol: float = TOL, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Evaluate the three upper/lower bounds on ``n * Hbar(P)`` for a width-2 poset."""
    km = km_for_poset(p)
    e = count_linext(p)
    lhs = km.n_entropy
    log_e = log2(e)
    k2 = kappa2(p)
    eps = epsilon()
    rhs2 = 2 * log_e
    rhs3 = (2 - eps) * log_e + eps * k2
    s1 = lhs - log_e
    s2 = rhs2 - lhs
    s3 = rhs3 - lhs
    if lhs.is_zero() and log_e.is_zero():
        up, ok_up = 0.0, True
    else:
        iv = _c0_slack(lhs, log_e, prec)
        up, ok_up = float(iv.a), bool(iv.a >= -tol)
    return BoundReport(
        n=p.n,
        e=e,
        lhs=lhs,
        log_e=log_e,
        kappa2=k2,
        rhs2=rhs2,
        rhs3=rhs3,
        slack1_lower=s1,
        slack1_upper=up,
        slack2=s2,
        slack3=s3,
        tight=s2.is_zero(),
        max_degree=incomparability_graph(p).max_degree(),
        ok1=nonneg(s1, tol, prec) and ok_up,
        ok2=nonneg(s2, tol, prec),
        ok3=nonneg(s3, tol, prec),
    )


def check_tightness(p: Poset) -> bool:
    """Whether ``n * Hbar(P) = 2 log e(P)``; raises if that disagrees with
    "max degree of the incomparability graph is at most 1"."""
    rep = check_bounds(p)
    if not rep.tight_iff_matching:
        raise OracleMismatch(f"equality {rep.tight} but max degree {rep.max_degree}")
    return rep.tight


# ---------------------------------------------------------------------------
# edge removal inside an epoch


def solve_overlap(psi: int, omega: int) -> tuple[int, int]:
    """The unique ``(m, p)`` with ``m*omega - p*psi = 1``, ``0 < m < psi``, ``0 < p < omega``."""
    if omega < 2 or psi < 2 or math.gcd(psi, omega) != 1:
        raise PreconditionFailed(f"need coprime psi, omega >= 2, got ({psi}, {omega})")
    for m in range(1, psi):
        if (m * omega - 1) % psi == 0:
            p = (m * omega - 1) // psi
            if 0 < p < omega:
                return m, p
    raise PreconditionFailed(f"no overlap solution for ({psi}, {omega})")  # unreachable when coprime


@dataclass(frozen=True)
class OverlapPair:
    epoch: int
    psi: int  # size of the part holding u (the larger part)
    omega: int
    m: int
    p: int
    u: str
    v: str
    u_prime: str
    v_prime: str
    swapped: bool  # True when Omega_i is the larger part


def find_small_overlap_pair(es: EpochStructure, i: int) -> OverlapPair:
    """Elements ``u`` (m-th short interval) and ``v`` ((p+1)-th long interval)
    whose intervals overlap in length ``1/(psi*omega)``.

    The larger part of the epoch plays the role of Psi.
    """
    big, small = es.epochs[i]
    swapped = len(small) > len(big)
    if swapped:
        big, small = small, big
    psi, omega = len(big), len(small)
    if omega < 2 or psi == omega:
        raise PreconditionFailed(f"epoch {i} has sizes ({psi}, {omega}); need psi > omega >= 2")
    m, p = solve_overlap(psi, omega)
    return OverlapPair(i, psi, omega, m, p, big[m - 1], small[p], big[m], small[p - 1], swapped)


def classify_extensions(p: Poset, u: str, v: str) -> dict:
    """Split the linear extensions of ``p`` by the orientation of incomparable
    pairs touching neither ``u`` nor ``v``.

    Returns the class count, the largest class ``M`` (all members) and
    ``M_forward`` (forward members only), and counts of backward (``v`` before
    ``u``), forward and good forward extensions.
    """
    g = incomparability_graph(p)
    rest = [(a, b) for a, b in g.edges if {a, b}.isdisjoint((u, v))]
    nu = g.neighbors(u) - {v}
    nv = g.neighbors(v) - {u}
    classes: Counter = Counter()
    per_class_good_fwd: Counter = Counter()
    per_class_back: Counter = Counter()
    per_class_fwd: Counter = Counter()
    backward = forward = good = 0
    for ext in iter_linear_extensions(p):
        pos = {x: k for k, x in enumerate(ext)}
        key = tuple(pos[a] < pos[b] for a, b in rest)
        classes[key] += 1
        if pos[v] < pos[u]:
            backward += 1
            per_class_back[key] += 1
        else:
            forward += 1
            per_class_fwd[key] += 1
            if all(pos[v] < pos[w] for w in nv) and all(pos[z] < pos[u] for z in nu):
                good += 1
                per_class_good_fwd[key] += 1
    one_each = all(per_class_back[k] == 1 and per_class_good_fwd[k] == 1 for k in classes)
    return {
        "classes": len(classes),
        "M": max(classes.values()) if classes else 0,
        "M_forward": max(per_class_fwd.values()) if per_class_fwd else 0,
        "backward": backward,
        "forward": forward,
        "good_forward": good,
        "one_each": one_each,
    }


@dataclass(frozen=True)
class EdgeRemovalExperiment:
    pair: OverlapPair
    p_prime: Poset
    split: tuple[Poset, Poset]
    overlap: Fraction  # relative to the epoch width
    delta_h: ExactReal
    delta_e: ExactReal
    bound_h: ExactReal
    bound_e: ExactReal
    M_bound: Fraction
    classes: dict
    perturbed: IntervalRep
    perturbed_consistent: bool
    perturbed_cost_delta: ExactReal
    epoch_elements_per_part: tuple[int, int]
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _local_width(rep: IntervalRep, elements) -> tuple[Fraction, Fraction]:
    lo = min(rep.lo(v) for v in elements)
    hi = max(rep.hi(v) for v in elements)
    return lo, hi - lo


def edge_removal_experiment(
    p: Poset,
    es: EpochStructure | None = None,
    i: int = 0,
    *,
    enumerate_extensions: bool = True,
    tol: float = TOL,
    prec: int = DEFAULT_PRECISION,
) -> EdgeRemovalExperiment:
    """Remove the small-overlap incomparability ``uv`` inside epoch ``i``
    and measure how entropy and the extension count change."""
    if es is None:
        es = breakpoints_and_epochs(canonical_intervals(p))
    rep = es.rep
    if rep is None:
        raise PreconditionFailed("epoch structure carries no interval representation")
    pair = find_small_overlap_pair(es, i)
    epoch = es.elements(i)
    ip = interval_order_of(rep)
    if p.restrict(epoch) != ip.restrict(epoch):
        raise PreconditionFailed(f"P does not coincide with I(P) on epoch {i}")
    u, v, u2, v2 = pair.u, pair.v, pair.u_prime, pair.v_prime
    psi, omega = pair.psi, pair.omega
    start, width = _local_width(rep, epoch)

    lo_u, hi_u = rep.intervals[u]
    lo_v, hi_v = rep.intervals[v]
    overlap = (min(hi_u, hi_v) - max(lo_u, lo_v)) / width

    p_prime = p.with_relation(u, v)

    # perturbed lengths: shift the u|u' endpoint left and the v'|v endpoint right
    du = width / (psi * (psi + omega))
    dv = width / (omega * (psi + omega))
    pert = dict(rep.intervals)
    pert[u] = (lo_u, hi_u - du)
    pert[u2] = (rep.lo(u2) - du, rep.hi(u2))
    pert[v] = (lo_v + dv, hi_v)
    pert[v2] = (rep.lo(v2), rep.hi(v2) + dv)
    prep = IntervalRep(pert, rep.span, "perturbed", rep.chains)
    beta = hi_u - du
    consistent = interval_order_of(prep).extends(p_prime)
    cost_delta = ExactReal.sum(
        log2(rep.length(w)) - log2(prep.length(w)) for w in (u, u2, v, v2)
    )

    left = [w for w in p.elements if prep.hi(w) <= beta]
    right = [w for w in p.elements if w not in set(left)]
    is_sum = all(p_prime.less(a, b) for a in left for b in right)
    part1, part2 = p_prime.restrict(left), p_prime.restrict(right)
    per_part = (sum(1 for w in epoch if w in set(left)), sum(1 for w in epoch if w in set(right)))

    km_p = km_for_poset(p)
    km_pp = km_for_poset(p_prime)
    e_p, e_pp = count_linext(p), count_linext(p_prime)
    delta_h = km_p.n_entropy - km_pp.n_entropy
    delta_e = log2(Fraction(e_p, e_pp))
    s = psi + omega
    bound_h = 2 * log2(Fraction(s * s, s * s - 1))
    M_bound = Fraction(2 * psi, omega) + 4
    bound_e = log2(1 + 1 / M_bound)
    eps = epsilon()

    classes = classify_extensions(p, u, v) if enumerate_extensions else {}

    # induction chain, one step at a time
    parts_lhs = km_for_poset(part1).n_entropy + km_for_poset(part2).n_entropy if is_sum else None
    e1, e2 = (count_linext(part1), count_linext(part2)) if is_sum else (0, 0)
    checks = {
        "overlap": overlap == Fraction(1, psi * omega),
        "delta_h": nonneg(bound_h - delta_h, tol, prec),
        "delta_e": nonneg(delta_e - bound_e, tol, prec),
        "ordinal_sum": is_sum,
        "three_each": min(per_part) >= 3 or psi == omega + 1,
        "perturbed_consistent": consistent,
        "perturbed_cost": cost_delta == bound_h,
        "log_inequality": nonneg(Fraction(3, 2) * bound_e - bound_h, 0.0, prec),
        "step_ratio": nonneg((2 - eps) * delta_e - delta_h, tol, prec),
        "parts_pair_free": is_sum and kappa2(part1) == 0 and kappa2(part2) == 0,
    }
    if is_sum:
        checks["chain_split_entropy"] = parts_lhs == km_pp.n_entropy
        checks["chain_split_count"] = e1 * e2 == e_pp
        checks["chain_parts"] = nonneg((2 - eps) * log2(e1) + eps * kappa2(part1) - km_for_poset(part1).n_entropy, tol, prec) and nonneg(
            (2 - eps) * log2(e2) + eps * kappa2(part2) - km_for_poset(part2).n_entropy, tol, prec
        )
        checks["chain_total"] = nonneg((2 - eps) * log2(e_p) - km_p.n_entropy, tol, prec)
    if classes:
        checks["M"] = classes["M"] <= M_bound
        checks["M_forward"] = classes["M_forward"] <= M_bound
        checks["backward_eq_good_forward"] = classes["backward"] == classes["good_forward"]
    return EdgeRemovalExperiment(
        pair=pair,
        p_prime=p_prime,
        split=(part1, part2),
        overlap=overlap,
        delta_h=delta_h,
        delta_e=delta_e,
        bound_h=bound_h,
        bound_e=bound_e,
        M_bound=M_bound,
        classes=classes,
        perturbed=prep,
        perturbed_consistent=consistent,
        perturbed_cost_delta=cost_delta,
        epoch_elements_per_part=per_part,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# the (u+7/4)^4 (u+5/2)^3 >= (u+2)^7 inequality

# (u+7/4)^4 (u+5/2)^3 - (u+2)^7, lowest degree first
GAP_POLYNOMIAL = (
    Fraction(37981, 2048),
    Fraction(64323, 1024),
    Fraction(44751, 512),
    Fraction(16401, 256),
    Fraction(209, 8),
    Fraction(45, 8),
    Fraction(1, 2),
)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_pow(a: list[Fraction], k: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def gap_polynomial() -> list[Fraction]:
    """Coefficients of ``(u+7/4)^4 (u+5/2)^3 - (u+2)^7`` by direct expansion."""
    lhs = _poly_mul(_poly_pow([Fraction(7, 4), Fraction(1)], 4), _poly_pow([Fraction(5, 2), Fraction(1)], 3))
    rhs = _poly_pow([Fraction(2), Fraction(1)], 7)
    diff = [a - b for a, b in zip(lhs, rhs)]
    while diff and diff[-1] == 0:
        diff.pop()
    return diff


def check_log_inequality(x, y, prec: int = DEFAULT_PRECISION) -> bool:
    """``2 log(1/(1-1/(x+y)^2)) <= (3/2) log(1 + 1/(2x/y+4))`` (certified) and
    the polynomial form at ``u = x/y`` (exact)."""
    x, y = Fraction(x), Fraction(y)
    if not x >= y >= 2:
        raise PreconditionFailed(f"need x >= y >= 2, got ({x}, {y})")
    s2 = (x + y) ** 2
    lhs = 2 * log2(s2 / (s2 - 1))
    rhs = Fraction(3, 2) * log2(1 + 1 / (2 * x / y + 4))
    u = x / y
    poly = (u + Fraction(7, 4)) ** 4 * (u + Fraction(5, 2)) ** 3 - (u + 2) ** 7
    return (rhs - lhs).sign(prec) >= 0 and poly >= 0


# ---------------------------------------------------------------------------
# special cases


def path_lhs(q: int) -> ExactReal:
    """``n * Hbar`` of the ``(2q+1)``-vertex path."""
    return (q + 1) * log2(Fraction(2 * q + 1, q + 1)) + q * log2(Fraction(2 * q + 1, q))


def star_lhs(psi: int) -> ExactReal:
    """``n * Hbar`` of the star with ``psi`` leaves."""
    return psi * log2(Fraction(psi + 1, psi)) + log2(psi + 1)


def star_f(u: int) -> float:
    return float(star_lhs(u)) / float(log2(u + 1))


def star_gap(u: int) -> ExactReal:
    """``(2 - eps) log(u+1) - star_lhs(u)``; exactly zero at ``u = 2``."""
    return (2 - epsilon()) * log2(u + 1) - star_lhs(u)


def path_f(q: int, prec: int = 128):
    """Upper bound on the path ratio from ``F_n >= phi^(n-2)`` (certified interval)."""
    with mpmath.workprec(prec):
        iv = mpmath.iv
        iv.prec = prec
        phi = (1 + iv.sqrt(5)) / 2
        ln2 = iv.log(2)

        def lg(a, b):
            return iv.log(iv.mpf(a) / b) / ln2

        num = iv.mpf(q + 1) / q * lg(2 * q + 1, q + 1) + lg(2 * q + 1, q)
        return num / (2 * iv.log(phi) / ln2)


RATIO_BOUNDS = {
    1: None,  # 2 - eps
    2: None,  # 2 - eps
    3: Fraction(17, 10),
    4: Fraction(17, 10),
    5: Fraction(43, 25),
    6: Fraction(17, 10),
}


@dataclass(frozen=True)
class SpecialCase:
    case: object  # 1..6, "general", "split" or "trivial"
    epoch: int | None = None
    param: int | None = None
    lhs: ExactReal | None = None
    log_e: ExactReal | None = None
    lhs_formula: ExactReal | None = None
    log_e_formula: ExactReal | None = None
    ratio_bound: object = None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def ratio(self) -> float | None:
        if self.lhs is None or self.log_e is None or self.log_e.is_zero():
            return None
        return float(self.lhs) / float(self.log_e)


def closed_form(case: int, param: int) -> tuple[ExactReal, ExactReal]:
    """Tabulated ``(n * Hbar, log e)`` for a special case and its parameter."""
    if case == 1:
        return path_lhs(param), log2(fibonacci(2 * param + 2))
    if case == 2:
        return star_lhs(param), log2(param + 1)
    if case == 3:
        return 2 + star_lhs(param), log2(2 * param + 3)
    if case == 4:
        return 4 + star_lhs(param), log2(4 * param + 8)
    if case == 5:
        return 2 + path_lhs(param), log2(fibonacci(2 * param + 4))
    if case == 6:
        return 4 + path_lhs(param), log2(fibonacci(2 * param + 6))
    raise ValueError(f"no closed form for case {case}")


def _case_of(es: EpochStructure) -> tuple[object, int | None, int | None]:
    sizes = [a + b for a, b in zip(es.psi, es.omega)]
    ell = es.ell
    if ell == 1:
        i = 0
    elif ell == 2 and (sizes[0] == 2 or sizes[1] == 2):
        i = 1 if sizes[0] == 2 else 0
    elif ell == 3 and sizes[0] == 2 and sizes[2] == 2:
        i = 1
    else:
        return "general", None, None
    x, y = max(es.psi[i], es.omega[i]), min(es.psi[i], es.omega[i])
    if ell == 1:
        if x == y + 1:
            return 1, i, y
        if y == 1 and x >= 3:
            return 2, i, x
        return "general", i, None
    if y == 1 and x >= 2:
        return (3 if ell == 2 else 4), i, x
    if x == y + 1:
        return (5 if ell == 2 else 6), i, y
    return "general", i, None


def classify_special_case(p: Poset, es: EpochStructure | None = None, *, prec: int = DEFAULT_PRECISION) -> SpecialCase:
    """Match ``p`` against the residual cases and check the tabulated values.

    ``p`` should be in post-phantom normal form (``P = Q``).  For cases 1-6
    the exact ``n * Hbar`` and ``log e`` are compared with the closed forms,
    and the ratio with its bound (``2 - eps`` for cases 1-2).
    """
    if p.n <= 2:
        return SpecialCase("trivial")
    if len(incomparability_graph(p).components) != 1:
        return SpecialCase("split")
    if es is None:
        es = breakpoints_and_epochs(canonical_intervals(p))
    case, i, param = _case_of(es)
    if not isinstance(case, int):
        return SpecialCase(case, i)
    lhs = km_for_poset(p).n_entropy
    log_e = log2(count_linext(p))
    lhs_f, log_e_f = closed_form(case, param)
    bound = RATIO_BOUNDS[case]
    bound_x = (2 - epsilon()) if bound is None else ExactReal.const(bound)
    checks = {
        "lhs": lhs == lhs_f,
        "log_e": log_e == log_e_f,
        "ratio": nonneg(bound_x * log_e - lhs, 0.0, prec),
    }
    return SpecialCase(case, i, param, lhs, log_e, lhs_f, log_e_f, bound_x, checks)
