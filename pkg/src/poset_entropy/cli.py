"""Command-line interface: ``poset-entropy <command> ...``.

Exit status is 0 when everything checked holds, 1 when a bound or check is
violated and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import check_bounds, edge_removal_experiment
from .corpus import KINDS, CorpusSpec, epoch_poset, generate
from .entropy import entropy_bruteforce, km_for_poset
from .errors import PosetEntropyError
from .exact import DEFAULT_PRECISION, ExactReal
from .fileformat import parse_poset, serialize_poset
from .intervals import analyze
from .linext import count_linext, count_linext_bruteforce, count_linext_downsets, count_linext_width2
from .poset import Poset, incomparability_graph
from .render import render_packing, render_q
from .supi import budget_report, greedy_sort, random_linear_extension
from .sweep import COLUMNS, exhaustive_items, random_items, sweep

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _plain(x):
    if isinstance(x, ExactReal):
        return x.format()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def _cell(x) -> str:
    x = _plain(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, list):
        return ",".join(_cell(y) for y in x)
    if isinstance(x, dict):
        return ";".join(f"{k}={_cell(v)}" for k, v in x.items())
    return str(x)


def emit(records: list[dict], fmt: str, out) -> None:
    if not records:
        return
    if fmt == "json-lines":
        for r in records:
            out.write(json.dumps(_plain(r)) + "\n")
    elif fmt == "tsv":
        keys = None
        for r in records:
            if list(r) != keys:
                keys = list(r)
                out.write("\t".join(keys) + "\n")
            out.write("\t".join(_cell(r[k]) for k in keys) + "\n")
    else:
        for i, r in enumerate(records):
            if i:
                out.write("\n")
            width = max(len(k) for k in r)
            for k, v in r.items():
                out.write(f"{k.ljust(width)}  {_cell(v)}\n")


def _load(args) -> Poset:
    if not args.poset:
        raise _Usage("--poset is required")
    text = sys.stdin.read() if args.poset == "-" else Path(args.poset).read_text()
    return parse_poset(text)


def _exact(x: ExactReal) -> dict:
    return {"value": float(x), "exact": x.format()}


# ---------------------------------------------------------------------------
# commands; each returns (records, exit status)


def cmd_entropy(args):
    p = _load(args)
    km = km_for_poset(p)
    rec = {
        "n": p.n,
        "k": km.k,
        "entropy": float(km.entropy),
        "entropy_exact": km.entropy.format(),
        "n_entropy": float(km.n_entropy),
        "n_entropy_exact": km.n_entropy.format(),
    }
    for i, (a, b) in enumerate(km.pairs):
        rec[f"block{i}"] = f"A={{{','.join(a)}}} B={{{','.join(b)}}} ratio={km.ratios[i]}"
    rec["x_star"] = {v: km.x_star[v] for v in p.elements}
    if args.verify:
        fw = entropy_bruteforce(incomparability_graph(p))
        rec["fw_entropy"] = fw.value
        rec["fw_agrees"] = abs(fw.value - float(km.entropy)) <= 1e-6
        return [rec], EXIT_OK if rec["fw_agrees"] else EXIT_VIOLATION
    return [rec], EXIT_OK


def cmd_linext(args):
    p = _load(args)
    methods = {
        "auto": count_linext,
        "width2": count_linext_width2,
        "downsets": count_linext_downsets,
        "bruteforce": count_linext_bruteforce,
    }
    if args.method == "all":
        counts = {m: f(p) for m, f in methods.items()}
        agree = len(set(counts.values())) == 1
        return [{"n": p.n, **counts, "agree": agree}], EXIT_OK if agree else EXIT_VIOLATION
    return [{"n": p.n, "e": methods[args.method](p)}], EXIT_OK


def cmd_intervals(args):
    pl = analyze(_load(args))
    return [
        {"element": v, "chain": pl.chains.side(v), "lo": lo, "hi": hi, "length": hi - lo}
        for v, (lo, hi) in pl.rep.intervals.items()
    ], EXIT_OK


def cmd_epochs(args):
    pl = analyze(_load(args))
    es = pl.epochs
    recs = []
    for i, (psi, omega) in enumerate(es.epochs):
        recs.append({
            "epoch": i,
            "start": es.breakpoints[i],
            "end": es.breakpoints[i + 1],
            "psi": len(psi),
            "omega": len(omega),
            "Psi": list(psi),
            "Omega": list(omega),
        })
    return recs, EXIT_OK


def cmd_phantoms(args):
    pl = analyze(_load(args))
    if pl.phantoms is None:
        raise _Usage("incomparability graph is disconnected; phantom edges are not defined")
    recs = [
        {"u": e.u, "v": e.v, "between": list(e.between), "orientation": e.orientation, "ambiguous": e.ambiguous}
        for e in pl.phantoms
    ]
    q = {"Q_covers": [f"{u}<{v}" for u, v in pl.Q.covers()], "Q_equals_P": pl.Q == pl.poset,
         "ambiguous": pl.phantoms.ambiguous}
    return recs + [q], EXIT_OK


def cmd_verify_bound(args):
    p = _load(args)
    r = check_bounds(p, prec=args.precision)
    rec = {
        "n": r.n,
        "e": r.e,
        "lhs": _exact(r.lhs),
        "log_e": _exact(r.log_e),
        "kappa2": r.kappa2,
        "slack_lower": float(r.slack1_lower),
        "slack_c0": r.slack1_upper,
        "slack2": _exact(r.slack2),
        "slack3": _exact(r.slack3),
        "tight": r.tight,
        "max_degree": r.max_degree,
        "ok": r.ok,
    }
    return [rec], EXIT_OK if r.ok else EXIT_VIOLATION


def cmd_sweep(args):
    items = list(exhaustive_items(args.n_min, args.n_max))
    if args.random:
        items += list(random_items(args.random, args.random_n, args.seed))
    rows = sweep(items, workers=args.workers, prec=args.precision)
    recs = [dict(zip(COLUMNS, r.values())) for r in rows]
    return recs, EXIT_OK if all(r.ok for r in rows) else EXIT_VIOLATION


def cmd_edge_removal(args):
    p = epoch_poset(args.psi, args.omega)
    ex = edge_removal_experiment(p, prec=args.precision)
    rec = {
        "psi": args.psi,
        "omega": args.omega,
        "u": ex.pair.u,
        "v": ex.pair.v,
        "overlap": ex.overlap,
        "delta_h": float(ex.delta_h),
        "bound_h": float(ex.bound_h),
        "delta_e": float(ex.delta_e),
        "bound_e": float(ex.bound_e),
        "M": ex.classes.get("M"),
        "M_forward": ex.classes.get("M_forward"),
        "M_bound": ex.M_bound,
        "split_sizes": [ex.split[0].n, ex.split[1].n],
        **{f"check_{k}": v for k, v in ex.checks.items()},
        "ok": ex.ok,
    }
    return [rec], EXIT_OK if ex.ok else EXIT_VIOLATION


def cmd_sort_sim(args):
    p = _load(args)
    if args.hidden:
        hidden = args.hidden.replace(",", " ").split()
        if len(hidden) == 1 and p.n > 1:
            hidden = list(hidden[0])
    else:
        hidden = random_linear_extension(p, random.Random(args.seed))
    t = greedy_sort(p, hidden)
    rep = budget_report(t)
    recs = [
        {"step": i + 1, "query": f"{u}{op}{v}", "e_after": t.counts[i + 1], "drop": float(rep["trace"][i])}
        for i, (u, v, op) in enumerate(t.queries)
    ]
    ok = rep["sound"] and rep["within_budget2"]
    recs.append({
        "hidden": " ".join(t.hidden_order),
        "e": t.counts[0],
        "queries": t.n_queries,
        "budget2": t.budget2,
        "refined_budget": t.refined_budget,
        "within_budget2": rep["within_budget2"],
        "within_refined": rep["within_refined"],
        "conserved": rep["conserved"],
        "sound": rep["sound"],
    })
    return recs, EXIT_OK if ok else EXIT_VIOLATION


def cmd_generate(args):
    sizes = tuple(int(s) for s in args.sizes.split(",")) if args.sizes else ()
    spec = CorpusSpec(args.kind, n=args.n, count=args.count, psi=args.psi, omega=args.omega,
                      case=args.case, param=args.param, seed=args.seed or 0, sizes=sizes)
    return "\n".join(serialize_poset(p) for p in generate(spec)), EXIT_OK


def cmd_render(args):
    pl = analyze(_load(args))
    return (render_q(pl) if args.q else render_packing(pl)), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset", help="poset file ('-' for stdin)")
    common.add_argument("--format", choices=("text", "tsv", "json-lines"), default=None,
                        help="default: tsv for sweep, text otherwise")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="bits for certified signs")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="poset-entropy", description="Entropy and linear extensions of width-2 posets.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("entropy", cmd_entropy, "KM decomposition and graph entropy")
    sp.add_argument("--verify", action="store_true", help="cross-check with the Frank-Wolfe oracle")
    sp = add("linext", cmd_linext, "count linear extensions")
    sp.add_argument("--method", choices=("auto", "width2", "downsets", "bruteforce", "all"), default="auto")
    add("intervals", cmd_intervals, "canonical interval representation")
    add("epochs", cmd_epochs, "breakpoints and epochs")
    add("phantoms", cmd_phantoms, "phantom edges and the poset Q")
    add("verify-bound", cmd_verify_bound, "check the entropy bounds on one poset")
    sp = add("sweep", cmd_sweep, "check the bounds over a corpus (TSV)")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--random", type=int, default=0, help="also this many random posets")
    sp.add_argument("--random-n", type=int, default=12)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(default_format="tsv")
    sp = add("edge-removal", cmd_edge_removal, "remove the small-overlap edge inside one epoch")
    sp.add_argument("--psi", type=int, required=True)
    sp.add_argument("--omega", type=int, required=True)
    sp = add("sort-sim", cmd_sort_sim, "greedy sorting simulation")
    sp.add_argument("--hidden", help="hidden total order, e.g. 'a,d,b,e,c,f'")
    sp = add("generate", cmd_generate, "write corpus posets in the poset file format")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--psi", type=int, default=0)
    sp.add_argument("--omega", type=int, default=0)
    sp.add_argument("--case", type=int, default=0)
    sp.add_argument("--param", type=int, default=0)
    sp.add_argument("--sizes", help="summand sizes for two-antichain-sum, e.g. 2,1,2")
    sp = add("render", cmd_render, "SVG of the rectangle packing (or of Q with --q)")
    sp.add_argument("--q", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.seed is None:
        args.seed = 0
    if args.format is None:
        args.format = getattr(args, "default_format", "text")
    try:
        result, status = args.func(args)
    except (_Usage, PosetEntropyError, OSError) as exc:
        print(f"poset-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if isinstance(result, str):
            out.write(result)
        else:
            emit(result, args.format, out)
    finally:
        if args.out:
            out.close()
    return status


if __name__ == "__main__":
    sys.exit(main())
