"""Bound sweeps over poset corpora, optionally across worker processes."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .bounds import _case_of, check_bounds
from .corpus import enumerate_width2, random_width2
from .exact import DEFAULT_PRECISION
from .intervals import breakpoints_and_epochs, canonical_intervals
from .poset import Poset, incomparability_graph

__all__ = ["SweepRow", "COLUMNS", "case_label", "sweep_row", "sweep", "exhaustive_items", "random_items"]

COLUMNS = ("id", "n", "lhs", "log_e", "kappa2", "slack2", "slack3", "tight", "case")


def case_label(p: Poset) -> str:
    """Residual-case label of the epoch pattern (Q shares the epochs of I(P))."""
    if p.n <= 2:
        return "trivial"
    if len(incomparability_graph(p).components) != 1:
        return "split"
    case, _, _ = _case_of(breakpoints_and_epochs(canonical_intervals(p)))
    return str(case)


@dataclass(frozen=True)
class SweepRow:
    id: str
    n: int
    lhs: float
    log_e: float
    kappa2: int
    slack2: float
    slack3: float
    tight: bool
    case: str
    ok: bool

    def values(self) -> tuple:
        return tuple(getattr(self, c) for c in COLUMNS)


def sweep_row(item: tuple[str, Poset], prec: int = DEFAULT_PRECISION) -> SweepRow:
    pid, p = item
    r = check_bounds(p, prec=prec)
    return SweepRow(
        id=pid,
        n=p.n,
        lhs=float(r.lhs),
        log_e=float(r.log_e),
        kappa2=r.kappa2,
        slack2=float(r.slack2),
        slack3=float(r.slack3),
        tight=r.tight,
        case=case_label(p),
        ok=r.ok,
    )


def _row_star(args):
    return sweep_row(*args)


def sweep(items: Iterable[tuple[str, Poset]], *, workers: int = 1, prec: int = DEFAULT_PRECISION) -> list[SweepRow]:
    """Rows in input order; ``workers > 1`` fans out over processes."""
    items = list(items)
    if workers <= 1:
        return [sweep_row(it, prec) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_row_star, [(it, prec) for it in items], chunksize=16))


def exhaustive_items(n_min: int, n_max: int):
    for n in range(n_min, n_max + 1):
        for k, p in enumerate(enumerate_width2(n)):
            yield f"n{n}-{k}", p


def random_items(count: int, n_max: int, seed: int, n_min: int = 1):
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(n_min, n_max)
        yield f"r{seed}-{k}", random_width2(n, rng)
