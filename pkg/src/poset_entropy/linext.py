"""Exact linear-extension counting.

Three independent counters:

* :func:`count_linext_width2` - lattice-path DP over a two-chain cover,
* :func:`count_linext_downsets` - DP over down-sets (any width),
* :func:`count_linext_bruteforce` - all ``n!`` permutations.
"""

from __future__ import annotations

from typing import Iterator

from . import kernels
from .errors import InvalidCover, LimitExceeded, WidthExceeded
from .poset import ChainPair, Poset, chain_cover_2, is_chain_cover

__all__ = [
    "count_linext_width2",
    "count_linext_downsets",
    "count_linext_bruteforce",
    "count_linext",
    "width2_tables",
    "pair_counts",
    "iter_linear_extensions",
    "is_linear_extension",
    "fibonacci",
]

DOWNSET_LIMIT = 20
BRUTEFORCE_LIMIT = 9


def _blockers(p: Poset, chains: ChainPair) -> tuple[list[int], list[int]]:
    """For each chain element, how many elements of the other chain must precede it."""
    a, b = chains.chainA, chains.chainB
    bset, aset = set(b), set(a)
    need_b = [sum(1 for y in p.down_set(x) if y in bset) for x in a]
    need_a = [sum(1 for y in p.down_set(x) if y in aset) for x in b]
    return need_b, need_a


def width2_tables(p: Poset, chains: ChainPair) -> tuple[list[list[int]], list[list[int]]]:
    """Forward and backward lattice-path counts.

    ``fwd[i][j]`` counts ways to reach state (i of A placed, j of B placed)
    and ``bwd[i][j]`` ways to finish from it; ``fwd[i][j] * bwd[i][j]`` is the
    number of linear extensions passing through that state.
    """
    if not is_chain_cover(p, chains):
        raise InvalidCover("chains do not form a two-chain cover of the poset")
    need_b, need_a = _blockers(p, chains)
    na, nb = len(chains.chainA), len(chains.chainB)
    fwd = [[0] * (nb + 1) for _ in range(na + 1)]
    fwd[0][0] = 1
    for i in range(na + 1):
        for j in range(nb + 1):
            c = fwd[i][j]
            if not c:
                continue
            # the prefix (i, j) is a down-set, so only the next element's
            # cross-chain predecessors need checking
            if i < na and need_b[i] <= j:
                fwd[i + 1][j] += c
            if j < nb and need_a[j] <= i:
                fwd[i][j + 1] += c
    bwd = [[0] * (nb + 1) for _ in range(na + 1)]
    bwd[na][nb] = 1
    for i in range(na, -1, -1):
        for j in range(nb, -1, -1):
            if i == na and j == nb:
                continue
            total = 0
            if i < na and need_b[i] <= j:
                total += bwd[i + 1][j]
            if j < nb and need_a[j] <= i:
                total += bwd[i][j + 1]
            bwd[i][j] = total
    return fwd, bwd


def pair_counts(p: Poset, chains: ChainPair | None = None) -> tuple[int, dict[tuple[str, str], int]]:
    """``e(P)`` and, for every incomparable pair ``(a, b)`` with ``a`` in chain A
    and ``b`` in chain B, the number of linear extensions placing ``a`` first.

    A path places the ``i``-th A element before the ``j``-th B element iff it
    takes the A-step out of some state ``(i, j')`` with ``j' <= j``.
    """
    if chains is None:
        chains = chain_cover_2(p)
    fwd, bwd = width2_tables(p, chains)
    need_b, _ = _blockers(p, chains)
    a, b = chains.chainA, chains.chainB
    out = {}
    for i, x in enumerate(a):
        through = [fwd[i][j] * bwd[i + 1][j] if need_b[i] <= j else 0 for j in range(len(b) + 1)]
        acc = 0
        for j, y in enumerate(b):
            acc += through[j]
            if p.incomparable(x, y):
                out[(x, y)] = acc
    return fwd[-1][-1], out


def count_linext_width2(p: Poset, chains: ChainPair | None = None) -> int:
    if chains is None:
        chains = chain_cover_2(p)
    fwd, _ = width2_tables(p, chains)
    return fwd[-1][-1]


def count_linext_downsets(p: Poset, limit: int = DOWNSET_LIMIT) -> int:
    """DP over down-sets; the dense table holds ``2**n`` counters."""
    if p.n > limit:
        raise LimitExceeded(f"n = {p.n} exceeds down-set DP limit {limit}")
    return kernels.downset_count(p.pred_masks(), p.n)


def count_linext_bruteforce(p: Poset, limit: int = BRUTEFORCE_LIMIT) -> int:
    if p.n > limit:
        raise LimitExceeded(f"n = {p.n} exceeds brute-force limit {limit}")
    return kernels.bruteforce_count(p.pred_masks(), p.n)


def count_linext(p: Poset) -> int:
    """e(P) by the fastest applicable exact method."""
    try:
        chains = chain_cover_2(p)
    except WidthExceeded:
        return count_linext_downsets(p)
    return count_linext_width2(p, chains)


def iter_linear_extensions(p: Poset) -> Iterator[tuple[str, ...]]:
    """All linear extensions, in lexicographic order of element indices."""
    pred = p.pred_masks()
    n = p.n
    el = p.elements
    order: list[int] = []

    def rec(placed: int) -> Iterator[tuple[str, ...]]:
        if len(order) == n:
            yield tuple(el[i] for i in order)
            return
        for x in range(n):
            if not placed >> x & 1 and pred[x] & placed == pred[x]:
                order.append(x)
                yield from rec(placed | 1 << x)
                order.pop()

    yield from rec(0)


def is_linear_extension(p: Poset, order) -> bool:
    pos = {x: i for i, x in enumerate(order)}
    if len(pos) != p.n or set(pos) != set(p.elements):
        return False
    return all(pos[u] < pos[v] for u, v in p.lt)


def fibonacci(k: int) -> int:
    """``F_k`` with ``F_1 = F_2 = 1``."""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a
