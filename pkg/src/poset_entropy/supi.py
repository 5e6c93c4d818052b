"""Greedy sorting under partial information for width-2 posets.

The sorter first compares every isolated incomparable pair, then repeatedly
asks the comparison whose worse outcome leaves the fewest linear extensions.
It is an empirical companion to the entropy bounds, not a worst-case
algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import epsilon
from .errors import InconsistentOracle
from .exact import ExactReal, ceil_exact, log2
from .linext import count_linext, pair_counts
from .poset import Poset, incomparability_graph

__all__ = ["SortTranscript", "greedy_sort", "budget_report", "budget2", "random_linear_extension"]


def budget2(e: int) -> int:
    """``ceil(2 log2 e)``, computed exactly as ``ceil(log2(e**2))``."""
    return (e * e - 1).bit_length()


@dataclass(frozen=True)
class SortTranscript:
    initial_poset: Poset
    hidden_order: tuple[str, ...]
    queries: tuple[tuple[str, str, str], ...]  # (u, v, "<" or ">")
    counts: tuple[int, ...]  # e(P) before the first query and after each query
    final_order: tuple[str, ...]
    budget2: int
    refined_budget: int
    pair_phase: int  # number of queries spent on isolated pairs

    @property
    def n_queries(self) -> int:
        return len(self.queries)


def _check_hidden(p: Poset, hidden: Sequence[str]) -> dict[str, int]:
    pos = {x: i for i, x in enumerate(hidden)}
    if len(pos) != p.n or set(pos) != set(p.elements):
        raise InconsistentOracle("hidden order is not a permutation of the ground set")
    for u, v in p.lt:
        if pos[u] > pos[v]:
            raise InconsistentOracle(f"hidden order puts {v} before {u}, contradicting the poset")
    return pos


def greedy_sort(p: Poset, hidden: Sequence[str]) -> SortTranscript:
    pos = _check_hidden(p, hidden)
    rank = {x: i for i, x in enumerate(p.elements)}
    cur = p
    queries: list[tuple[str, str, str]] = []
    counts = [count_linext(p)]

    def ask(u: str, v: str) -> None:
        nonlocal cur
        if rank[u] > rank[v]:
            u, v = v, u
        if pos[u] < pos[v]:
            queries.append((u, v, "<"))
            cur = cur.with_relation(u, v)
        else:
            queries.append((u, v, ">"))
            cur = cur.with_relation(v, u)
        counts.append(count_linext(cur))

    for comp in incomparability_graph(p).components:
        if len(comp) == 2:
            ask(*comp)
    pair_phase = len(queries)
    e_after_pairs = counts[-1]

    while not cur.is_chain():
        e, table = pair_counts(cur)
        best = None
        for (a, b), c in table.items():
            key = (max(c, e - c), min(rank[a], rank[b]), max(rank[a], rank[b]))
            if best is None or key < best[0]:
                best = (key, a, b)
        _, a, b = best
        expected = table[(a, b)] if pos[a] < pos[b] else e - table[(a, b)]
        ask(a, b)
        if counts[-1] != expected:
            raise AssertionError("pair count disagrees with a direct recount")

    final = tuple(sorted(cur.elements, key=lambda x: len(cur.down_set(x))))
    eps = epsilon()
    refined = pair_phase + (ceil_exact((2 - eps) * log2(e_after_pairs)) if e_after_pairs > 1 else 0)
    return SortTranscript(
        initial_poset=p,
        hidden_order=tuple(hidden),
        queries=tuple(queries),
        counts=tuple(counts),
        final_order=final,
        budget2=budget2(counts[0]),
        refined_budget=refined,
        pair_phase=pair_phase,
    )


def budget_report(t: SortTranscript) -> dict:
    """Query count against both budgets, and the per-query drop in ``log e``."""
    trace = [log2(Fraction(a, b)) for a, b in zip(t.counts, t.counts[1:])]
    total = ExactReal.sum(trace)
    pos = {x: i for i, x in enumerate(t.final_order)}
    sound = all(pos[u] < pos[v] for u, v in t.initial_poset.lt) and tuple(t.final_order) == tuple(t.hidden_order)
    return {
        "queries": t.n_queries,
        "budget2": t.budget2,
        "refined_budget": t.refined_budget,
        "within_budget2": t.n_queries <= t.budget2,
        "within_refined": t.n_queries <= t.refined_budget,
        "trace": trace,
        "conserved": total == log2(t.counts[0]) and t.counts[-1] == 1,
        "sound": sound,
    }


def random_linear_extension(p: Poset, rng: random.Random) -> list[str]:
    """Uniform sample: pick each next minimal element with probability
    proportional to the extensions that start with it."""
    out = []
    cur = p
    while cur.n:
        mins = [x for x in cur.elements if not cur.down_set(x)]
        weights = [count_linext(cur.restrict([y for y in cur.elements if y != x])) for x in mins]
        x = rng.choices(mins, weights)[0]
        out.append(x)
        cur = cur.restrict([y for y in cur.elements if y != x])
    return out
