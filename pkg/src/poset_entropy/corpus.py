"""Poset families, exhaustive width-2 enumeration and isomorphism dedup."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

import numpy as np

from . import kernels
from .errors import BadSpec, LimitExceeded
from .intervals import stacked_epochs
from .poset import Poset, antichain, ordinal_sum, width

__all__ = [
    "canonical_form",
    "is_isomorphic",
    "enumerate_width2",
    "enumerate_width2_oracle",
    "two_chain_poset",
    "path_poset",
    "star_poset",
    "two_antichain_sum",
    "epoch_poset",
    "residual_case_sizes",
    "residual_case_poset",
    "random_width2",
    "CorpusSpec",
    "generate",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 9


def canonical_form(p: Poset) -> tuple[int, int]:
    """``(n, code)``; equal exactly for isomorphic posets.

    ``code`` is the least comparability bit string over all linear
    extensions read as labelings.
    """
    return p.n, kernels.canonical_code(p.pred_masks(), p.n)


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return canonical_form(p) == canonical_form(q)


def _monotone(length: int, top: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing sequences of ``length`` values in ``[0, top]``."""
    return itertools.combinations_with_replacement(range(top + 1), length)


def two_chain_poset(a: int, b: int, down: tuple[int, ...], up: tuple[int, ...]) -> Poset:
    """Chains ``a0 < ... < a{a-1}`` and ``b0 < ...``; ``b_j < a_i`` iff ``j < down[i]``
    and ``a_i < b_j`` iff ``j >= up[i]``.

    With ``down``, ``up`` nondecreasing and ``down <= up`` the relation is
    already transitive, and every width-2 poset arises this way.
    """
    names = [f"a{i}" for i in range(a)] + [f"b{j}" for j in range(b)]
    below = [0] * (a + b)
    for i in range(a):
        below[i] = (1 << i) - 1 | ((1 << down[i]) - 1) << a
    for j in range(b):
        below[a + j] = ((1 << j) - 1) << a
        for i in range(a):
            if up[i] <= j:
                below[a + j] |= 1 << i
    return Poset._from_masks(tuple(names), below)


def enumerate_width2(n: int) -> Iterator[Poset]:
    """Every width-<=2 poset on ``n`` elements once, up to isomorphism."""
    if n > ENUMERATION_LIMIT:
        raise LimitExceeded(f"exhaustive enumeration limited to n <= {ENUMERATION_LIMIT}")
    if n == 0:
        yield Poset([])
        return
    seen: set[int] = set()
    for a in range(n, (n - 1) // 2, -1):
        b = n - a
        for down in _monotone(a, b):
            for up in _monotone(a, b):
                if any(d > u for d, u in zip(down, up)):
                    continue
                p = two_chain_poset(a, b, down, up)
                code = kernels.canonical_code(p.pred_masks(), n)
                if code not in seen:
                    seen.add(code)
                    yield p


def _perm_codes(adj: np.ndarray, perms: np.ndarray, weights: np.ndarray) -> int:
    permuted = adj[perms[:, :, None], perms[:, None, :]]
    return int((permuted.reshape(len(perms), -1) @ weights).min())


def enumerate_width2_oracle(n: int) -> list[Poset]:
    """Independent enumeration for small ``n``: all naturally labeled strict
    orders (upper-triangular, transitive), width filtered, quotiented by the
    minimum adjacency code over all ``n!`` relabelings."""
    if n > 6:
        raise LimitExceeded("labeled-DAG oracle limited to n <= 6")
    if n == 0:
        return [Poset([])]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    weights = np.array([1 << k for k in range(n * n)], dtype=np.int64)
    seen: set[int] = set()
    out = []
    names = [f"x{i}" for i in range(n)]
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, k) not in rel for (i, j) in rel for (jj, k) in rel if jj == j):
            continue
        p = Poset(names, [(names[i], names[j]) for i, j in rel])
        if width(p) > 2:
            continue
        adj = np.zeros((n, n), dtype=np.int64)
        for i, j in rel:
            adj[i, j] = 1
        code = _perm_codes(adj, perms, weights)
        if code not in seen:
            seen.add(code)
            out.append(p)
    return out


def path_poset(n: int) -> Poset:
    """``x_i < x_j`` iff ``j >= i + 2``: the incomparability graph is the path x1-x2-...-xn."""
    names = [f"x{i}" for i in range(1, n + 1)]
    return Poset(names, [(names[i], names[j]) for i in range(n) for j in range(i + 2, n)])


def star_poset(n: int) -> Poset:
    """A centre incomparable to each element of an ``(n-1)``-chain."""
    if n < 2:
        raise BadSpec("star needs n >= 2")
    leaves = [f"l{i}" for i in range(1, n)]
    return Poset(["c"] + leaves, [(leaves[i], leaves[i + 1]) for i in range(n - 2)])


def two_antichain_sum(k: int, sizes: tuple[int, ...] | None = None) -> Poset:
    """Ordinal sum ``A_1 + ... + A_k`` of antichains (default size 2 each)."""
    sizes = sizes or (2,) * k
    if any(s not in (1, 2) for s in sizes):
        raise BadSpec("summands must have size 1 or 2")
    parts = [antichain(s, prefix=f"s{i}_") for i, s in enumerate(sizes, 1)]
    return ordinal_sum(*parts) if parts else Poset([])


def epoch_poset(psi: int, omega: int) -> Poset:
    """Interval order of ``psi`` side-by-side intervals of length ``1/psi`` and
    ``omega`` of length ``1/omega``."""
    if psi < 1 or omega < 0 or (omega and gcd(psi, omega) != 1):
        raise BadSpec(f"epoch needs coprime sizes, got ({psi}, {omega})")
    return stacked_epochs([(psi, omega)])[0]


def residual_case_sizes(case: int, param: int) -> list[tuple[int, int]]:
    """Epoch sizes for the residual cases 3-6.

    ``param`` is the star size ``psi`` for cases 3 and 4 and the path
    parameter ``omega`` (epoch sizes ``omega+1, omega``) for cases 5 and 6.
    """
    if case in (3, 4):
        if param < 2:
            raise BadSpec("cases 3 and 4 need psi >= 2")
        mid = (param, 1)
    elif case in (5, 6):
        if param < 1:
            raise BadSpec("cases 5 and 6 need omega >= 1")
        mid = (param + 1, param)
    else:
        raise BadSpec(f"no drawing for case {case}")
    return [(1, 1), mid] if case in (3, 5) else [(1, 1), mid, (1, 1)]


def residual_case_poset(case: int, param: int) -> Poset:
    return stacked_epochs(residual_case_sizes(case, param))[0]


def random_width2(n: int, rng: random.Random) -> Poset:
    """A random width-<=2 poset (random chain split and random monotone links)."""
    a = rng.randint((n + 1) // 2, n)
    b = n - a
    down = sorted(rng.randint(0, b) for _ in range(a))
    up = sorted(rng.randint(0, b) for _ in range(a))
    up = [max(d, u) for d, u in zip(down, up)]
    return two_chain_poset(a, b, tuple(down), tuple(up))


KINDS = ("exhaustive-width2", "random-width2", "path", "star", "two-antichain-sum", "epoch", "table1-case")


@dataclass(frozen=True)
class CorpusSpec:
    kind: str
    n: int = 0
    count: int = 1
    psi: int = 0
    omega: int = 0
    case: int = 0
    param: int = 0
    seed: int = 0
    sizes: tuple = field(default=())


def generate(spec: CorpusSpec) -> list[Poset]:
    """Deterministic corpus for a spec (and seed)."""
    k = spec.kind
    if k == "exhaustive-width2":
        return list(enumerate_width2(spec.n))
    if k == "random-width2":
        if spec.n < 1:
            raise BadSpec("random-width2 needs n >= 1")
        rng = random.Random(spec.seed)
        return [random_width2(spec.n, rng) for _ in range(spec.count)]
    if k == "path":
        if spec.n < 1:
            raise BadSpec("path needs n >= 1")
        return [path_poset(spec.n)]
    if k == "star":
        return [star_poset(spec.n)]
    if k == "two-antichain-sum":
        return [two_antichain_sum(spec.n, tuple(spec.sizes) or None)]
    if k == "epoch":
        return [epoch_poset(spec.psi, spec.omega)]
    if k == "table1-case":
        return [residual_case_poset(spec.case, spec.param)]
    raise BadSpec(f"unknown corpus kind {k!r}; expected one of {', '.join(KINDS)}")
