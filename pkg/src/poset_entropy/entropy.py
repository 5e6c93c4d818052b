"""Graph entropy of bipartite incomparability graphs.

The exact route is the Körner–Marton decomposition: repeatedly peel off the
inclusion-minimal subset of side A whose ratio ``|A1| / |N(A1)|`` is maximum.
The ratio maximisation runs Dinkelbach iterations whose inner problem
(``max |A'| - lam * |N(A')|``) is a max-weight closure, solved as a min cut.

The independent numeric route, :func:`entropy_bruteforce`, minimises
``-(1/n) sum log x_v`` over the stable set polytope with away-step
Frank–Wolfe on the enumerated maximal stable sets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NotBipartite, OracleMismatch, TooLarge
from .exact import ExactReal, log2
from .flow import FlowNetwork
from .poset import ChainPair, IncompGraph, Poset, chain_cover_2, comparability_graph, incomparability_graph

__all__ = [
    "KMDecomposition",
    "max_ratio_subset",
    "max_ratio_subset_bruteforce",
    "km_decompose",
    "km_for_poset",
    "n_entropy_from_sizes",
    "entropy_bruteforce",
    "FWResult",
    "complement_entropy_check",
    "entropy_disjoint_union",
]

INF = math.inf


def _order(g: IncompGraph):
    pos = {v: i for i, v in enumerate(g.vertices)}
    return lambda xs: tuple(sorted(xs, key=pos.__getitem__))


def _neighborhood(g: IncompGraph, subset: Iterable[str], allowed: set[str]) -> set[str]:
    out: set[str] = set()
    for a in subset:
        out |= g.adj[a] & allowed
    return out


def _ratio(a: int, b: int):
    return INF if b == 0 else Fraction(a, b)


def max_ratio_subset(
    g: IncompGraph, side_a: Iterable[str], side_b: Iterable[str], *, verify: bool = False
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Inclusion-minimal ``A1 ⊆ side_a`` maximising ``|A1| / |N(A1)|``.

    Only edges between ``side_a`` and ``side_b`` are considered (the graph
    induced on their union).  With isolated vertices in ``side_a`` the ratio is
    infinite and the first isolated vertex is returned on its own.
    """
    order = _order(g)
    sa, sb = order(set(side_a)), order(set(side_b))
    aset, bset = set(sa), set(sb)
    for a in sa:
        if g.adj[a] & aset:
            raise NotBipartite(f"edge inside side A at {a}")
    if not sa:
        raise ValueError("side A is empty")
    for a in sa:
        if not g.adj[a] & bset:
            return (a,), ()

    idx_a = {a: i for i, a in enumerate(sa)}
    idx_b = {b: i for i, b in enumerate(sb)}
    s, t = len(sa) + len(sb), len(sa) + len(sb) + 1
    big = 1 << 40

    def solve(lam: Fraction, forced: str | None = None):
        # maximise q|A'| - p|N(A')| with lam = p/q as a closure problem
        p, q = lam.numerator, lam.denominator
        net = FlowNetwork(len(sa) + len(sb) + 2)
        for a in sa:
            net.add_edge(s, idx_a[a], big if a == forced else q)
            for b in g.adj[a] & bset:
                net.add_edge(idx_a[a], len(sa) + idx_b[b], big)
        for b in sb:
            net.add_edge(len(sa) + idx_b[b], t, p)
        cut = net.max_flow(s, t)
        side = net.source_side(s)
        chosen = [a for a in sa if idx_a[a] in side]
        return q * len(sa) - cut, chosen

    lam = Fraction(len(sa), len(_neighborhood(g, sa, bset)))
    while True:
        value, chosen = solve(lam)
        if value <= 0:
            break
        lam = Fraction(len(chosen), len(_neighborhood(g, chosen, bset)))

    best: list[str] | None = None
    for a in sa:
        value, chosen = solve(lam, forced=a)
        if value != 0:
            continue
        if best is None or len(chosen) < len(best):
            best = chosen
    assert best is not None
    result = order(best), order(_neighborhood(g, best, bset))
    if verify and len(sa) <= 16:
        expected = max_ratio_subset_bruteforce(g, sa, sb)
        if set(expected[0]) != set(result[0]):
            raise OracleMismatch(f"min-cut gave {result[0]}, brute force gave {expected[0]}")
    return result


def max_ratio_subset_bruteforce(
    g: IncompGraph, side_a: Sequence[str], side_b: Sequence[str]
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Exhaustive version of :func:`max_ratio_subset` (test oracle, small sides).

    Among the maximisers it returns a minimal one of smallest size, ties broken
    by the element order of the first differing member.
    """
    order = _order(g)
    sa = order(set(side_a))
    bset = set(side_b)
    best_ratio = None
    best = None
    for r in range(1, len(sa) + 1):
        for combo in itertools.combinations(sa, r):
            nb = _neighborhood(g, combo, bset)
            ratio = _ratio(len(combo), len(nb))
            if best_ratio is None or ratio > best_ratio:
                best_ratio, best = ratio, combo
    # every maximiser contains a minimal one; the smallest-size maximiser is minimal
    for r in range(1, len(sa) + 1):
        for combo in itertools.combinations(sa, r):
            if _ratio(len(combo), len(_neighborhood(g, combo, bset))) == best_ratio:
                return combo, order(_neighborhood(g, combo, bset))
    return best, order(_neighborhood(g, best, bset))


@dataclass(frozen=True)
class KMDecomposition:
    pairs: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    ratios: tuple
    n: int
    x_star: dict
    entropy: ExactReal

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def y_star(self) -> dict:
        """``y*_v = 1/(n x*_v)``: the interval lengths of the canonical representation."""
        return {v: 1 / (self.n * x) for v, x in self.x_star.items()}

    @property
    def n_entropy(self) -> ExactReal:
        """``n * H`` of the graph (avoids the 1/n factor)."""
        return self.entropy * self.n

    def block_of(self, v: str) -> int:
        for i, (a, b) in enumerate(self.pairs):
            if v in a or v in b:
                return i
        raise KeyError(v)


def n_entropy_from_sizes(sizes: Iterable[tuple[int, int]]) -> ExactReal:
    """``sum (a+b) h(a/(a+b))`` written as ``a log((a+b)/a) + b log((a+b)/b)``."""
    terms = []
    for a, b in sizes:
        c = a + b
        if a:
            terms.append(a * log2(Fraction(c, a)))
        if b:
            terms.append(b * log2(Fraction(c, b)))
    return ExactReal.sum(terms)


def km_decompose(g: IncompGraph, chains: ChainPair, *, verify: bool = False) -> KMDecomposition:
    """Run the Körner–Marton algorithm with side A = ``chains.chainA``."""
    order = _order(g)
    rem_a = list(order(chains.chainA))
    rem_b = set(chains.chainB)
    if set(rem_a) | rem_b != set(g.vertices) or set(rem_a) & rem_b:
        raise ValueError("chains must partition the graph's vertices")
    pairs = []
    # isolated A-vertices first, one per pair
    for a in list(rem_a):
        if not g.adj[a]:
            pairs.append(((a,), ()))
            rem_a.remove(a)
    while rem_a:
        a1, b1 = max_ratio_subset(g, rem_a, rem_b, verify=verify)
        pairs.append((a1, b1))
        rem_a = [a for a in rem_a if a not in set(a1)]
        rem_b -= set(b1)
    for b in order(rem_b):
        pairs.append(((), (b,)))

    n = len(g.vertices)
    x_star: dict[str, Fraction] = {}
    for a_i, b_i in pairs:
        c = len(a_i) + len(b_i)
        for u in a_i:
            x_star[u] = Fraction(len(a_i), c)
        for v in b_i:
            x_star[v] = Fraction(len(b_i), c)
    sizes = [(len(a), len(b)) for a, b in pairs]
    entropy = n_entropy_from_sizes(sizes) / n if n else ExactReal.zero()
    return KMDecomposition(
        pairs=tuple(pairs),
        ratios=tuple(_ratio(a, b) for a, b in sizes),
        n=n,
        x_star=x_star,
        entropy=entropy,
    )


def km_for_poset(p: Poset, chains: ChainPair | None = None, *, verify: bool = False) -> KMDecomposition:
    if chains is None:
        chains = chain_cover_2(p)
    return km_decompose(incomparability_graph(p), chains, verify=verify)


# ---------------------------------------------------------------------------
# numeric oracle


@dataclass
class FWResult:
    value: float
    point: dict
    gap: float
    iterations: int

    def __float__(self) -> float:
        return self.value


def _maximal_stable_sets(g: IncompGraph) -> np.ndarray:
    n = len(g.vertices)
    pos = {v: i for i, v in enumerate(g.vertices)}
    nbr = [0] * n
    for v in g.vertices:
        for w in g.adj[v]:
            nbr[pos[v]] |= 1 << pos[w]
    stable = []
    for m in range(1 << n):
        ok = True
        mm = m
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            if nbr[i] & m:
                ok = False
                break
            mm ^= low
        if ok:
            stable.append(m)
    sset = set(stable)
    maximal = [m for m in stable if all((m >> i & 1) or (m | 1 << i) not in sset for i in range(n))]
    return np.array([[m >> i & 1 for i in range(n)] for m in maximal], dtype=float)


def entropy_bruteforce(g: IncompGraph, tol: float = 1e-10, max_iter: int = 200_000) -> FWResult:
    """``min -(1/n) sum log2 x_v`` over STAB(g) by away-step Frank–Wolfe.

    The stopping rule is the Frank–Wolfe duality gap, which bounds
    ``f(x) - H(g)`` from above.
    """
    n = len(g.vertices)
    if n > 12:
        raise TooLarge(f"stable-set enumeration limited to 12 vertices, got {n}")
    if n == 0:
        return FWResult(0.0, {}, 0.0, 0)
    verts = _maximal_stable_sets(g)
    m = len(verts)
    lam = np.full(m, 1.0 / m)
    x = lam @ verts
    ln2 = math.log(2)

    def f(z):
        return -np.sum(np.log(z)) / (n * ln2)

    it = 0
    gap = math.inf
    for it in range(1, max_iter + 1):
        grad = -1.0 / (n * ln2 * x)
        scores = verts @ grad
        s = int(np.argmin(scores))
        gap = float(grad @ x - scores[s])
        if gap <= tol:
            break
        active = np.flatnonzero(lam > 0)
        a = int(active[np.argmax(scores[active])])
        d_fw = verts[s] - x
        d_aw = x - verts[a]
        if grad @ d_fw <= grad @ d_aw:
            d, gmax, step = d_fw, 1.0, "fw"
        else:
            d, gmax, step = d_aw, lam[a] / (1.0 - lam[a]), "away"
        gamma = _line_search(x, d, gmax)
        if step == "fw":
            lam *= 1.0 - gamma
            lam[s] += gamma
        else:
            lam *= 1.0 + gamma
            lam[a] -= gamma
            if gamma >= gmax * (1 - 1e-12):
                lam[a] = 0.0
        lam = np.clip(lam, 0.0, None)
        lam /= lam.sum()
        x = lam @ verts
    return FWResult(float(f(x)), dict(zip(g.vertices, x.tolist())), gap, it)


def _line_search(x: np.ndarray, d: np.ndarray, gmax: float) -> float:
    # phi'(t) is increasing (convex objective); keep x + t d strictly positive
    neg = d < 0
    if np.any(neg):
        gmax = min(gmax, float(np.min(-x[neg] / d[neg])) * (1 - 1e-12))

    def dphi(t):
        return -float(np.sum(d / (x + t * d)))

    if dphi(gmax) <= 0:
        return gmax
    lo, hi = 0.0, gmax
    for _ in range(200):
        mid = (lo + hi) / 2
        if dphi(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-16:
            break
    return (lo + hi) / 2


def complement_entropy_check(p: Poset, *, verify: bool = True, tol: float = 1e-6) -> tuple[ExactReal, ExactReal]:
    """``(H(incomparability graph), H(comparability graph))`` for a width-2 poset.

    The second value is ``log n`` minus the first (perfect graphs).  With
    ``verify`` it is checked against the Frank–Wolfe oracle for ``n <= 12``.
    """
    km = km_for_poset(p)
    h_bar = km.entropy
    h = (log2(p.n) if p.n else ExactReal.zero()) - h_bar
    if verify and 0 < p.n <= 12:
        fw = entropy_bruteforce(comparability_graph(p))
        if abs(fw.value - float(h)) > tol:
            raise OracleMismatch(f"H(P) = {float(h)} from KM but {fw.value} from Frank-Wolfe")
    return h_bar, h


def entropy_disjoint_union(parts: Iterable[tuple[int, ExactReal]]) -> ExactReal:
    """Entropy of a disjoint union from ``(size, entropy)`` of the parts."""
    parts = list(parts)
    total = sum(size for size, _ in parts)
    if any(size <= 0 for size, _ in parts):
        raise ValueError("part sizes must be positive")
    return ExactReal.sum(h * size for size, h in parts) / total
