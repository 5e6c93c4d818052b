"""Canonical interval representation, breakpoints, epochs, phantom edges and Q.

Interval endpoints are exact :class:`~fractions.Fraction` values; nothing here
uses floating point.  Epoch indices are 0-based.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .entropy import KMDecomposition, km_for_poset
from .errors import DisconnectedGraph, PosetEntropyError, PreconditionFailed
from .poset import ChainPair, Poset, chain_cover_2, incomparability_graph

__all__ = [
    "IntervalRep",
    "EpochStructure",
    "PhantomEdge",
    "PhantomEdgeSet",
    "canonical_intervals",
    "breakpoints_and_epochs",
    "phantom_edges",
    "build_Q",
    "interval_order_of",
    "epoch_intervals",
    "stacked_epochs",
    "phantom_feasible",
    "IntervalPipeline",
    "analyze",
]

CANONICAL = "canonical-IP"
QREP = "Q-rep"


@dataclass(frozen=True)
class IntervalRep:
    intervals: dict  # element -> (lo, hi)
    span: Fraction = Fraction(1)
    source: str = CANONICAL
    chains: ChainPair | None = None
    blocks: tuple = ()  # KM blocks (A_i, B_i) in sigma order, canonical reps only

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(self.intervals)

    def lo(self, v: str) -> Fraction:
        return self.intervals[v][0]

    def hi(self, v: str) -> Fraction:
        return self.intervals[v][1]

    def length(self, v: str) -> Fraction:
        lo, hi = self.intervals[v]
        return hi - lo

    def endpoints(self) -> list[Fraction]:
        pts = {Fraction(0), self.span}
        for lo, hi in self.intervals.values():
            pts.add(lo)
            pts.add(hi)
        return sorted(pts)


def interval_order_of(rep: IntervalRep) -> Poset:
    """``u < v`` iff ``hi(u) <= lo(v)``."""
    items = list(rep.intervals.items())
    rel = [(u, v) for u, (_, hu) in items for v, (lv, _) in items if u != v and hu <= lv]
    return Poset([u for u, _ in items], rel)


def _sigma_order(p: Poset, km: KMDecomposition) -> list[int]:
    blocks = [set(a) | set(b) for a, b in km.pairs]

    def before(i: int, j: int) -> bool:
        return any(p.less(x, y) for x in blocks[i] for y in blocks[j])

    def cmp(i: int, j: int) -> int:
        fwd, bwd = before(i, j), before(j, i)
        if fwd and bwd:
            raise PosetEntropyError(f"KM blocks {i} and {j} are not ordered in the poset")
        if fwd:
            return -1
        if bwd:
            return 1
        raise PosetEntropyError(f"KM blocks {i} and {j} are incomparable")

    return sorted(range(len(blocks)), key=functools.cmp_to_key(cmp))


def canonical_intervals(
    p: Poset, km: KMDecomposition | None = None, chains: ChainPair | None = None
) -> IntervalRep:
    """Place the KM blocks side by side in poset order.

    Block ``C_i = A_i ∪ B_i`` occupies a segment of width ``|C_i|/n``; inside
    it the ``A_i`` elements tile the segment in chain order, and so do the
    ``B_i`` elements.
    """
    if chains is None:
        chains = chain_cover_2(p)
    if km is None:
        km = km_for_poset(p, chains)
    n = p.n
    order = _sigma_order(p, km)
    intervals: dict[str, tuple[Fraction, Fraction]] = {}
    cursor = Fraction(0)
    for bi in order:
        a_i, b_i = km.pairs[bi]
        width_i = Fraction(len(a_i) + len(b_i), n)
        for part, chain in ((a_i, chains.chainA), (b_i, chains.chainB)):
            if not part:
                continue
            step = width_i / len(part)
            for j, v in enumerate(sorted(part, key=chain.index)):
                intervals[v] = (cursor + j * step, cursor + (j + 1) * step)
        cursor += width_i
    intervals = {v: intervals[v] for v in p.elements}
    rep = IntervalRep(intervals, Fraction(1), CANONICAL, chains, tuple(km.pairs[i] for i in order))
    if not interval_order_of(rep).extends(p):
        raise PosetEntropyError("canonical representation is not consistent with the poset")
    return rep


@dataclass(frozen=True)
class EpochStructure:
    breakpoints: tuple[Fraction, ...]
    epochs: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]  # (Psi_i, Omega_i)
    sigma_order: tuple = ()
    rep: IntervalRep | None = field(default=None, compare=False)

    @property
    def ell(self) -> int:
        return len(self.epochs)

    @property
    def psi(self) -> tuple[int, ...]:
        return tuple(len(a) for a, _ in self.epochs)

    @property
    def omega(self) -> tuple[int, ...]:
        return tuple(len(b) for _, b in self.epochs)

    def epoch_of(self, v: str) -> int:
        for i, (a, b) in enumerate(self.epochs):
            if v in a or v in b:
                return i
        raise KeyError(v)

    def elements(self, i: int) -> tuple[str, ...]:
        return self.epochs[i][0] + self.epochs[i][1]

    def coprime(self) -> bool:
        return all(gcd(a, b) == 1 for a, b in zip(self.psi, self.omega) if a and b)


def breakpoints_and_epochs(rep: IntervalRep) -> EpochStructure:
    """Breakpoints are the endpoints that no interval strictly contains."""
    spans = list(rep.intervals.values())
    bps = tuple(t for t in rep.endpoints() if not any(lo < t < hi for lo, hi in spans))
    chains = rep.chains
    epochs = []
    for left, right in zip(bps, bps[1:]):
        inside = [v for v, (lo, hi) in rep.intervals.items() if left <= lo and hi <= right]
        if not inside:
            continue
        if chains is None:
            epochs.append((tuple(sorted(inside)), ()))
            continue
        psi = tuple(sorted((v for v in inside if chains.side(v) == "A"), key=chains.position))
        omega = tuple(sorted((v for v in inside if chains.side(v) == "B"), key=chains.position))
        epochs.append((psi, omega))
    return EpochStructure(bps, tuple(epochs), rep.blocks, rep)


@dataclass(frozen=True)
class PhantomEdge:
    u: str  # last element of its part in epoch i
    v: str  # first element of the opposite part in epoch i+1
    between: tuple[int, int]
    orientation: str  # "psi-omega" or "omega-psi"
    ambiguous: bool = False


@dataclass(frozen=True)
class PhantomEdgeSet:
    edges: tuple[PhantomEdge, ...]

    def __iter__(self):
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def pairs(self) -> set[frozenset[str]]:
        return {frozenset((e.u, e.v)) for e in self.edges}

    @property
    def ambiguous(self) -> bool:
        return any(e.ambiguous for e in self.edges)


def phantom_edges(p: Poset, es: EpochStructure) -> PhantomEdgeSet:
    """One incomparable pair of P bridging each pair of consecutive epochs.

    Candidates are (last of Psi_i, first of Omega_{i+1}) and (last of Omega_i,
    first of Psi_{i+1}); the first is preferred when both qualify.
    """
    g = incomparability_graph(p)
    if p.n < 3 or len(g.components) != 1:
        if es.ell <= 1 and len(g.components) == 1:
            return PhantomEdgeSet(())
        raise DisconnectedGraph("phantom edges need a connected incomparability graph on n >= 3")
    edges = []
    for i in range(es.ell - 1):
        (psi0, omega0), (psi1, omega1) = es.epochs[i], es.epochs[i + 1]
        found = []
        if psi0 and omega1 and p.incomparable(psi0[-1], omega1[0]):
            found.append((psi0[-1], omega1[0], "psi-omega"))
        if omega0 and psi1 and p.incomparable(omega0[-1], psi1[0]):
            found.append((omega0[-1], psi1[0], "omega-psi"))
        if not found:
            raise PreconditionFailed(f"no phantom edge between epochs {i} and {i + 1}")
        u, v, how = found[0]
        edges.append(PhantomEdge(u, v, (i, i + 1), how, len(found) > 1))
    return PhantomEdgeSet(tuple(edges))


def build_Q(p: Poset, rep: IntervalRep, phantoms: PhantomEdgeSet) -> tuple[Poset, IntervalRep]:
    """Insert a gap of ``1/q`` (``q = ℓ - 1``) at each interior breakpoint and
    stretch each phantom pair across its gap."""
    es = breakpoints_and_epochs(rep)
    ell = es.ell
    if ell <= 1:
        return interval_order_of(rep), rep
    q = ell - 1
    shifted = {}
    for v, (lo, hi) in rep.intervals.items():
        s = Fraction(es.epoch_of(v), q)
        shifted[v] = [lo + s, hi + s]
    for e in phantoms:
        shifted[e.u][1] += Fraction(1, q)
        shifted[e.v][0] -= Fraction(1, q)
    qrep = IntervalRep(
        {v: (lo, hi) for v, (lo, hi) in shifted.items()}, rep.span + 1, QREP, rep.chains, rep.blocks
    )
    Q = interval_order_of(qrep)
    expected = incomparability_graph(interval_order_of(rep)).edge_set | phantoms.pairs()
    if incomparability_graph(Q).edge_set != expected or not Q.extends(p):
        raise PosetEntropyError("Q does not sit between P and I(P)")
    return Q, qrep


# ---------------------------------------------------------------------------
# synthesised instances


def epoch_intervals(psi: int, omega: int, offset: Fraction = Fraction(0), width: Fraction = Fraction(1),
                    names: tuple[Sequence[str], Sequence[str]] | None = None) -> dict:
    """``psi`` intervals of length ``width/psi`` side by side, and ``omega`` of
    length ``width/omega``, starting at ``offset``."""
    if names is None:
        names = ([f"u{j}" for j in range(1, psi + 1)], [f"v{j}" for j in range(1, omega + 1)])
    out = {}
    for j, v in enumerate(names[0]):
        out[v] = (offset + width * Fraction(j, psi), offset + width * Fraction(j + 1, psi))
    for j, v in enumerate(names[1]):
        out[v] = (offset + width * Fraction(j, omega), offset + width * Fraction(j + 1, omega))
    return out


def phantom_feasible(sizes: Sequence[tuple[int, int]], i: int, orientation: str) -> bool:
    """Whether the phantom edge between epochs i, i+1 keeps the KM weights
    feasible (``x_u + x_v <= 1``), so the entropy is unchanged."""
    (p0, o0), (p1, o1) = sizes[i], sizes[i + 1]
    if orientation == "psi-omega":
        if not (p0 and o1):
            return False
        return Fraction(p0, p0 + o0) + Fraction(o1, p1 + o1) <= 1
    if not (o0 and p1):
        return False
    return Fraction(o0, p0 + o0) + Fraction(p1, p1 + o1) <= 1


def stacked_epochs(sizes: Sequence[tuple[int, int]], orientations: Sequence[str] | None = None) -> tuple[Poset, IntervalRep]:
    """Interval order of epochs ``(psi_i, omega_i)`` placed left to right and
    joined by one phantom edge per consecutive pair.

    Epoch ``j`` occupies ``(2j, 2j+1)``; each phantom stretches its two
    intervals across the gap.  Elements are ``a<j>_<k>`` (chain A) and
    ``b<j>_<k>`` (chain B).  Default orientations are the first feasible one
    per gap, preferring psi-omega.
    """
    for a, b in sizes:
        if a + b == 0 or (a and b and gcd(a, b) != 1):
            raise PreconditionFailed(f"invalid epoch sizes ({a}, {b})")
    if orientations is None:
        orientations = []
        for i in range(len(sizes) - 1):
            ok = [o for o in ("psi-omega", "omega-psi") if phantom_feasible(sizes, i, o)]
            if not ok:
                raise PreconditionFailed(f"no feasible phantom edge between epochs {i} and {i + 1}")
            orientations.append(ok[0])
    intervals: dict[str, list[Fraction]] = {}
    names = []
    for j, (a, b) in enumerate(sizes):
        na = [f"a{j + 1}_{k + 1}" for k in range(a)]
        nb = [f"b{j + 1}_{k + 1}" for k in range(b)]
        names.append((na, nb))
        for v, (lo, hi) in epoch_intervals(a, b, Fraction(2 * j), Fraction(1), (na, nb)).items():
            intervals[v] = [lo, hi]
    for i, how in enumerate(orientations):
        (na0, nb0), (na1, nb1) = names[i], names[i + 1]
        u, v = (na0[-1], nb1[0]) if how == "psi-omega" else (nb0[-1], na1[0])
        intervals[u][1] = Fraction(2 * i + 2)
        intervals[v][0] = Fraction(2 * i + 1)
    span = Fraction(2 * len(sizes) - 1)
    order = [v for na, nb in names for v in na] + [v for na, nb in names for v in nb]
    chains = ChainPair(tuple(v for na, _ in names for v in na), tuple(v for _, nb in names for v in nb))
    rep = IntervalRep({v: tuple(intervals[v]) for v in order}, span, QREP, chains)
    return interval_order_of(rep), rep


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalPipeline:
    poset: Poset
    chains: ChainPair
    km: KMDecomposition
    rep: IntervalRep
    epochs: EpochStructure
    phantoms: PhantomEdgeSet | None
    Q: Poset | None
    qrep: IntervalRep | None

    @property
    def IP(self) -> Poset:
        return interval_order_of(self.rep)


def analyze(p: Poset) -> IntervalPipeline:
    """Run the whole chain P -> KM -> I(P) -> epochs -> phantoms -> Q.

    Phantoms and Q are ``None`` when the incomparability graph is disconnected
    or ``n < 3``.
    """
    chains = chain_cover_2(p)
    km = km_for_poset(p, chains)
    rep = canonical_intervals(p, km, chains)
    es = breakpoints_and_epochs(rep)
    try:
        ph = phantom_edges(p, es)
    except DisconnectedGraph:
        return IntervalPipeline(p, chains, km, rep, es, None, None, None)
    Q, qrep = build_Q(p, rep, ph)
    return IntervalPipeline(p, chains, km, rep, es, ph, Q, qrep)
