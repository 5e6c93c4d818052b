"""Finite posets, incomparability graphs, two-chain covers and ordinal sums.

Elements are opaque string ids.  Internally each element gets the index of its
position in ``elements`` and relations are stored as integer bitmasks, which
keeps transitive closure and comparability queries cheap for the small posets
this package deals with.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Iterator, Sequence

from .errors import CycleError, UnknownElement, WidthExceeded

__all__ = [
    "Poset",
    "IncompGraph",
    "ChainPair",
    "poset_from_covers",
    "incomparability_graph",
    "comparability_graph",
    "graph_from_edges",
    "is_chain_cover",
    "width",
    "width_bruteforce",
    "chain_cover_2",
    "kappa2",
    "ordinal_sum_split",
    "ordinal_sum",
    "chain",
    "antichain",
]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable strict partial order on a list of element ids.

    ``relations`` are pairs ``(u, v)`` meaning ``u < v``.  The transitive
    closure is taken eagerly; a cycle raises :class:`CycleError`.
    """

    __slots__ = ("_elements", "_index", "_below", "_above", "_hash")

    def __init__(self, elements: Iterable[str], relations: Iterable[tuple[str, str]] = ()):
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate element ids")
        below = [0] * len(elements)
        for u, v in relations:
            if u not in index:
                raise UnknownElement(u)
            if v not in index:
                raise UnknownElement(v)
            below[index[v]] |= 1 << index[u]
        self._elements = elements
        self._index = index
        self._below = _close(below)
        self._above = _transpose(self._below)
        self._hash = None

    @classmethod
    def _from_masks(cls, elements: tuple[str, ...], below: list[int]) -> "Poset":
        # caller guarantees ``below`` is already transitively closed and acyclic
        p = cls.__new__(cls)
        p._elements = elements
        p._index = {e: i for i, e in enumerate(elements)}
        p._below = list(below)
        p._above = _transpose(p._below)
        p._hash = None
        return p

    # -- basic accessors ---------------------------------------------------

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    @property
    def n(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(x) from None

    @property
    def lt(self) -> frozenset[tuple[str, str]]:
        """The strict order as a set of pairs ``(u, v)`` with ``u < v``."""
        el = self._elements
        return frozenset((el[i], el[j]) for j in range(self.n) for i in _bits(self._below[j]))

    def below_mask(self, x: str) -> int:
        return self._below[self.index(x)]

    def above_mask(self, x: str) -> int:
        return self._above[self.index(x)]

    def pred_masks(self) -> list[int]:
        """Bitmask of strict predecessors for each element index."""
        return list(self._below)

    def less(self, u: str, v: str) -> bool:
        return bool(self._below[self.index(v)] >> self.index(u) & 1)

    def comparable(self, u: str, v: str) -> bool:
        return u == v or self.less(u, v) or self.less(v, u)

    def incomparable(self, u: str, v: str) -> bool:
        return not self.comparable(u, v)

    def down_set(self, x: str) -> frozenset[str]:
        return frozenset(self._elements[i] for i in _bits(self.below_mask(x)))

    def up_set(self, x: str) -> frozenset[str]:
        return frozenset(self._elements[i] for i in _bits(self.above_mask(x)))

    def covers(self) -> list[tuple[str, str]]:
        """Cover pairs of the Hasse diagram, in element order."""
        out = []
        el = self._elements
        for j in range(self.n):
            below = self._below[j]
            for i in _bits(below):
                # i is covered by j unless some k lies strictly between them
                if not (self._above[i] & below):
                    out.append((el[i], el[j]))
        out.sort(key=lambda uv: (self._index[uv[0]], self._index[uv[1]]))
        return out

    def incomparable_pairs(self) -> list[tuple[str, str]]:
        el = self._elements
        full = (1 << self.n) - 1
        out = []
        for i in range(self.n):
            free = full & ~(self._below[i] | self._above[i]) & ~((2 << i) - 1)
            out.extend((el[i], el[j]) for j in _bits(free))
        return out

    def is_chain(self) -> bool:
        return not self.incomparable_pairs()

    # -- derived posets ----------------------------------------------------

    def restrict(self, subset: Iterable[str]) -> "Poset":
        """Induced subposet; element order follows this poset's order."""
        keep = set(subset)
        for x in keep:
            self.index(x)
        idx = [i for i, e in enumerate(self._elements) if e in keep]
        remap = {old: new for new, old in enumerate(idx)}
        below = []
        for i in idx:
            m = 0
            for j in _bits(self._below[i]):
                if j in remap:
                    m |= 1 << remap[j]
            below.append(m)
        return Poset._from_masks(tuple(self._elements[i] for i in idx), below)

    def with_relation(self, u: str, v: str) -> "Poset":
        """Return the poset obtained by adding ``u < v`` and closing transitively."""
        iu, iv = self.index(u), self.index(v)
        if iu == iv or self._below[iu] >> iv & 1:
            raise CycleError(f"adding {u} < {v} creates a cycle")
        below = list(self._below)
        low = self._below[iu] | (1 << iu)
        for j in itertools.chain([iv], _bits(self._above[iv])):
            below[j] |= low
        return Poset._from_masks(self._elements, below)

    def relabel(self, mapping: dict[str, str]) -> "Poset":
        return Poset._from_masks(tuple(mapping[e] for e in self._elements), self._below)

    def reorder(self, elements: Sequence[str]) -> "Poset":
        """Same order relation with the element list permuted."""
        if sorted(elements) != sorted(self._elements):
            raise ValueError("reorder needs a permutation of the elements")
        return Poset(elements, self.lt)

    def dual(self) -> "Poset":
        return Poset._from_masks(self._elements, self._above)

    def extends(self, other: "Poset") -> bool:
        """True if every relation of ``other`` also holds here (same ground set)."""
        if set(other.elements) != set(self._elements):
            return False
        return all(self.less(u, v) for u, v in other.lt)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self._elements) == set(other._elements) and self.lt == other.lt

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._elements), self.lt))
        return self._hash

    def __repr__(self) -> str:
        rel = ", ".join(f"{u}<{v}" for u, v in self.covers())
        return f"Poset([{', '.join(self._elements)}]; {rel})"


def _close(below: list[int]) -> list[int]:
    n = len(below)
    below = list(below)
    for k in range(n):
        bk = 1 << k
        low_k = below[k]
        for j in range(n):
            if below[j] & bk:
                below[j] |= low_k
    for i in range(n):
        if below[i] >> i & 1:
            raise CycleError("relation has a directed cycle")
    # antisymmetry follows from irreflexivity of the closure
    return below


def _transpose(below: list[int]) -> list[int]:
    above = [0] * len(below)
    for j, m in enumerate(below):
        for i in _bits(m):
            above[i] |= 1 << j
    return above


def poset_from_covers(elements: Iterable[str], cover_pairs: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from cover (or any generating) pairs ``u < v``."""
    return Poset(elements, cover_pairs)


def chain(k: int, prefix: str = "c") -> Poset:
    names = [f"{prefix}{i}" for i in range(k)]
    return Poset(names, zip(names, names[1:]))


def antichain(k: int, prefix: str = "a") -> Poset:
    return Poset([f"{prefix}{i}" for i in range(k)])


def ordinal_sum(*parts: Poset) -> Poset:
    """Stack the parts bottom to top; element ids must be distinct."""
    elements: list[str] = []
    rel: list[tuple[str, str]] = []
    for k, p in enumerate(parts):
        rel.extend(p.lt)
        for q in parts[:k]:
            rel.extend((x, y) for x in q.elements for y in p.elements)
        elements.extend(p.elements)
    return Poset(elements, rel)


# ---------------------------------------------------------------------------
# incomparability graph


@dataclass(frozen=True)
class IncompGraph:
    vertices: tuple[str, ...]
    adj: dict[str, frozenset[str]] = field(repr=False)
    components: tuple[tuple[str, ...], ...]

    @property
    def edges(self) -> list[tuple[str, str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return [(u, v) for u in self.vertices for v in sorted(self.adj[u], key=pos.__getitem__) if pos[u] < pos[v]]

    @property
    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges)

    def degree(self, v: str) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj.values()), default=0)

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adj[v]

    def induced(self, keep: Iterable[str]) -> "IncompGraph":
        return graph_from_edges([v for v in self.vertices if v in set(keep)], self.edges)


def graph_from_edges(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> IncompGraph:
    vs = tuple(vertices)
    vset = set(vs)
    adj: dict[str, set[str]] = {v: set() for v in vs}
    for u, v in edges:
        if u in vset and v in vset:
            adj[u].add(v)
            adj[v].add(u)
    return IncompGraph(vs, {v: frozenset(a) for v, a in adj.items()}, _components(vs, adj))


def _components(vertices: Sequence[str], adj) -> tuple[tuple[str, ...], ...]:
    pos = {v: i for i, v in enumerate(vertices)}
    seen: set[str] = set()
    comps = []
    for s in vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(tuple(sorted(comp, key=pos.__getitem__)))
    return tuple(comps)


def incomparability_graph(p: Poset) -> IncompGraph:
    return graph_from_edges(p.elements, p.incomparable_pairs())


def comparability_graph(p: Poset) -> IncompGraph:
    """Graph whose edges are the comparable pairs (same container type)."""
    return graph_from_edges(p.elements, p.lt)


# ---------------------------------------------------------------------------
# width and chain covers


def width(p: Poset) -> int:
    """Size of a largest antichain, via Dilworth: n minus a maximum matching."""
    n = p.n
    if n == 0:
        return 0
    above = [p.above_mask(x) for x in p.elements]
    match_right = [-1] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in _bits(above[i]):
            if not seen[j]:
                seen[j] = True
                if match_right[j] < 0 or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
        return False

    matching = sum(augment(i, [False] * n) for i in range(n))
    return n - matching


def width_bruteforce(p: Poset) -> int:
    """Largest antichain by exhaustive search (test oracle, n <= 20)."""
    el = p.elements
    best = 0
    for r in range(len(el), 0, -1):
        for combo in itertools.combinations(el, r):
            if all(p.incomparable(u, v) for u, v in itertools.combinations(combo, 2)):
                return r
    return best


@dataclass(frozen=True)
class ChainPair:
    chainA: tuple[str, ...]
    chainB: tuple[str, ...]

    def side(self, x: str) -> str:
        if x in self.chainA:
            return "A"
        if x in self.chainB:
            return "B"
        raise UnknownElement(x)

    def position(self, x: str) -> int:
        if x in self.chainA:
            return self.chainA.index(x)
        return self.chainB.index(x)

    def swapped(self) -> "ChainPair":
        return ChainPair(self.chainB, self.chainA)


def _sort_chain(p: Poset, items: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(items, key=lambda x: bin(p.below_mask(x)).count("1")))


def chain_cover_2(p: Poset) -> ChainPair:
    """Two disjoint chains covering ``p``.

    Chain covers are exactly the proper 2-colourings of the incomparability
    graph.  Each component is coloured from its first element (in element
    order), which puts that element into chain A; this is the lexicographically
    least assignment.
    """
    g = incomparability_graph(p)
    colour: dict[str, int] = {}
    for comp in g.components:
        start = comp[0]
        colour[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    raise WidthExceeded(f"width of poset exceeds 2 (odd cycle through {x}, {y})")
    a = _sort_chain(p, (x for x in p.elements if colour[x] == 0))
    b = _sort_chain(p, (x for x in p.elements if colour[x] == 1))
    return ChainPair(a, b)


def is_chain_cover(p: Poset, chains: ChainPair) -> bool:
    a, b = chains.chainA, chains.chainB
    if sorted(a + b) != sorted(p.elements):
        return False
    for c in (a, b):
        if any(not p.less(x, y) for x, y in zip(c, c[1:])):
            return False
    return True


def kappa2(p: Poset) -> int:
    """Number of two-vertex components of the incomparability graph."""
    return sum(1 for c in incomparability_graph(p).components if len(c) == 2)


def ordinal_sum_split(p: Poset) -> list[Poset]:
    """Maximal ordinal summands, bottom to top (components of the incomparability graph)."""
    comps = list(incomparability_graph(p).components)

    def cmp(c1, c2):
        return -1 if p.less(c1[0], c2[0]) else 1

    comps.sort(key=cmp_to_key(cmp))
    return [p.restrict(c) for c in comps]
