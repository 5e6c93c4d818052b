import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from conftest import width2_posets
from poset_entropy.corpus import path_poset, random_width2, star_poset
from poset_entropy.entropy import (
    complement_entropy_check,
    entropy_bruteforce,
    entropy_disjoint_union,
    km_for_poset,
    max_ratio_subset,
    max_ratio_subset_bruteforce,
)
from poset_entropy.errors import NotBipartite
from poset_entropy.exact import log2
from poset_entropy.flow import FlowNetwork
from poset_entropy.poset import antichain, chain_cover_2, graph_from_edges, incomparability_graph


def test_example1(example1):
    km = km_for_poset(example1)
    assert km.entropy == 1
    assert km.pairs == ((("a",), ("d",)), (("b",), ("e",)), (("c",), ("f",)))
    assert all(x == Fraction(1, 2) for x in km.x_star.values())
    hbar, h = complement_entropy_check(example1)
    assert h == log2(3)


def test_antichain_and_chain():
    assert km_for_poset(antichain(2)).entropy == 1
    assert km_for_poset(antichain(1)).entropy == 0


def test_star():
    # centre against three leaves: one pair of sizes (1, 3)
    km = km_for_poset(star_poset(4))
    assert km.n_entropy == 3 * log2(Fraction(4, 3)) + log2(4)


def test_flow_small():
    f = FlowNetwork(4)
    f.add_edge(0, 1, 3)
    f.add_edge(0, 2, 2)
    f.add_edge(1, 3, 2)
    f.add_edge(2, 3, 3)
    f.add_edge(1, 2, 1)
    assert f.max_flow(0, 3) == 5


def test_not_bipartite():
    g = graph_from_edges("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(NotBipartite):
        max_ratio_subset(g, ["a", "b"], ["c"])


@settings(max_examples=150)
@given(width2_posets(max_n=9))
def test_max_ratio_matches_bruteforce(p):
    assume(p.n > 0)
    g = incomparability_graph(p)
    c = chain_cover_2(p)
    assert max_ratio_subset(g, c.chainA, c.chainB) == max_ratio_subset_bruteforce(g, c.chainA, c.chainB)


@settings(max_examples=60, deadline=None)
@given(width2_posets(max_n=8))
def test_km_matches_frank_wolfe(p):
    g = incomparability_graph(p)
    if p.n == 0:
        return
    fw = entropy_bruteforce(g)
    assert abs(fw.value - float(km_for_poset(p).entropy)) <= 1e-6


@settings(max_examples=60, deadline=None)
@given(width2_posets(max_n=8))
def test_perfect_graph_complement(p):
    if p.n == 0:
        return
    hbar, h = complement_entropy_check(p)
    assert abs(float(hbar) + float(h) - math.log2(p.n)) < 1e-12


def test_blocks_partition_and_ratios_decrease():
    rng = random.Random(3)
    for _ in range(100):
        p = random_width2(rng.randint(1, 14), rng)
        km = km_for_poset(p)
        seen = [v for a, b in km.pairs for v in a + b]
        assert sorted(seen) == sorted(p.elements)
        sizes = [(len(a), len(b)) for a, b in km.pairs if a and b]
        ratios = [Fraction(a, b) for a, b in sizes]
        assert ratios == sorted(ratios, reverse=True)


def test_disjoint_union():
    p = path_poset(3)
    h = km_for_poset(p).entropy
    assert entropy_disjoint_union([(3, h), (3, h)]) == h
