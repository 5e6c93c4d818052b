import pytest
from hypothesis import given

from conftest import width2_posets
from poset_entropy.errors import CycleError, UnknownElement, WidthExceeded
from poset_entropy.poset import (
    Poset,
    antichain,
    chain,
    chain_cover_2,
    comparability_graph,
    incomparability_graph,
    is_chain_cover,
    kappa2,
    ordinal_sum,
    ordinal_sum_split,
    poset_from_covers,
    width,
    width_bruteforce,
)


def test_transitive_closure():
    p = poset_from_covers("xyz", [("x", "y"), ("y", "z")])
    assert p.less("x", "z")
    assert not p.less("z", "x")
    assert p.is_chain()


def test_cycle_rejected():
    with pytest.raises(CycleError):
        Poset("ab", [("a", "b"), ("b", "a")])


def test_unknown_element():
    with pytest.raises(UnknownElement):
        Poset("ab", [("a", "c")])


def test_example1_graph(example1):
    g = incomparability_graph(example1)
    assert g.edge_set == {frozenset(e) for e in ["ad", "db", "be", "ec", "cf"]}
    assert kappa2(example1) == 0
    assert width(example1) == 2


def test_chain_cover_example1(example1):
    c = chain_cover_2(example1)
    assert c.chainA == ("a", "b", "c") and c.chainB == ("d", "e", "f")
    assert is_chain_cover(example1, c)


def test_width3_rejected():
    with pytest.raises(WidthExceeded):
        chain_cover_2(antichain(3))


def test_ordinal_sum_and_split():
    p = ordinal_sum(antichain(2, "x"), chain(1, "y"), antichain(2, "z"))
    assert [q.n for q in ordinal_sum_split(p)] == [2, 1, 2]
    assert kappa2(p) == 2


@given(width2_posets())
def test_width_matches_bruteforce(p):
    assert width(p) == width_bruteforce(p) <= 2


@given(width2_posets())
def test_graphs_complementary(p):
    inc = incomparability_graph(p).edge_set
    comp = comparability_graph(p).edge_set
    assert not inc & comp
    assert len(inc) + len(comp) == p.n * (p.n - 1) // 2


@given(width2_posets())
def test_chain_cover_valid(p):
    assert is_chain_cover(p, chain_cover_2(p))


@given(width2_posets())
def test_dual_involution(p):
    assert p.dual().dual() == p
