import pytest
from hypothesis import given, settings

from conftest import width2_posets
from poset_entropy.corpus import path_poset
from poset_entropy.errors import LimitExceeded
from poset_entropy.linext import (
    count_linext,
    count_linext_bruteforce,
    count_linext_downsets,
    count_linext_width2,
    fibonacci,
    is_linear_extension,
    iter_linear_extensions,
    pair_counts,
)
from poset_entropy.poset import antichain, chain


def test_example1(example1):
    assert count_linext_width2(example1) == 13
    assert count_linext_downsets(example1) == 13
    assert count_linext_bruteforce(example1) == 13


def test_small_cases():
    assert count_linext(chain(5)) == 1
    assert count_linext(antichain(2)) == 2
    assert count_linext(chain(0)) == 1


def test_bruteforce_limit():
    with pytest.raises(LimitExceeded):
        count_linext_bruteforce(chain(10))


@settings(max_examples=200)
@given(width2_posets())
def test_three_counters_agree(p):
    e = count_linext_width2(p)
    assert e == count_linext_downsets(p) == count_linext_bruteforce(p)


@given(width2_posets(max_n=7))
def test_enumeration_matches_count(p):
    exts = list(iter_linear_extensions(p))
    assert len(exts) == len(set(exts)) == count_linext(p)
    assert all(is_linear_extension(p, x) for x in exts)


@settings(max_examples=100)
@given(width2_posets(max_n=7))
def test_pair_counts(p):
    e, table = pair_counts(p)
    exts = list(iter_linear_extensions(p))
    assert e == len(exts)
    for (a, b), c in table.items():
        assert c == sum(1 for x in exts if x.index(a) < x.index(b))


def test_path_fibonacci():
    for n in range(1, 21):
        assert count_linext(path_poset(n)) == fibonacci(n + 1)
