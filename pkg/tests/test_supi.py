import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import width2_posets
from poset_entropy.errors import InconsistentOracle
from poset_entropy.exact import log2
from poset_entropy.linext import iter_linear_extensions
from poset_entropy.poset import antichain
from poset_entropy.supi import budget2, budget_report, greedy_sort, random_linear_extension


def test_example1_transcript(example1):
    t = greedy_sort(example1, list("adbecf"))
    r = budget_report(t)
    assert t.n_queries == 5 and t.budget2 == 8 and t.refined_budget == 7
    assert r["conserved"] and r["sound"] and r["within_refined"]
    assert t.final_order == tuple("adbecf")


def test_budget2():
    assert budget2(1) == 0
    assert budget2(2) == 2
    assert budget2(13) == 8  # 2 log2 13 = 7.4


def test_inconsistent_hidden(example1):
    with pytest.raises(InconsistentOracle):
        greedy_sort(example1, list("badecf"))
    with pytest.raises(InconsistentOracle):
        greedy_sort(example1, list("abc"))


def test_pairs_first():
    t = greedy_sort(antichain(2), ["a1", "a0"])
    assert t.pair_phase == 1 and t.queries == (("a0", "a1", ">"),)


@settings(max_examples=100, deadline=None)
@given(width2_posets(max_n=9), st.randoms(use_true_random=False))
def test_transcripts(p, rng):
    hidden = rng.choice(list(iter_linear_extensions(p)))
    t = greedy_sort(p, hidden)
    r = budget_report(t)
    assert r["sound"] and r["conserved"] and r["within_budget2"]
    assert sum(r["trace"], start=log2(1)) == log2(t.counts[0])


def test_random_linear_extension_uniform_support(example1):
    rng = random.Random(0)
    seen = {tuple(random_linear_extension(example1, rng)) for _ in range(400)}
    assert seen == set(iter_linear_extensions(example1))
