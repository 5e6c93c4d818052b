import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import width2_posets
from poset_entropy import _kernels_py, kernels
from poset_entropy.corpus import random_width2

try:
    from poset_entropy import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="Cython extension not built")


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_compiled
@settings(max_examples=200)
@given(width2_posets(max_n=9))
def test_parity_downset_and_bruteforce(p):
    pred = p.pred_masks()
    assert compiled.downset_count(pred, p.n) == _kernels_py.downset_count(pred, p.n)
    assert compiled.bruteforce_count(pred, p.n) == _kernels_py.bruteforce_count(pred, p.n)


@needs_compiled
@settings(max_examples=100)
@given(width2_posets(max_n=8))
def test_parity_canonical_code(p):
    pred = p.pred_masks()
    assert compiled.canonical_code(pred, p.n) == _kernels_py.canonical_code(pred, p.n)


@needs_compiled
def test_parity_larger_downsets():
    rng = random.Random(5)
    for _ in range(20):
        p = random_width2(rng.randint(12, 20), rng)
        pred = p.pred_masks()
        assert compiled.downset_count(pred, p.n) == _kernels_py.downset_count(pred, p.n)


def test_canonical_code_relabel_invariant():
    rng = random.Random(1)
    for _ in range(30):
        p = random_width2(rng.randint(1, 7), rng)
        q = p.relabel({x: f"z{i}" for i, x in enumerate(reversed(p.elements))}).reorder(
            sorted(f"z{i}" for i in range(p.n))
        )
        assert kernels.canonical_code(p.pred_masks(), p.n) == kernels.canonical_code(q.pred_masks(), q.n)


def test_pure_counts_small():
    # antichain of 4: 4! extensions
    assert _kernels_py.downset_count([0, 0, 0, 0], 4) == 24
    assert _kernels_py.bruteforce_count([0, 0, 0, 0], 4) == 24
    assert list(itertools.permutations(range(0)))  # n = 0 has one empty ordering
    assert _kernels_py.downset_count([], 0) == 1


@needs_compiled
def test_parity_wide_inputs():
    # antichains have all 2^n subsets as down-sets
    for n in (1, 5, 8, 12):
        assert compiled.downset_count([0] * n, n) == _kernels_py.downset_count([0] * n, n)


def test_pure_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, POSET_ENTROPY_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from poset_entropy import kernels, count_linext; "
         "from poset_entropy.corpus import path_poset; print(kernels.BACKEND, count_linext(path_poset(10)))"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["python", "89"]
