import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from poset_entropy.bounds import epsilon
from poset_entropy.errors import AmbiguousSign
from poset_entropy.exact import ExactReal, binary_entropy, ceil_exact, certified_sign, log2


def test_log_identities_are_symbolic():
    assert log2(6) - log2(2) - log2(3) == 0
    assert (log2(Fraction(9, 4)) - 2 * log2(3) + 2).is_zero()
    assert log2(8) == 3 and log2(8).is_rational()


def test_epsilon_value():
    eps = epsilon()
    assert 0.2615 <= float(eps) <= 0.2625
    assert eps * log2(3) == 2 - log2(3)


def test_sign_close_values():
    # log2(3^12) vs 19: 12 log2 3 = 19.0196
    assert (12 * log2(3) - 19).sign() == 1
    assert (log2(Fraction(2**40 + 1, 2**40))).sign() == 1


def test_certified_sign_undecidable():
    import mpmath

    with pytest.raises(AmbiguousSign):
        certified_sign(lambda prec: mpmath.iv.mpf([-1, 1]))


def test_binary_entropy():
    assert binary_entropy(Fraction(1, 2)) == 1
    assert binary_entropy(0) == 0


def test_ceil_exact():
    assert ceil_exact(log2(13)) == 4
    assert ceil_exact(log2(16)) == 4
    assert ceil_exact(2 * log2(13)) == 8


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_log_product(a, b):
    assert log2(a) + log2(b) == log2(a * b)
    assert abs(float(log2(Fraction(a, b))) - math.log2(a / b)) < 1e-9


@given(st.fractions(min_value=-100, max_value=100), st.integers(2, 50))
def test_arith_consistent_with_float(q, r):
    x = q * log2(r) + q
    assert math.isclose(float(x), float(q) * math.log2(r) + float(q), abs_tol=1e-9)
    assert (x - x).is_zero()
    assert ExactReal.const(q).sign() == (q > 0) - (q < 0)
