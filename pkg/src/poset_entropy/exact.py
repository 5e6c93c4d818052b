"""Exact real numbers built from base-2 logarithms of rationals.

An :class:`ExactReal` is a finite sum ``sum_k c_k * prod_p log2(p)**e_k,p`` with
rational coefficients ``c_k``, odd primes ``p`` and integer exponents (a
Laurent polynomial in the logs of odd primes).  ``log2`` of a positive rational
factors into a linear form in these atoms plus a rational constant, because
``log2(2) = 1``.  The representation is canonical, so an expression is
*symbolically* zero exactly when all its coefficients vanish.

Signs are decided by certified interval evaluation (``mpmath.iv``); the
symbolic test handles the exact-equality cases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

import mpmath
from sympy import factorint

from .errors import AmbiguousSign

__all__ = [
    "ExactReal",
    "log2",
    "binary_entropy",
    "DEFAULT_PRECISION",
    "certified_sign",
    "ceil_exact",
    "iv_log2e",
]

DEFAULT_PRECISION = 256
_MAX_PRECISION = 8192

Monomial = tuple[tuple[int, int], ...]
Number = Union[int, Fraction]


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def _log_terms(r: Fraction) -> dict[Monomial, Fraction]:
    if r <= 0:
        raise ValueError(f"log2 of non-positive number {r}")
    terms: dict[Monomial, Fraction] = {}
    for part, sign in ((r.numerator, 1), (r.denominator, -1)):
        if part == 1:
            continue
        for p, e in _factor(part):
            key: Monomial = () if p == 2 else ((p, 1),)
            terms[key] = terms.get(key, Fraction(0)) + sign * e
    return {k: v for k, v in terms.items() if v}


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for p, e in b:
        d[p] = d.get(p, 0) + e
    return tuple(sorted((p, e) for p, e in d.items() if e))


class ExactReal:
    """Immutable exact real; see the module docstring for the representation."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                clean[k] = v
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, q: Number) -> "ExactReal":
        return cls({(): Fraction(q)})

    @classmethod
    def log2(cls, r: Number) -> "ExactReal":
        return cls(_log_terms(Fraction(r)))

    @classmethod
    def zero(cls) -> "ExactReal":
        return cls()

    @classmethod
    def sum(cls, items: Iterable["ExactReal | Number"]) -> "ExactReal":
        acc: dict[Monomial, Fraction] = {}
        for x in items:
            for k, v in _coerce(x)._terms.items():
                acc[k] = acc.get(k, Fraction(0)) + v
        return cls(acc)

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        """Symbolic zero test (exact)."""
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == () for k in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational constant")
        return self._terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactReal.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return ExactReal({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = _mono_mul(k1, k2)
                acc[k] = acc.get(k, Fraction(0)) + v1 * v2
        return ExactReal(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.is_monomial():
            raise ZeroDivisionError("exact division only by a single-term ExactReal")
        (k, v), = other._terms.items()
        inv = tuple((p, -e) for p, e in k)
        return self * ExactReal({inv: 1 / v})

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- evaluation --------------------------------------------------------

    def interval(self, prec: int = DEFAULT_PRECISION):
        """Certified enclosure as an ``mpmath.iv.mpf``."""
        with _iv_prec(prec):
            total = mpmath.iv.mpf(0)
            for k, c in self._terms.items():
                term = mpmath.iv.mpf(c.numerator) / c.denominator
                for p, e in k:
                    term = term * _iv_log2(p, prec) ** e
                total = total + term
            return total

    def __float__(self) -> float:
        return float(self.interval(96).mid)

    def mp(self, prec: int = DEFAULT_PRECISION):
        with mpmath.workprec(prec):
            return mpmath.mpf(self.interval(prec).mid)

    def sign(self, prec: int = DEFAULT_PRECISION) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            v = self.as_fraction()
            return (v > 0) - (v < 0)
        return certified_sign(self.interval, prec)

    # -- comparisons (by certified sign of the difference) -----------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self) -> str:
        return f"ExactReal({self.format()})"

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda m: (len(m), m)):
            c = self._terms[k]
            atoms = "*".join(f"log2({p})" + (f"^{e}" if e != 1 else "") for p, e in k)
            if not atoms:
                parts.append(str(c))
            elif c == 1:
                parts.append(atoms)
            elif c == -1:
                parts.append("-" + atoms)
            else:
                parts.append(f"{c}*{atoms}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> ExactReal:
    if isinstance(x, ExactReal):
        return x
    if isinstance(x, (int, Rational)):
        return ExactReal.const(Fraction(x))
    return NotImplemented


def log2(r: Number) -> ExactReal:
    return ExactReal.log2(r)


def binary_entropy(x: Fraction) -> ExactReal:
    """``h(x) = -x log x - (1-x) log(1-x)`` with ``h(0) = h(1) = 0``."""
    x = Fraction(x)
    if x in (0, 1):
        return ExactReal.zero()
    return -x * log2(x) - (1 - x) * log2(1 - x)


class _iv_prec:
    def __init__(self, prec: int):
        self.prec = prec

    def __enter__(self):
        self.saved = mpmath.iv.prec
        mpmath.iv.prec = self.prec

    def __exit__(self, *exc):
        mpmath.iv.prec = self.saved


@lru_cache(maxsize=None)
def _iv_log2_cached(p: int, prec: int):
    with _iv_prec(prec + 16):
        return mpmath.iv.log(mpmath.iv.mpf(p)) / mpmath.iv.log(mpmath.iv.mpf(2))


def _iv_log2(p: int, prec: int):
    return _iv_log2_cached(p, prec)


def iv_log2e(prec: int = DEFAULT_PRECISION):
    """Certified enclosure of ``log2(e) = 1/ln 2``."""
    with _iv_prec(prec):
        return 1 / mpmath.iv.log(mpmath.iv.mpf(2))


def certified_sign(enclose, prec: int = DEFAULT_PRECISION) -> int:
    """Sign of a quantity given ``enclose(prec) -> iv.mpf``; raises if undecidable.

    Precision is doubled up to 8192 bits while the enclosure straddles zero.
    """
    while prec <= _MAX_PRECISION:
        iv = enclose(prec)
        if iv.a > 0:
            return 1
        if iv.b < 0:
            return -1
        prec *= 2
    raise AmbiguousSign("interval still contains 0 at maximum precision")


def ceil_exact(x: ExactReal) -> int:
    """Exact ceiling of an ExactReal (uses certified signs around the estimate)."""
    if x.is_rational():
        return math.ceil(x.as_fraction())
    guess = math.ceil(float(x))
    for k in (guess - 1, guess, guess + 1):
        if (x - k).sign() <= 0:
            return k
    raise AmbiguousSign("could not bracket ceiling")
