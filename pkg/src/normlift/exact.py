"""Exact numbers in Q[2^(1/2), pi^(+-1/2)] and even zeta values.

An :class:`ExactNumber` is a finite sum ``c * 2^(a/2) * pi^(b/2)`` with
rational ``c``. Integer powers of two are folded into the coefficient, so a
stored key always has ``a`` in ``{0, 1}`` and the representation is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Union

import mpmath

from .errors import DomainError

RationalLike = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class HalfInt:
    """The half-integer ``twice_value / 2``."""

    twice_value: int

    @classmethod
    def of(cls, x: RationalLike) -> "HalfInt":
        x = Fraction(x)
        if (2 * x).denominator != 1:
            raise DomainError(f"{x} is not a half-integer")
        return cls(int(2 * x))

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice_value + other.twice_value)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice_value - other.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __str__(self) -> str:
        if self.twice_value % 2 == 0:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def _fold(e2: int, epi: int, coeff: Fraction) -> tuple[tuple[int, int], Fraction]:
    # e2, epi are doubled exponents; move 2^(floor(e2/2)) into the coefficient
    whole, half = divmod(e2, 2)
    if whole >= 0:
        coeff = coeff * (1 << whole)
    else:
        coeff = coeff / (1 << -whole)
    return (half, epi), coeff


class ExactNumber:
    """Immutable element of Q[2^(1/2), pi^(+-1/2)]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[HalfInt, HalfInt], RationalLike] | None = None):
        acc: dict[tuple[int, int], Fraction] = {}
        for (e2, epi), c in (terms or {}).items():
            key, c = _fold(e2.twice_value, epi.twice_value, Fraction(c))
            acc[key] = acc.get(key, Fraction(0)) + c
        self._terms = {k: v for k, v in sorted(acc.items()) if v != 0}

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], Fraction]) -> "ExactNumber":
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in sorted(terms.items()) if v != 0}
        return obj

    @classmethod
    def monomial(cls, coeff: RationalLike = 1, two_exp: RationalLike = 0, pi_exp: RationalLike = 0) -> "ExactNumber":
        """``coeff * 2^two_exp * pi^pi_exp`` with half-integer exponents."""
        return cls({(HalfInt.of(two_exp), HalfInt.of(pi_exp)): coeff})

    @classmethod
    def rational(cls, x: RationalLike) -> "ExactNumber":
        return cls.monomial(x)

    @property
    def terms(self) -> dict[tuple[HalfInt, HalfInt], Fraction]:
        return {(HalfInt(a), HalfInt(b)): c for (a, b), c in self._terms.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def _coerce(self, other) -> "ExactNumber":
        if isinstance(other, ExactNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactNumber.rational(other)
        return NotImplemented

    def __add__(self, other) -> "ExactNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return ExactNumber._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "ExactNumber":
        return ExactNumber._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "ExactNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "ExactNumber":
        return (-self) + other

    def __mul__(self, other) -> "ExactNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key, c = _fold(a1 + a2, b1 + b2, c1 * c2)
                acc[key] = acc.get(key, Fraction(0)) + c
        return ExactNumber._raw(acc)

    __rmul__ = __mul__

    def reciprocal(self) -> "ExactNumber":
        """Exact inverse; defined only for a single nonzero monomial."""
        if not self.is_monomial():
            raise DomainError("reciprocal is only defined for a single monomial")
        ((a, b), c), = self._terms.items()
        key, c = _fold(-a, -b, 1 / c)
        return ExactNumber._raw({key: c})

    def __truediv__(self, other) -> "ExactNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "ExactNumber":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, e: int) -> "ExactNumber":
        if e < 0:
            return self.reciprocal() ** (-e)
        out = ExactNumber.rational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"ExactNumber({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"{c} * 2^({a}/2) * pi^({b}/2)" for (a, b), c in self._terms.items()]
        return " + ".join(parts)


def float_value(x: ExactNumber, precision: int = 30) -> mpmath.mpf:
    """Numerical value of ``x`` to ``precision`` decimal digits."""
    with mpmath.workdps(precision + 10):
        total = mpmath.mpf(0)
        for (a, b), c in x._terms.items():
            total += mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(2) ** a * mpmath.sqrt(mpmath.pi) ** b
        return +total


def product(xs: Iterable[ExactNumber]) -> ExactNumber:
    out = ExactNumber.rational(1)
    for x in xs:
        out = out * x
    return out


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0, B_0 = 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-s / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """The Bernoulli number B_n for even n >= 2 (B_2 = 1/6)."""
    if n < 2 or n % 2:
        raise DomainError(f"bernoulli needs an even integer >= 2, got {n}")
    return _bernoulli_table(n)[n]


def zeta_even(n: int) -> ExactNumber:
    """zeta(n) for even n >= 2, as a rational multiple of pi^n."""
    if n < 2 or n % 2:
        raise DomainError(f"zeta_even needs an even integer >= 2, got {n}")
    sign = 1 if (n // 2) % 2 == 1 else -1
    coeff = sign * bernoulli(n) * Fraction(2**n, 2 * factorial(n))
    return ExactNumber.monomial(coeff, 0, n)
