"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis ``1, z, ..., z^(phi(N)-1)`` as an
integer vector over a common positive denominator. Numbers of different
levels are lifted to the lcm level before combining.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import mpmath

from .errors import DomainError


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, den monic; coefficients low -> high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """z^j reduced to the power basis, for j = 0 .. n-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)


class CyclotomicNumber:
    """Immutable element of Q(zeta_N), zeta_N = exp(2 pi i / N)."""

    __slots__ = ("level", "_num", "_den")

    def __init__(self, level: int, coefficients: Sequence = (0,)):
        if level < 1:
            raise DomainError("cyclotomic level must be positive")
        fr = [Fraction(c) for c in coefficients]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        ints = [int(c * den) for c in fr]
        table = _power_table(level)
        deg = len(table[0])
        vec = [0] * deg
        for j, c in enumerate(ints):
            if c:
                for i, t in enumerate(table[j % level]):
                    if t:
                        vec[i] += c * t
        self._set(level, vec, den)

    def _set(self, level: int, vec: list[int], den: int) -> None:
        g = den
        for c in vec:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if den < 0:
            g = -g
        if g != 1:
            vec = [c // g for c in vec]
            den //= g
        self.level = level
        self._num = tuple(vec)
        self._den = den

    @classmethod
    def _make(cls, level: int, vec: list[int], den: int) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj._set(level, vec, den)
        return obj

    # constructors

    @classmethod
    def rational(cls, x) -> "CyclotomicNumber":
        x = Fraction(x)
        return cls._make(1, [x.numerator], x.denominator)

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "CyclotomicNumber":
        coeffs = [0] * n
        coeffs[power % n] = 1
        return cls(n, coeffs)

    @classmethod
    def root_of_unity(cls, angle) -> "CyclotomicNumber":
        """exp(2 pi i * angle) for a rational angle."""
        angle = Fraction(angle)
        return cls.zeta(angle.denominator, angle.numerator)

    @classmethod
    def sqrt_prime(cls, p: int) -> "CyclotomicNumber":
        """The positive square root of a prime p, via a quadratic Gauss sum."""
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if p == 2:
            return cls.zeta(8) + cls.zeta(8, 7)
        coeffs = [0] * p
        for a in range(1, p):
            coeffs[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
        g = cls(p, coeffs)
        # g^2 = (-1)^((p-1)/2) p and g = sqrt(p) or i sqrt(p)
        return g if p % 4 == 1 else g * cls.zeta(4, 3)

    # structure

    @property
    def degree(self) -> int:
        return len(self._num)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def lift(self, level: int) -> "CyclotomicNumber":
        if level % self.level:
            raise DomainError(f"cannot lift level {self.level} to {level}")
        if level == self.level:
            return self
        step = level // self.level
        table = _power_table(level)
        vec = [0] * len(table[0])
        for j, c in enumerate(self._num):
            if c:
                for i, t in enumerate(table[(j * step) % level]):
                    if t:
                        vec[i] += c * t
        return CyclotomicNumber._make(level, vec, self._den)

    def _pair(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if self.level == other.level:
            return self, other
        lv = _lcm(self.level, other.level)
        return self.lift(lv), other.lift(lv)

    @staticmethod
    def _coerce(other):
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(other)
        return None

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.to_mpc() + other
        a, b = self._pair(o)
        vec = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return CyclotomicNumber._make(a.level, vec, a._den * b._den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._make(self.level, [-c for c in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.to_mpc() - other
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.to_mpc() * other
        if o.level == 1:
            return CyclotomicNumber._make(self.level, [c * o._num[0] for c in self._num], self._den * o._den)
        if self.level == 1:
            return o * self
        a, b = self._pair(o)
        deg = len(a._num)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        conv[i + j] += x * y
        vec = conv[:deg]
        table = _power_table(a.level)
        for j in range(deg, 2 * deg - 1):
            c = conv[j]
            if c:
                for i, t in enumerate(table[j % a.level]):
                    if t:
                        vec[i] += c * t
        return CyclotomicNumber._make(a.level, vec, a._den * b._den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CyclotomicNumber":
        """Image under zeta -> zeta^k (k coprime to the level)."""
        n = self.level
        if gcd(k, n) != 1:
            raise DomainError(f"{k} is not a unit mod {n}")
        table = _power_table(n)
        vec = [0] * len(self._num)
        for j, c in enumerate(self._num):
            if c:
                for i, t in enumerate(table[(j * k) % n]):
                    if t:
                        vec[i] += c * t
        return CyclotomicNumber._make(n, vec, self._den)

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1 % self.level) if self.level > 2 else self

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber._make(self.level, [self._den] + [0] * (self.degree - 1), self._num[0])
        # x^-1 = (prod of the other conjugates) / norm(x)
        rest = CyclotomicNumber.rational(1)
        for k in _units(self.level):
            if k % self.level != 1:
                rest = rest * self.galois(k)
        norm = (self * rest)
        if not norm.is_rational():
            raise ArithmeticError("norm computation did not land in Q")
        n = Fraction(norm._num[0], norm._den)
        return rest * (1 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.to_mpc() / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / self.to_mpc()
        return o * self.inverse()

    def __pow__(self, e: int) -> "CyclotomicNumber":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = CyclotomicNumber.rational(1)
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._pair(o)
        return a._den == b._den and a._num == b._num

    __hash__ = None  # equality spans levels

    # numerics

    def to_mpc(self) -> mpmath.mpc:
        n = self.level
        total = mpmath.mpc(0)
        for j, c in enumerate(self._num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * j) / n)
        return total / self._den

    def __complex__(self) -> complex:
        return complex(self.to_mpc())

    def __abs__(self):
        return abs(self.to_mpc())

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.level}^{j}")
        return "Cyc(" + (" + ".join(terms) or "0") + ")"


def cyclotomic_sum(xs: Iterable[CyclotomicNumber]) -> CyclotomicNumber:
    out = CyclotomicNumber.rational(0)
    for x in xs:
        out = out + x
    return out
