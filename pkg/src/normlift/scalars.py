"""Helpers shared by the two scalar backends.

Exact scalars are ``int``, ``Fraction`` or :class:`CyclotomicNumber`; floating
scalars are mpmath numbers at the current working precision.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .cyclotomic import CyclotomicNumber


def is_exact(x) -> bool:
    return isinstance(x, (CyclotomicNumber, int, Fraction))


def float_tolerance() -> mpmath.mpf:
    # zero threshold for floating scalars, relative to working precision
    return mpmath.mpf(10) ** (-(mpmath.mp.dps * 2 // 3))


def is_zero(x, scale=1) -> bool:
    if isinstance(x, CyclotomicNumber):
        return x.is_zero()
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(x) <= float_tolerance() * max(1, abs(scale))


def to_mpc(x) -> mpmath.mpc:
    if isinstance(x, CyclotomicNumber):
        return x.to_mpc()
    if isinstance(x, Fraction):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    return mpmath.mpc(x)


def conj(x):
    if isinstance(x, CyclotomicNumber):
        return x.conjugate()
    if isinstance(x, (int, Fraction)):
        return x
    return mpmath.conj(x)


def sqrt_prime(p: int, exact: bool):
    """sqrt(p) in the requested backend."""
    if exact:
        return CyclotomicNumber.sqrt_prime(p)
    return mpmath.sqrt(p)


def prime_power(p: int, twice_exponent: int, exact: bool):
    """p^(twice_exponent/2) in the requested backend."""
    whole, half = divmod(twice_exponent, 2)
    base = Fraction(p) ** whole
    if not exact:
        base = mpmath.mpf(base.numerator) / base.denominator
    return base * sqrt_prime(p, exact) if half else base
