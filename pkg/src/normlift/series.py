"""Truncated power series in a deformation variable h (t = exp(h)).

Coefficients are generic scalars (see :mod:`normlift.scalars`); only ring
operations plus a zero test are needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .scalars import is_zero


def one_minus_exp(y, e: int, length: int):
    """Series of ``1 - y * exp(e h)``, split as ``h^v * unit``.

    Returns ``(v, unit)`` with ``len(unit) == length`` and ``unit[0] != 0``,
    or ``None`` when the series vanishes identically (y == 1 and e == 0).
    """
    raw = [1 - y] + [-(y * Fraction(e**k, factorial(k))) for k in range(1, length + 1)]
    if not is_zero(raw[0]):
        return 0, raw[:length]
    if e == 0:
        return None
    # y == 1 up to the zero test: use the exact shape -(e h + e^2 h^2/2 + ...)
    unit = [-Fraction(e ** (k + 1), factorial(k + 1)) for k in range(length)]
    return 1, unit


def mul(a: Sequence, b: Sequence, length: int) -> list:
    out = []
    for k in range(length):
        s = 0
        for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return out


def inverse(a: Sequence, length: int) -> list:
    """Inverse of a unit series (``a[0]`` invertible)."""
    inv0 = Fraction(1) / a[0]
    out = [inv0]
    for k in range(1, length):
        s = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            s = s + a[i] * out[k - i]
        out.append(-(s * inv0))
    return out
