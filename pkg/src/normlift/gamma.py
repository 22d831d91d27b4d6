"""Gamma factors at integer arguments and the completed-zeta constants built from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Literal

from .errors import DomainError
from .exact import ExactNumber, product, zeta_even

Kind = Literal["R", "C"]


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_r(n: int) -> ExactNumber:
    """Gamma_R(n) = pi^(-n/2) Gamma(n/2) for a positive integer n."""
    if n <= 0:
        raise DomainError(f"Gamma_R has a pole at {n}")
    if n % 2 == 0:
        return ExactNumber.monomial(factorial(n // 2 - 1), 0, Fraction(-n, 2))
    # Gamma(n/2) = (n-2)!! sqrt(pi) / 2^((n-1)/2)
    return ExactNumber.monomial(_double_factorial(n - 2), Fraction(-(n - 1), 2), Fraction(1 - n, 2))


def gamma_c(n: int) -> ExactNumber:
    """Gamma_C(n) = 2 (2 pi)^(-n) Gamma(n) for a positive integer n."""
    if n <= 0:
        raise DomainError(f"Gamma_C has a pole at {n}")
    return ExactNumber.monomial(2 * factorial(n - 1), -n, -n)


def xi(n: int) -> ExactNumber:
    """Completed zeta value Gamma_R(n) zeta(n) at an even n >= 2."""
    if n < 2 or n % 2:
        raise DomainError(f"xi is only evaluated at even n >= 2, got {n}")
    return gamma_r(n) * zeta_even(n)


def delta_sp(d: int) -> ExactNumber:
    """xi(2) xi(4) ... xi(2d)."""
    if d < 1:
        raise DomainError("delta_sp needs d >= 1")
    return product(xi(2 * i) for i in range(1, d + 1))


def delta_sp_infinity(d: int) -> ExactNumber:
    """Archimedean part Gamma_R(2) Gamma_R(4) ... Gamma_R(2d)."""
    if d < 1:
        raise DomainError("delta_sp_infinity needs d >= 1")
    return product(gamma_r(2 * i) for i in range(1, d + 1))


@dataclass(frozen=True)
class GammaProduct:
    """``prefactor * prod Gamma_kind(arg)^exp`` kept as a formal multiset."""

    prefactor: ExactNumber = field(default_factory=lambda: ExactNumber.rational(1))
    factors: tuple[tuple[Kind, int, int], ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for kind, arg, exp in self.factors:
            if kind not in ("R", "C"):
                raise DomainError(f"unknown Gamma kind {kind!r}")
            merged[(kind, arg)] += exp
        norm = tuple(sorted((k, a, e) for (k, a), e in merged.items() if e != 0))
        object.__setattr__(self, "factors", norm)

    @classmethod
    def of(cls, *factors: tuple[Kind, int], prefactor: ExactNumber | None = None) -> "GammaProduct":
        return cls(prefactor if prefactor is not None else ExactNumber.rational(1),
                   tuple((k, a, 1) for k, a in factors))

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        return GammaProduct(self.prefactor * other.prefactor, self.factors + other.factors)

    def inverse(self) -> "GammaProduct":
        return GammaProduct(self.prefactor.reciprocal(), tuple((k, a, -e) for k, a, e in self.factors))

    def __truediv__(self, other: "GammaProduct") -> "GammaProduct":
        return self * other.inverse()

    def evaluate(self) -> ExactNumber:
        out = self.prefactor
        for kind, arg, exp in self.factors:
            g = gamma_r(arg) if kind == "R" else gamma_c(arg)
            out = out * g**exp
        return out


def canonicalize(p: GammaProduct) -> GammaProduct:
    """Rewrite every Gamma_C(s) as Gamma_R(s) Gamma_R(s+1)."""
    out: list[tuple[Kind, int, int]] = []
    for kind, arg, exp in p.factors:
        if kind == "C":
            out.append(("R", arg, exp))
            out.append(("R", arg + 1, exp))
        else:
            out.append((kind, arg, exp))
    return GammaProduct(p.prefactor, tuple(out))


def gamma_product(factors: Iterable[tuple[Kind, int]]) -> GammaProduct:
    return GammaProduct.of(*factors)
