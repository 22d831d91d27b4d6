"""Unramified local L-factors as rational functions of X = p^(-s).

Satake parameters are either exact roots of unity (:class:`CyclotomicNumber`)
or unit-modulus mpmath complex numbers. Half-integral substitution points use
the exact square root of p inside a cyclotomic field, so the exact backend
stays exact through ``s = n + 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .cyclotomic import CyclotomicNumber, is_prime
from .errors import DomainError, PoleError
from .scalars import conj, float_tolerance, is_exact, is_zero, prime_power


def _check_unitary(x, what: str) -> None:
    if is_exact(x):
        if isinstance(x, CyclotomicNumber):
            if not x * x.conjugate() == 1:
                raise DomainError(f"{what} is not of modulus one")
        elif abs(x) != 1:
            raise DomainError(f"{what} is not of modulus one")
    elif abs(abs(x) - 1) > float_tolerance():
        raise DomainError(f"{what} = {x} is not of modulus one")


@dataclass(frozen=True)
class SatakeGL2:
    """Unitary Satake parameter alpha of sigma = chi x chi^-1 (alpha = chi(p))."""

    alpha: object

    def __post_init__(self):
        _check_unitary(self.alpha, "alpha")

    @classmethod
    def from_angle(cls, angle) -> "SatakeGL2":
        return cls(CyclotomicNumber.root_of_unity(angle))

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha)


@dataclass(frozen=True)
class SatakeSp:
    """Satake parameters beta_1..beta_r of an unramified tempered rep of Sp_2r."""

    betas: tuple
    tempered: bool = True

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(self.betas))
        if self.tempered:
            for i, b in enumerate(self.betas):
                _check_unitary(b, f"beta_{i + 1}")

    @classmethod
    def from_angles(cls, *angles) -> "SatakeSp":
        return cls(tuple(CyclotomicNumber.root_of_unity(a) for a in angles))

    @property
    def rank(self) -> int:
        return len(self.betas)

    @property
    def exact(self) -> bool:
        return all(is_exact(b) for b in self.betas)


def _poly_mul(a: Sequence, b: Sequence) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def _poly_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class LocalFactor:
    """``numerator(X) / denominator(X)`` with both polynomials normalized to 1 at X = 0."""

    numerator: tuple
    denominator: tuple
    p: int | None = None

    @classmethod
    def euler(cls, inverse_roots: Sequence, p: int | None = None) -> "LocalFactor":
        """``prod_i (1 - gamma_i X)^-1``."""
        den: tuple = (Fraction(1),)
        for g in inverse_roots:
            den = _poly_mul(den, (Fraction(1), -g))
        return cls((Fraction(1),), den, p)

    def with_prime(self, p: int) -> "LocalFactor":
        return LocalFactor(self.numerator, self.denominator, p)

    def __mul__(self, other: "LocalFactor") -> "LocalFactor":
        return LocalFactor(_poly_mul(self.numerator, other.numerator),
                           _poly_mul(self.denominator, other.denominator),
                           self.p if self.p is not None else other.p)

    def __truediv__(self, other: "LocalFactor") -> "LocalFactor":
        return self * LocalFactor(other.denominator, other.numerator, other.p)

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.numerator + self.denominator)

    def conjugate(self) -> "LocalFactor":
        return LocalFactor(tuple(conj(c) for c in self.numerator),
                           tuple(conj(c) for c in self.denominator), self.p)

    def __call__(self, x):
        den = _poly_eval(self.denominator, x)
        if is_zero(den):
            raise PoleError(f"local factor has a pole at X = {x}")
        return _poly_eval(self.numerator, x) / den

    def at(self, s, p: int | None = None):
        """Value at X = p^(-s) for integral or half-integral s."""
        p = p if p is not None else self.p
        if p is None:
            raise DomainError("no prime attached to this local factor")
        twice = Fraction(s) * 2
        if twice.denominator != 1:
            raise DomainError(f"substitution point {s} is not a half-integer")
        x = prime_power(p, -int(twice), self.exact)
        return self(x)


def _scalar(x):
    return x.alpha if isinstance(x, SatakeGL2) else x


def l_std_gl2(alpha, p: int | None = None) -> LocalFactor:
    """L(s, sigma) = 1 / ((1 - alpha X)(1 - alpha^-1 X))."""
    a = _scalar(alpha)
    return LocalFactor.euler([a, Fraction(1) / a], p)


def l_adjoint_gl2(alpha, p: int | None = None) -> LocalFactor:
    """L(s, sigma, Ad) = zeta(s) L(s, chi^2) L(s, chi^-2)."""
    a = _scalar(alpha)
    return LocalFactor.euler([Fraction(1), a * a, Fraction(1) / (a * a)], p)


def l_rankin_sp_gl2(alpha, beta: SatakeSp, p: int | None = None) -> LocalFactor:
    """Degree 2(2r+1) factor of pi x sigma: {1, beta_i^+-1} tensor {alpha^+-1}."""
    a = _scalar(alpha)
    standard = [Fraction(1)]
    for b in beta.betas:
        standard += [b, Fraction(1) / b]
    roots = []
    for b in standard:
        roots += [a * b, b / a]
    return LocalFactor.euler(roots, p)


def zeta_p_factor(p: int | None = None) -> LocalFactor:
    return LocalFactor.euler([Fraction(1)], p)


def delta_sp_local(d: int, p: int) -> Fraction:
    """zeta_p(2) zeta_p(4) ... zeta_p(2d)."""
    if d < 0:
        raise DomainError("delta_sp_local needs d >= 0")
    out = Fraction(1)
    for i in range(1, d + 1):
        out /= 1 - Fraction(1, p ** (2 * i))
    return out


def delta_ratio_local(n: int, r: int, p: int) -> Fraction:
    return delta_sp_local(2 * n + 2 * r, p) / (delta_sp_local(r, p) * delta_sp_local(2 * n + r, p))


def script_l_p(n: int, r: int, alpha, beta: SatakeSp, p: int):
    """The local quantity attached to p: Delta ratio times the L-value quotient.

    Exact (cyclotomic) when both Satake inputs are exact, mpmath complex otherwise.
    """
    if n < 0 or r < 1:
        raise DomainError("script_l_p needs n >= 0 and r >= 1")
    if beta.rank != r:
        raise DomainError(f"beta has rank {beta.rank}, expected {r}")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    half = Fraction(1, 2)
    value = l_rankin_sp_gl2(alpha, beta, p).at(n + half)
    value = value / l_std_gl2(alpha, p).at(n + r + half)
    for i in range(1, r + 1):
        value = value / l_adjoint_gl2(alpha, p).at(2 * n + 2 * i - 1)
        value = value / zeta_p_factor(p).at(2 * n + 2 * i)
    return value * delta_ratio_local(n, r, p)


def satake_from_ap(a_p, weight: int, p: int) -> SatakeGL2:
    """Unitary alpha with alpha + alpha^-1 = a_p p^(-(weight-1)/2), Im alpha >= 0."""
    if weight < 2 or weight % 2:
        raise DomainError(f"weight must be an even integer >= 2, got {weight}")
    if isinstance(a_p, Fraction):
        a = mpmath.mpf(a_p.numerator) / a_p.denominator
    else:
        a = mpmath.mpf(a_p)
    bound = 2 * mpmath.power(p, mpmath.mpf(weight - 1) / 2)
    x = a / mpmath.power(p, mpmath.mpf(weight - 1) / 2)
    if abs(x) > 2 + float_tolerance():
        raise DomainError(
            f"Ramanujan bound violated at p={p}: |a_p| = {mpmath.nstr(abs(a), 8)} "
            f"> 2 p^((w-1)/2) = {mpmath.nstr(bound, 8)} for weight {weight}")
    x = max(min(x, mpmath.mpf(2)), mpmath.mpf(-2))
    return SatakeGL2(mpmath.mpc(x / 2, mpmath.sqrt(1 - x * x / 4)))


def satake_sp2_from_ap(a_p, weight: int, p: int) -> SatakeSp:
    """Satake parameter on Sp_2 = SL_2 of an elliptic eigenform of the given weight.

    Restricting the GL_2 parameters (gamma, gamma^-1) to the SL_2 torus gives
    beta = gamma^2, so the standard L-factor is the adjoint one of the form.
    """
    g = satake_from_ap(a_p, weight, p).alpha
    return SatakeSp((g * g,))
