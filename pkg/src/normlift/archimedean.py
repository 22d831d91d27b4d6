"""Real-place quantities: lowest-weight matrix coefficients, their L^2 norms,
and the archimedean gamma-factor bookkeeping around them."""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field

import mpmath

from .errors import DomainError
from .exact import ExactNumber, product
from .gamma import delta_sp_infinity, gamma_c, gamma_r


@dataclass(frozen=True)
class ArchimedeanParams:
    k: int
    n: int
    r: int

    def __post_init__(self):
        if self.k < 1 or self.n < 0 or self.r < 0:
            raise DomainError(f"need k >= 1, n >= 0, r >= 0; got {self}")
        if self.n + self.r == 0:
            raise DomainError("need n + r > 0")
        if (self.k + self.n + self.r) % 2:
            raise DomainError(f"k + n + r must be even; got {self.k + self.n + self.r}")

    @property
    def weight(self) -> int:
        return self.k + self.n + self.r

    def require_chain(self) -> None:
        if self.r < 1:
            raise DomainError("the archimedean chain needs r >= 1")
        if self.n >= self.k:
            raise DomainError(f"the archimedean chain needs n < k; got n={self.n}, k={self.k}")


def admissible_grid(r_max: int = 4, n_max: int = 3, k_max: int = 12) -> list[ArchimedeanParams]:
    """All (k, n, r) with 1 <= r <= r_max, 0 <= n <= n_max, n < k <= k_max, k+n+r even."""
    return [ArchimedeanParams(k, n, r)
            for r in range(1, r_max + 1)
            for n in range(0, n_max + 1)
            for k in range(n + 1, k_max + 1)
            if (k + n + r) % 2 == 0]


@dataclass(frozen=True)
class Sp2RElement:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = max(1.0, abs(self.a * self.d), abs(self.b * self.c))
        if abs(det - 1) > 1e-9 * scale:
            raise DomainError(f"determinant {det} != 1")

    @classmethod
    def rotation(cls, theta: float) -> "Sp2RElement":
        return cls(math.cos(theta), math.sin(theta), -math.sin(theta), math.cos(theta))

    @classmethod
    def diag(cls, t: float) -> "Sp2RElement":
        return cls(t, 0.0, 0.0, 1 / t)

    @classmethod
    def kak(cls, theta1: float, t: float, theta2: float) -> "Sp2RElement":
        """k(theta1) diag(e^t, e^-t) k(theta2)."""
        return cls.rotation(theta1) @ cls.diag(math.exp(t)) @ cls.rotation(theta2)

    def __matmul__(self, o: "Sp2RElement") -> "Sp2RElement":
        return Sp2RElement(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                           self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)


def matrix_coefficient_infty(g: Sp2RElement, w: int) -> complex:
    """2^w / (a + d + i(c - b))^w."""
    if w < 1:
        raise DomainError("weight must be positive")
    return 2**w / complex(g.a + g.d, g.c - g.b) ** w


def closed_form_I_infinity(p: ArchimedeanParams) -> ExactNumber:
    """Norm of the restricted lowest-weight coefficient against the normalized Sp_2r(R) measure."""
    if p.r < 1:
        raise DomainError("closed_form_I_infinity needs r >= 1")
    k, n, r = p.k, p.n, p.r
    ratio = product(gamma_r(2 * k + 2 * n + i - 1) / gamma_r(2 * k + 2 * n + r + i)
                    for i in range(1, r + 1))
    return delta_sp_infinity(r).reciprocal() * ExactNumber.monomial(1, r * (r + 3) // 2, 0) * ratio


def coefficient_norm_squared_forms(d: int, w: int) -> tuple[ExactNumber, ExactNumber, ExactNumber]:
    """The squared norm of the degree-d weight-w coefficient, computed three ways.

    Gamma-function form, Gamma_R form with arguments 2w - (d +- m), and the
    shifted Gamma_R form. All three must agree.
    """
    if d < 1:
        raise DomainError("d must be positive")
    if w <= d:
        raise DomainError(f"the norm integral diverges unless w > d (got d={d}, w={w})")
    two = ExactNumber.monomial(1, d * (d + 3) // 2, 0)
    # Gamma(w - j/2) = pi^((2w-j)/2) Gamma_R(2w - j)
    first = two * ExactNumber.monomial(1, 0, d * (d + 1) // 2) * product(
        _gamma_half(2 * w - d - m) / _gamma_half(2 * w - d + m) for m in range(1, d + 1))
    second = two * product(gamma_r(2 * w - (d + m)) / gamma_r(2 * w - (d - m)) for m in range(1, d + 1))
    third = two * product(gamma_r(2 * w - 2 * d + m - 1) / gamma_r(2 * w - d + m) for m in range(1, d + 1))
    return first, second, third


def _gamma_half(j: int) -> ExactNumber:
    """Gamma(j/2) for a positive integer j."""
    return gamma_r(j) * ExactNumber.monomial(1, 0, Fraction(j, 2))


def coefficient_norm_squared(d: int, w: int) -> ExactNumber:
    return coefficient_norm_squared_forms(d, w)[2]


def l_infty_st_boxtimes(p: ArchimedeanParams, s: int | None = None) -> ExactNumber:
    """Gamma_C(s) prod_i Gamma_C(s+n-k+i) Gamma_C(s+n+k+i-1), by default at s = k + n."""
    k, n, r = p.k, p.n, p.r
    s = k + n if s is None else s
    args = [s] + [a for i in range(1, r + 1) for a in (s + n - k + i, s + n + k + i - 1)]
    bad = [a for a in args if a < 1]
    if bad:
        raise DomainError(f"Gamma_C evaluated at nonpositive argument(s) {bad}")
    return product(gamma_c(a) for a in args)


def l_infty_std(s: int) -> ExactNumber:
    return gamma_c(s)


def l_infty_adjoint(s: int, k: int) -> ExactNumber:
    return gamma_r(s + 1) * gamma_c(s + 2 * k - 1)


def script_l_prime_infinity(p: ArchimedeanParams) -> ExactNumber:
    k, n, r = p.k, p.n, p.r
    if r < 1:
        raise DomainError("script_l_prime_infinity needs r >= 1")
    deltas = delta_sp_infinity(2 * n + 2 * r) / (delta_sp_infinity(r) * delta_sp_infinity(2 * n + r))
    den = l_infty_std(k + n + r) * product(
        l_infty_adjoint(2 * n + 2 * i - 1, k) * gamma_r(2 * n + 2 * i) for i in range(1, r + 1))
    return deltas * l_infty_st_boxtimes(p) / den


def chain_correction(p: ArchimedeanParams) -> ExactNumber:
    """prod_i Gamma_R(2n+2i-1) Gamma_R(2n+2i+1)."""
    return product(gamma_r(2 * p.n + 2 * i - 1) * gamma_r(2 * p.n + 2 * i + 1) for i in range(1, p.r + 1))


@dataclass
class ChainReport:
    params: ArchimedeanParams
    lhs: ExactNumber
    rhs: ExactNumber
    holds: bool
    middle: dict[str, ExactNumber] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "k": self.params.k, "n": self.params.n, "r": self.params.r,
            "lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds,
            **({"middle": {key: str(v) for key, v in self.middle.items()}} if self.middle else {}),
        }


def check_archimedean_chain(p: ArchimedeanParams, verbose: bool = False) -> ChainReport:
    """Exact check of  L'_inf / prod Gamma_R(2n+2i-1)Gamma_R(2n+2i+1) == I_inf * 2^(r^2-r+2rn)."""
    p.require_chain()
    lhs = script_l_prime_infinity(p) / chain_correction(p)
    e = p.r * p.r - p.r + 2 * p.r * p.n
    rhs = closed_form_I_infinity(p) * ExactNumber.monomial(1, e, 0)
    middle = {}
    if verbose:
        middle = {
            "script_L_prime_infinity": script_l_prime_infinity(p),
            "L_st_boxtimes": l_infty_st_boxtimes(p),
            "I_infinity": closed_form_I_infinity(p),
            "gamma_correction": chain_correction(p),
        }
    return ChainReport(p, lhs, rhs, lhs == rhs, middle)


@dataclass(frozen=True)
class QuadratureResult:
    estimate: float
    error: float
    reliable: bool
    nodes: int
    cutoff: float


def numeric_integral_sp2(w: int, budget: int = 400, dps: int = 30) -> QuadratureResult:
    """Quadrature of the squared weight-w coefficient over Sp_2(R) in K A K coordinates.

    With g = k(t1) diag(e^t, e^-t) k(t2) the integrand is cosh(t)^(-2w) and the
    measure is 2 sinh(2t) dt dt1 dt2 / (2 pi), t1, t2 in [0, 2 pi). The angular
    integrals are exact; the radial one uses Gauss-Legendre on [0, T] with T
    chosen from the budget, plus an explicit tail bound.
    """
    if w < 2:
        raise DomainError("the norm integral needs w >= 2")
    if budget < 8:
        raise DomainError("sample budget must be at least 8")
    with mpmath.workdps(dps):
        decay = 2 * w - 2
        # tail on [T, inf) is at most 2 pi 4^w e^(-decay T) / decay; aim for 1e-12
        target = mpmath.mpf(10) ** -12
        T = (mpmath.log(2 * mpmath.pi * mpmath.mpf(4) ** w / (decay * target))) / decay
        T = max(T, mpmath.mpf(1))
        f = lambda t: 2 * mpmath.pi * 2 * mpmath.sinh(2 * t) / mpmath.cosh(t) ** (2 * w)
        degree = max(1, int(math.log2(budget / 3)))
        coarse = mpmath.quad(f, [0, T / 2, T], method="gauss-legendre", maxdegree=max(1, degree - 1))
        fine = mpmath.quad(f, [0, T / 2, T], method="gauss-legendre", maxdegree=degree)
        tail = 2 * mpmath.pi * mpmath.mpf(4) ** w * mpmath.exp(-decay * T) / decay
        err = abs(fine - coarse) + tail
        # a small budget cannot certify its own accuracy; widen accordingly
        if budget < 100:
            err = max(err, mpmath.mpf(10) ** -2 * abs(fine))
    reliable = w > 2 and budget >= 100
    return QuadratureResult(float(fine), float(err), reliable, budget, float(T))
