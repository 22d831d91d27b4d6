"""Zonal spherical functions on Sp_2m(Q_p) and the Cartan-cell local integral.

Spherical functions come from Macdonald's formula

    phi(a_lam) = q^(-<rho, lam>) / W(q^-1) * sum_w c(w u) (w u)^lam,
    c(u) = prod_{a > 0} (1 - q^-1 u^(-a_vee)) / (1 - u^(-a_vee)),

with the product over positive roots of type C_m, evaluated on coroots.
Degenerate Satake parameters make individual Weyl terms singular. They are
deformed as ``u_j -> u_j t^(c_j)`` with ``t = exp(h)``; each term becomes a
Laurent series in h, and the value is the constant term of the sum once all
negative-order terms have cancelled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import mpmath
import numpy as np

from . import series
from .errors import ConvergenceError, DomainError, PoleError
from .local_factors import SatakeGL2, SatakeSp
from .scalars import conj, is_exact, is_zero, prime_power, to_mpc


class RootDatumC:
    """Root datum of Sp_2m: roots e_i +- e_j, 2 e_i, and the signed-permutation Weyl group."""

    def __init__(self, m: int):
        if m < 1:
            raise DomainError("rank must be positive")
        self.m = m
        roots, coroots = [], []
        for i in range(m):
            for j in range(i + 1, m):
                for s in (-1, 1):
                    v = [0] * m
                    v[i], v[j] = 1, s
                    roots.append(tuple(v))
                    coroots.append(tuple(v))
            v = [0] * m
            v[i] = 2
            roots.append(tuple(v))
            v[i] = 1
            coroots.append(tuple(v))
        self.positive_roots: tuple[tuple[int, ...], ...] = tuple(roots)
        self.positive_coroots: tuple[tuple[int, ...], ...] = tuple(coroots)
        self.rho: tuple[int, ...] = tuple(m - i for i in range(m))
        self.weyl: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = tuple(
            (perm, signs)
            for perm in itertools.permutations(range(m))
            for signs in itertools.product((1, -1), repeat=m)
        )
        self._root_action = tuple(self._act_on_roots(w) for w in self.weyl)
        self.lengths = tuple(sum(1 for _, s in act if s < 0) for act in self._root_action)

    def _act_on_roots(self, w) -> tuple[tuple[int, int], ...]:
        # (w u)^(-a) = u^(-s b_j): record (j, s) for every positive coroot a
        perm, signs = w
        index = {c: j for j, c in enumerate(self.positive_coroots)}
        out = []
        for a in self.positive_coroots:
            b = [0] * self.m
            for i in range(self.m):
                b[perm[i]] += signs[i] * a[i]
            b = tuple(b)
            if b in index:
                out.append((index[b], 1))
            else:
                out.append((index[tuple(-x for x in b)], -1))
        return tuple(out)

    def act_on_cocharacter(self, w, lam: Sequence[int]) -> tuple[int, ...]:
        perm, signs = w
        out = [0] * self.m
        for i in range(self.m):
            out[perm[i]] = signs[i] * lam[i]
        return tuple(out)

    def poincare(self, q: int, lam: Sequence[int] | None = None) -> Fraction:
        """sum of q^-l(w) over W, or over the stabilizer of lam."""
        total = Fraction(0)
        for w, length in zip(self.weyl, self.lengths):
            if lam is None or self.act_on_cocharacter(w, lam) == tuple(lam):
                total += Fraction(1, q**length)
        return total

    def __len__(self) -> int:
        return len(self.weyl)


@lru_cache(maxsize=8)
def root_datum(m: int) -> RootDatumC:
    return RootDatumC(m)


@dataclass(frozen=True)
class Cocharacter:
    lam: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))

    def dominant(self) -> "Cocharacter":
        return Cocharacter(tuple(sorted((abs(x) for x in self.lam), reverse=True)))

    def is_dominant(self) -> bool:
        return self.lam == self.dominant().lam


def dominant(lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((abs(int(x)) for x in lam), reverse=True))


@dataclass(frozen=True)
class DeformedSatake:
    """Base parameters u_1..u_m deformed as u_j t^(c_j); t = 1 recovers the base."""

    base: tuple
    exponents: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        exps = self.exponents
        if exps is None:
            exps = tuple(range(1, len(self.base) + 1))
        object.__setattr__(self, "exponents", tuple(int(c) for c in exps))
        if len(self.exponents) != len(self.base):
            raise DomainError("one deformation exponent per Satake parameter")

    @property
    def rank(self) -> int:
        return len(self.base)

    @property
    def exact(self) -> bool:
        return all(is_exact(u) for u in self.base)

    def in_general_position(self, q: int) -> bool:
        """No u^(b) in {1, q, q^-1} identically in t, for any coroot b."""
        datum = root_datum(self.rank)
        for b in datum.positive_coroots:
            if sum(ci * bi for ci, bi in zip(self.exponents, b)) != 0:
                continue
            val = _monomial(self.base, b)
            for target in (Fraction(1), Fraction(q), Fraction(1, q)):
                if is_zero(val - target):
                    return False
        return True


def _monomial(u: Sequence, b: Sequence[int]):
    out = Fraction(1)
    for ui, bi in zip(u, b):
        if bi:
            out = out * (ui if bi > 0 else Fraction(1) / ui) ** abs(bi)
    return out


class SphericalFunction:
    """Zonal spherical function of Sp_2m(Q_p) with (possibly degenerate) Satake parameters.

    The Weyl-sum coefficients are precomputed once; evaluation at a cocharacter
    then costs one monomial per coset of the cocharacter's support.
    """

    def __init__(self, params: DeformedSatake, q: int):
        self.params = params
        self.q = q
        self.m = params.rank
        self.datum = root_datum(self.m)
        self.exact = params.exact
        self._q_inv = Fraction(1, q)
        self._poincare = self.datum.poincare(q)
        self._build()
        self._groups: dict[int, dict] = {}
        self._powers: dict[tuple[int, int], object] = {}

    def _build(self) -> None:
        u, c, datum = self.params.base, self.params.exponents, self.datum
        factors = {}
        for j, b in enumerate(datum.positive_coroots):
            e = sum(ci * bi for ci, bi in zip(c, b))
            ub = _monomial(u, b)
            for s in (1, -1):
                y = Fraction(1) / ub if s > 0 else ub
                factors[(j, s)] = (y, -s * e)
        # valuations first, to learn how many series terms are needed
        shape = {}
        for key, (y, e) in factors.items():
            num = series.one_minus_exp(self._q_inv * y, e, 1)
            den = series.one_minus_exp(y, e, 1)
            if den is None:
                raise PoleError(
                    "deformation exponents are not in general position: "
                    f"coroot factor {key} is singular identically in t")
            shape[key] = None if num is None else num[0] - den[0]
        valuations = []
        for act in datum._root_action:
            if any(shape[k] is None for k in act):
                valuations.append(None)
            else:
                valuations.append(sum(shape[k] for k in act))
        self.pole_order = max([-v for v in valuations if v is not None] + [0])
        length = self.pole_order + 1
        ratio = {}
        for key, (y, e) in factors.items():
            if shape[key] is None:
                continue
            _, num = series.one_minus_exp(self._q_inv * y, e, length)
            _, den = series.one_minus_exp(y, e, length)
            ratio[key] = series.mul(num, series.inverse(den, length), length)
        terms = []
        for w, act, v in zip(datum.weyl, datum._root_action, valuations):
            if v is None or v > 0:
                continue
            need = -v + 1
            prod = ratio[act[0]][:need]
            for key in act[1:]:
                prod = series.mul(prod, ratio[key], need)
            # coefficient of h^(-k) is prod[-v - k]
            terms.append((w, [prod[-v - k] for k in range(need)]))
        self._terms = terms

    def _group(self, support: int) -> dict:
        if support not in self._groups:
            groups: dict = {}
            for (perm, signs), coeffs in self._terms:
                key = tuple((perm[i], signs[i]) for i in range(support))
                acc = groups.setdefault(key, [])
                for k, x in enumerate(coeffs):
                    if k < len(acc):
                        acc[k] = acc[k] + x
                    else:
                        acc.append(x)
            self._groups[support] = groups
        return self._groups[support]

    def _power(self, j: int, e: int):
        key = (j, e)
        if key not in self._powers:
            u = self.params.base[j]
            self._powers[key] = (u if e >= 0 else Fraction(1) / u) ** abs(e) if e else Fraction(1)
        return self._powers[key]

    def __call__(self, lam: Sequence[int] | Cocharacter):
        if isinstance(lam, Cocharacter):
            lam = lam.lam
        lam = dominant(lam)
        if len(lam) != self.m:
            raise DomainError(f"cocharacter of length {len(lam)} for rank {self.m}")
        support = sum(1 for x in lam if x)
        c = self.params.exponents
        total = 0
        residues = [0] * self.pole_order
        for key, coeffs in self._group(support).items():
            mono = Fraction(1)
            shift = 0
            for i, (j, s) in enumerate(key):
                mono = mono * self._power(j, s * lam[i])
                shift += lam[i] * s * c[j]
            weights = [Fraction(shift**k, factorial(k)) for k in range(len(coeffs))]
            total = total + mono * sum((coeffs[k] * weights[k] for k in range(len(coeffs))), 0)
            for order in range(1, len(coeffs)):
                residues[order - 1] = residues[order - 1] + mono * sum(
                    (coeffs[order + k] * weights[k] for k in range(len(coeffs) - order)), 0)
        scale = abs(to_mpc(total)) if not self.exact else 1
        for order, res in enumerate(residues, start=1):
            if not is_zero(res, scale):
                raise PoleError(f"uncancelled pole of order {order} at t = 1 for lambda = {lam}")
        rho_lam = sum(r * x for r, x in zip(self.datum.rho, lam))
        return total * (Fraction(1, self.q**rho_lam) / self._poincare)


def spherical_value(datum: RootDatumC | int, params: DeformedSatake, lam, q: int):
    """One-shot evaluation of the zonal spherical function at a cocharacter."""
    m = datum.m if isinstance(datum, RootDatumC) else int(datum)
    if params.rank != m:
        raise DomainError(f"{params.rank} Satake parameters for rank {m}")
    return SphericalFunction(params, q)(lam)


def trivial_params(m: int, q: int) -> DeformedSatake:
    """Satake parameters of the trivial representation, u = q^(-rho)."""
    return DeformedSatake(tuple(Fraction(1, q ** (m - i)) for i in range(m)))


def degenerate_sigma_params(n: int, r: int, alpha, p: int, exponents=None) -> DeformedSatake:
    """Parameters alpha q^((2n+2r+1-2j)/2), j = 1..2n+2r, of the unramified Sigma_p."""
    if n < 0 or r < 1:
        raise DomainError("need n >= 0 and r >= 1")
    a = alpha.alpha if isinstance(alpha, SatakeGL2) else alpha
    m = 2 * n + 2 * r
    base = tuple(a * prime_power(p, m + 1 - 2 * j, is_exact(a)) for j in range(1, m + 1))
    return DeformedSatake(base, exponents)


def embedded_cocharacter(n: int, r: int, c: Sequence[int]) -> Cocharacter:
    """Cocharacter of Sp_2r placed in the middle block of Sp_(4n+4r), made dominant."""
    if len(c) != r:
        raise DomainError(f"expected {r} coordinates, got {len(c)}")
    m = 2 * n + 2 * r
    lam = [0] * m
    lam[2 * n + r: 2 * n + 2 * r] = list(c)
    return Cocharacter(tuple(lam)).dominant()


def cell_volume(datum: RootDatumC | int, lam: Sequence[int] | Cocharacter, p: int) -> Fraction:
    """vol(K a_lam K) for the Haar measure giving K = Sp_2r(Z_p) volume prod (1 - p^-2i)."""
    datum = datum if isinstance(datum, RootDatumC) else root_datum(int(datum))
    lam = lam.lam if isinstance(lam, Cocharacter) else tuple(lam)
    if len(lam) != datum.m:
        raise DomainError(f"cocharacter of length {len(lam)} for rank {datum.m}")
    if lam != dominant(lam):
        raise DomainError(f"{lam} is not dominant")
    two_rho = 2 * sum(r * x for r, x in zip(datum.rho, lam))
    count = Fraction(p**two_rho) * datum.poincare(p) / datum.poincare(p, lam)
    return count * f_recursion_special_value(datum.m, p)


@dataclass(frozen=True)
class CartanCell:
    lam: Cocharacter
    volume: Fraction


def cartan_cell(datum: RootDatumC | int, lam, p: int) -> CartanCell:
    lam = lam if isinstance(lam, Cocharacter) else Cocharacter(tuple(lam))
    return CartanCell(lam, cell_volume(datum, lam, p))


def f_recursion_special_value(m: int, p: int) -> Fraction:
    """prod_{i=1}^m (1 - p^-2i), the inverse local Delta_Sp_2m (= vol of Sp_2m(Z_p))."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - Fraction(1, p ** (2 * i))
    return out


@dataclass
class LocalIntegral:
    value: mpmath.mpc
    exact: object | None
    tail: float
    ratio: float
    truncation: int
    term_magnitudes: list[float]


def geometric_tail(magnitudes: Sequence[float], window: int = 10) -> tuple[float, float]:
    """Fit a geometric ratio to the last ``window`` terms; tail = last / (1 - ratio)."""
    tail_terms = [m for m in magnitudes[-window:] if m > 0]
    if len(tail_terms) < 3:
        return float("nan"), float("inf")
    xs = np.arange(len(tail_terms), dtype=float)
    slope = np.polyfit(xs, np.log(tail_terms), 1)[0]
    ratio = float(np.exp(slope))
    if ratio >= 1:
        return ratio, float("inf")
    return ratio, tail_terms[-1] / (1 - ratio)


def truncated_local_integral(n: int, r: int, alpha, beta: SatakeSp, p: int, M: int) -> LocalIntegral:
    """sum_{c <= M} vol(K a_c K) Phi(c) conj(Psi(c)) over the Cartan cells of Sp_2(Q_p)."""
    if r != 1:
        raise NotImplementedError("truncated_local_integral is not implemented in v1 for r != 1")
    if beta.rank != r:
        raise DomainError(f"beta has rank {beta.rank}, expected {r}")
    if M < 0:
        raise DomainError("truncation radius must be nonnegative")
    phi = SphericalFunction(degenerate_sigma_params(n, r, alpha, p), p)
    psi = SphericalFunction(DeformedSatake(beta.betas), p)
    exact = phi.exact and psi.exact
    datum = root_datum(r)
    total = 0
    mags = []
    for c in range(M + 1):
        term = cell_volume(datum, (c,), p) * phi(embedded_cocharacter(n, r, (c,))) * conj(psi((c,)))
        total = total + term
        mags.append(float(abs(to_mpc(term))))
    ratio, tail = geometric_tail(mags)
    if ratio == ratio and ratio >= 1:
        raise ConvergenceError(
            f"local integral terms do not decay (fitted ratio {ratio:.4g} >= 1); "
            "the integral converges only for tempered pi_p, i.e. |beta| = 1")
    return LocalIntegral(to_mpc(total), total if exact else None, tail, ratio, M, mags)
