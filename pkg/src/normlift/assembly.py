"""Hecke data ingestion and assembly of the S-truncated right-hand side of the norm formula."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

import mpmath

from .archimedean import ArchimedeanParams, closed_form_I_infinity, script_l_prime_infinity
from .bookkeeping import constant_C
from .cyclotomic import is_prime
from .errors import DataError, DomainError
from .exact import ExactNumber, float_value
from .local_factors import SatakeGL2, SatakeSp, satake_from_ap, satake_sp2_from_ap, script_l_p
from .scalars import to_mpc
from .spherical import LocalIntegral, truncated_local_integral

INF = "inf"
_HEADER = re.compile(r"^#\s*weight=(\d+)\s+label=(.*)$")


@dataclass(frozen=True)
class HeckeData:
    weight: int
    eigenvalues: Mapping[int, int]
    label: str = ""

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise DataError(f"weight must be an even integer >= 2, got {self.weight}")
        object.__setattr__(self, "eigenvalues", dict(sorted(self.eigenvalues.items())))
        for p, a in self.eigenvalues.items():
            if not is_prime(p):
                raise DataError(f"{p} is not prime")
            try:
                satake_from_ap(a, self.weight, p)
            except DomainError as exc:
                raise DataError(f"prime {p}: {exc}") from None


def ingest_hecke_tsv(path: str | Path) -> HeckeData:
    """Parse '# weight=<w> label=<text>' followed by '<prime>\\t<integer>' lines."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    weight, label, values = None, "", {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                if weight is not None:
                    raise DataError(f"{path}:{lineno}: duplicate header")
                weight, label = int(m.group(1)), m.group(2).strip()
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not re.fullmatch(r"\d+", parts[0]) or not re.fullmatch(r"-?\d+", parts[1]):
            raise DataError(f"{path}:{lineno}: expected '<prime>\\t<integer>', got {raw!r}")
        p, a = int(parts[0]), int(parts[1])
        if not is_prime(p):
            raise DataError(f"{path}:{lineno}: {p} is not prime")
        if p in values:
            raise DataError(f"{path}:{lineno}: duplicate entry for p={p}")
        values[p] = a
    if weight is None:
        raise DataError(f"{path}: missing '# weight=<w> label=<text>' header")
    if not values:
        raise DataError(f"{path}: no eigenvalues")
    return HeckeData(weight, values, label)


def write_hecke_tsv(data: HeckeData, path: str | Path) -> None:
    lines = [f"# weight={data.weight} label={data.label}"]
    lines += [f"{p}\t{a}" for p, a in data.eigenvalues.items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_place(v) -> str | int:
    if isinstance(v, str):
        v = v.strip().lower()
        if v in ("inf", "infinity", "oo"):
            return INF
        if not v.isdigit():
            raise DomainError(f"unknown place {v!r}")
        v = int(v)
    if not is_prime(int(v)):
        raise DomainError(f"{v} is not a prime")
    return int(v)


def parse_places(spec: str | Iterable) -> frozenset:
    items = spec.split(",") if isinstance(spec, str) else spec
    return frozenset(_parse_place(v) for v in items)


@dataclass
class AssemblySpec:
    """Parameters plus local data at every finite place of S.

    Local data comes either from Hecke eigenvalues (``hecke_f`` of weight 2k,
    ``hecke_g`` of weight k+n+1) or from explicit Satake parameters.
    """

    k: int
    n: int
    r: int
    places: frozenset
    hecke_f: HeckeData | None = None
    hecke_g: HeckeData | None = None
    alpha: Mapping[int, object] = field(default_factory=dict)
    beta: Mapping[int, SatakeSp] = field(default_factory=dict)
    truncation: int | None = None
    precision: int = 30

    def __post_init__(self):
        self.params = ArchimedeanParams(self.k, self.n, self.r)
        self.params.require_chain()
        self.places = parse_places(self.places)
        if INF not in self.places:
            raise DomainError("the place set S must contain inf")
        if self.hecke_f is not None and self.hecke_f.weight != 2 * self.k:
            raise DataError(f"f must have weight 2k = {2 * self.k}, got {self.hecke_f.weight}")
        if self.hecke_g is not None:
            if self.r != 1:
                raise NotImplementedError("Satake parameters of g from Hecke data are not implemented in v1 for r != 1")
            if self.hecke_g.weight != self.k + self.n + self.r:
                raise DataError(f"g must have weight k+n+r = {self.k + self.n + self.r}, got {self.hecke_g.weight}")
        for p in self.finite_places:
            self.satake(p)

    @property
    def finite_places(self) -> list[int]:
        return sorted(p for p in self.places if p != INF)

    def with_places(self, places) -> "AssemblySpec":
        return AssemblySpec(self.k, self.n, self.r, parse_places(places), self.hecke_f, self.hecke_g,
                            self.alpha, self.beta, self.truncation, self.precision)

    def satake(self, p: int) -> tuple[SatakeGL2, SatakeSp]:
        if p in self.alpha:
            a = self.alpha[p]
            a = a if isinstance(a, SatakeGL2) else SatakeGL2(a)
        elif self.hecke_f is not None and p in self.hecke_f.eigenvalues:
            with mpmath.workdps(self.precision):
                a = satake_from_ap(self.hecke_f.eigenvalues[p], self.hecke_f.weight, p)
        else:
            raise DataError(f"no eigenvalue of f at p={p}")
        if p in self.beta:
            b = self.beta[p]
        elif self.hecke_g is not None and p in self.hecke_g.eigenvalues:
            with mpmath.workdps(self.precision):
                b = satake_sp2_from_ap(self.hecke_g.eigenvalues[p], self.hecke_g.weight, p)
        else:
            raise DataError(f"no eigenvalue of g at p={p}")
        if b.rank != self.r:
            raise DomainError(f"beta at p={p} has rank {b.rank}, expected {self.r}")
        return a, b

    def truncation_for(self, p: int) -> int:
        if self.truncation is not None:
            return self.truncation
        return 60 if self.n == 0 else 40


def local_l_values(spec: AssemblySpec, p: int):
    if p not in spec.places or p == INF:
        raise DomainError(f"{p} is not a finite place of S = {sorted(map(str, spec.places))}")
    a, b = spec.satake(p)
    with mpmath.workdps(spec.precision):
        return script_l_p(spec.n, spec.r, a.alpha, b, p)


def local_integrals(spec: AssemblySpec) -> dict:
    """inf -> exact closed form; p -> truncated Cartan-cell sum."""
    out: dict = {INF: closed_form_I_infinity(spec.params)}
    with mpmath.workdps(spec.precision):
        for p in spec.finite_places:
            a, b = spec.satake(p)
            out[p] = truncated_local_integral(spec.n, spec.r, a.alpha, b, p, spec.truncation_for(p))
    return out


@dataclass
class AssemblyResult:
    places: list
    constant: Fraction
    numeric_part: mpmath.mpc
    archimedean_ratio: ExactNumber
    local_ratios: dict
    tails: dict
    global_factor: str = "L (carried symbolically)"
    global_value: mpmath.mpc | None = None
    global_tail: float | None = None

    def as_dict(self) -> dict:
        d = {
            "places": [str(v) for v in self.places],
            "constant": str(self.constant),
            "numeric_part": mpmath.nstr(to_mpc(self.numeric_part), 17),
            "archimedean_ratio": str(self.archimedean_ratio),
            "local_ratios": {str(p): mpmath.nstr(v, 17) for p, v in self.local_ratios.items()},
            "tails": {str(p): t for p, t in self.tails.items()},
            "global_factor": self.global_factor,
        }
        if self.global_value is not None:
            d["global_value"] = mpmath.nstr(self.global_value, 17)
            d["global_tail"] = self.global_tail
        return d


def rhs_conjecture(spec: AssemblySpec, numeric_global: bool = False, euler_bound: int | None = None) -> AssemblyResult:
    """C * prod_{v in S} I_v / L_v, times the global L (symbolic unless requested).

    At the real place L_v is the archimedean gamma quotient, so the ratio is exact.
    """
    if numeric_global and spec.n == 0:
        raise DomainError(
            "refusing to evaluate the global Euler product numerically for n = 0: "
            "the product over places outside S need not converge there")
    integrals = local_integrals(spec)
    arch = integrals[INF] / script_l_prime_infinity(spec.params)
    ratios, tails = {}, {}
    with mpmath.workdps(spec.precision):
        total = mpmath.mpc(float_value(arch, spec.precision)) * to_mpc(constant_C(spec.n))
        for p in spec.finite_places:
            li: LocalIntegral = integrals[p]
            ratios[p] = li.value / to_mpc(local_l_values(spec, p))
            tails[p] = li.tail
            total *= ratios[p]
        result = AssemblyResult(sorted(spec.places, key=lambda v: (v != INF, v if v != INF else 0)),
                                constant_C(spec.n), total, arch, ratios, tails)
        if numeric_global:
            result.global_value, result.global_tail = _partial_euler_product(spec, euler_bound)
            result.global_factor = f"L (partial Euler product over p <= {euler_bound})"
            result.numeric_part = total * result.global_value
    return result


def _partial_euler_product(spec: AssemblySpec, bound: int | None):
    if bound is None:
        raise DomainError("numeric global L needs an Euler product bound")
    primes = [p for p in range(2, bound + 1) if is_prime(p)]
    lp = mpmath.mpc(float_value(script_l_prime_infinity(spec.params), spec.precision))
    deviations = []
    for p in primes:
        local = spec.with_places([INF, p])
        v = to_mpc(local_l_values(local, p))
        lp *= v
        deviations.append(float(abs(v - 1)))
    # crude tail indicator: size of the last local corrections
    return lp, max(deviations[-5:]) if deviations else float("nan")


@dataclass(frozen=True)
class SIndependence:
    places_small: list
    places_large: list
    ratio: mpmath.mpc
    deviation: float
    holds: bool


def s_independence_check(spec: AssemblySpec, s1, s2, tol: float = 1e-6) -> SIndependence:
    """numeric_part(S2) / numeric_part(S1) should be 1: each extra I_p / L_p is 1."""
    s1, s2 = parse_places(s1), parse_places(s2)
    if not s1 <= s2:
        raise DomainError("S1 must be a subset of S2")
    small = rhs_conjecture(spec.with_places(s1))
    large = rhs_conjecture(spec.with_places(s2))
    with mpmath.workdps(spec.precision):
        ratio = large.numeric_part / small.numeric_part
        dev = float(abs(ratio - 1))
    return SIndependence(small.places, large.places, ratio, dev, dev <= tol)
