from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from oracles import jacobi_delta

from normlift.assembly import (
    INF, AssemblySpec, HeckeData, ingest_hecke_tsv, local_integrals, local_l_values, parse_places, rhs_conjecture,
    s_independence_check, write_hecke_tsv)
from normlift.cyclotomic import CyclotomicNumber as C
from normlift.errors import ConvergenceError, DataError, DomainError
from normlift.exact import ExactNumber
from normlift.local_factors import SatakeSp

DATA = Path(__file__).resolve().parent.parent / "data"


def test_tau_file_matches_jacobi_oracle():
    tau = jacobi_delta(101)
    data = ingest_hecke_tsv(DATA / "tau.tsv")
    assert data.weight == 12
    assert data.eigenvalues[2] == -24 and data.eigenvalues[3] == 252
    for p, a in data.eigenvalues.items():
        assert a == tau[p]
    # Hecke multiplicativity at p^2 as an eigenform check
    for p in (2, 3, 5, 7):
        assert tau[p * p] == tau[p] ** 2 - p**11


def test_data_files_are_eigenforms():
    for name, weight in [("f20.tsv", 20), ("f22.tsv", 22)]:
        data = ingest_hecke_tsv(DATA / name)
        assert data.weight == weight
        assert data.eigenvalues[2] ** 2 < 4 * 2 ** (weight - 1)


def test_round_trip(tmp_path):
    data = HeckeData(12, {3: 252, 2: -24}, "Delta")
    write_hecke_tsv(data, tmp_path / "d.tsv")
    back = ingest_hecke_tsv(tmp_path / "d.tsv")
    assert back == data


@pytest.mark.parametrize("content,match", [
    ("", "header"),
    ("# weight=12 label=x\n", "no eigenvalues"),
    ("# weight=12 label=x\n2\t-24\n3 252\n", ":3:"),
    ("# weight=12 label=x\n4\t1\n", "not prime"),
    ("# weight=12 label=x\n2\t1.5\n", ":2:"),
    ("# weight=12 label=x\n2\t10000\n", "p=2"),
    ("# weight=12 label=x\n2\t1\n2\t1\n", "duplicate"),
])
def test_ingest_errors(tmp_path, content, match):
    f = tmp_path / "bad.tsv"
    f.write_text(content)
    with pytest.raises(DataError, match=match):
        ingest_hecke_tsv(f)


def test_missing_file():
    with pytest.raises(DataError):
        ingest_hecke_tsv(DATA / "does-not-exist.tsv")


def toy_spec(places, n=1):
    k = 10 if n == 1 else 11
    alpha = {2: Fraction(1, 6), 3: Fraction(1, 4), 5: Fraction(2, 5)}
    beta = {2: Fraction(1, 8), 3: Fraction(1, 3), 5: Fraction(1, 7)}
    return AssemblySpec(k, n, 1, places,
                        alpha={p: C.root_of_unity(a) for p, a in alpha.items()},
                        beta={p: SatakeSp.from_angles(b) for p, b in beta.items()})


def test_spec_requires_infinity():
    with pytest.raises(DomainError):
        toy_spec("2,3")


def test_parse_places():
    assert parse_places("inf,2, 3") == frozenset({INF, 2, 3})
    with pytest.raises(DomainError):
        parse_places("inf,4")


def test_local_values():
    spec = toy_spec("inf,2")
    local_l_values(spec, 2)
    with pytest.raises(DomainError):
        local_l_values(spec, 3)
    with pytest.raises(DataError):
        toy_spec("inf,7")


def test_local_integrals_structure():
    assert set(local_integrals(toy_spec("inf"))) == {INF}
    ints = local_integrals(toy_spec("inf,2"))
    assert isinstance(ints[INF], ExactNumber) and 2 in ints


def test_archimedean_ratio_is_the_gamma_correction():
    res = rhs_conjecture(toy_spec("inf"))
    # 2^-(r^2-r+2rn) [Gamma_R(2n+1) Gamma_R(2n+3)]^-1 with n = r = 1
    assert res.archimedean_ratio == ExactNumber.monomial(Fraction(2, 3), 0, 3)


@pytest.mark.parametrize("n", [0, 1])
def test_s_independence_toy(n):
    chk = s_independence_check(toy_spec("inf,2,3", n), "inf,2", "inf,2,3")
    assert chk.deviation <= 1e-8
    assert s_independence_check(toy_spec("inf,2", n), "inf,2", "inf,2").deviation == 0


def test_refuses_numeric_global_l_at_n_zero():
    with pytest.raises(DomainError, match="n = 0"):
        rhs_conjecture(toy_spec("inf", 0), numeric_global=True, euler_bound=50)


def test_real_data_assembly():
    f = ingest_hecke_tsv(DATA / "f20.tsv")
    g = ingest_hecke_tsv(DATA / "tau.tsv")
    spec = AssemblySpec(10, 1, 1, "inf,2,3", f, g)
    assert s_independence_check(spec, "inf", "inf,2,3").deviation < 1e-12
    res = rhs_conjecture(spec.with_places("inf"), numeric_global=True, euler_bound=97)
    assert res.global_value is not None and res.global_tail < 1e-2
    with pytest.raises(DataError):
        AssemblySpec(6, 1, 1, "inf,2", g, g)


def test_untempered_surfaces_convergence_error():
    spec = toy_spec("inf,2", 0)
    with mpmath.workdps(20):
        spec.beta = {2: SatakeSp((mpmath.mpc(2.5, 0),), tempered=False)}
        with pytest.raises(ConvergenceError):
            rhs_conjecture(spec)
