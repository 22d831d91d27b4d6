import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from normlift.cyclotomic import CyclotomicNumber as C
from normlift.errors import ConvergenceError, DomainError, PoleError
from normlift.local_factors import SatakeSp
from normlift.scalars import to_mpc
from oracles import hecke_oracle, lagrangian_subgroups, lattice_cells

from normlift.spherical import (
    Cocharacter, DeformedSatake, RootDatumC, SphericalFunction, cell_volume, degenerate_sigma_params,
    embedded_cocharacter, f_recursion_special_value, geometric_tail, spherical_value,
    trivial_params, truncated_local_integral)


# -- root datum ------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_root_datum_shape(m):
    d = RootDatumC(m)
    assert len(d.weyl) == 2**m * __import__("math").factorial(m)
    assert len(d.positive_roots) == m * m
    simple = [tuple(1 if j == i else -1 if j == i + 1 else 0 for j in range(m)) for i in range(m - 1)]
    simple.append(tuple(1 if j == m - 1 else 0 for j in range(m)))
    for a in simple:
        assert sum(r * x for r, x in zip(d.rho, a)) >= 1
    assert sorted(d.lengths)[-1] == m * m
    assert d.poincare(2) == sum(Fraction(1, 2**l) for l in d.lengths)


# -- spherical function ----------------------------------------------------

def random_unitary_params(m, rng, levels=(5, 7, 8, 9, 12)):
    return DeformedSatake(tuple(C.root_of_unity(Fraction(rng.randrange(1, n), n)) for n in rng.sample(levels, m)))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_value_at_identity(m):
    rng = random.Random(m)
    assert SphericalFunction(random_unitary_params(m, rng), 3)((0,) * m) == 1
    assert SphericalFunction(degenerate_sigma_params(0, 1, C.rational(-1), 3) if m == 2 else trivial_params(m, 5), 5)((0,) * m) == 1


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("q", [2, 3])
def test_trivial_representation(m, q):
    sf = SphericalFunction(trivial_params(m, q), q)
    for lam in itertools.combinations_with_replacement(range(6), m):
        assert sf(lam) == 1


def test_weyl_invariance_in_lambda_and_parameters():
    rng = random.Random(7)
    params = random_unitary_params(2, rng)
    sf = SphericalFunction(params, 3)
    u1, u2 = params.base
    swapped = SphericalFunction(DeformedSatake((1 / u2, u1)), 3)
    for lam in [(2, 1), (3, 0), (1, 1)]:
        v = sf(lam)
        assert sf((-lam[1], lam[0])) == v
        assert swapped(lam) == v


def test_weyl_invariance_floating():
    with mpmath.workdps(30):
        u = (mpmath.expjpi(mpmath.mpf(2) / 7), mpmath.expjpi(mpmath.mpf(2) / 11))
        a = SphericalFunction(DeformedSatake(u), 5)((2, 1))
        b = SphericalFunction(DeformedSatake((u[1], 1 / u[0])), 5)((1, -2))
        assert abs(a - b) < 1e-10


DEGENERATE_SETS = [
    (0, 1, C.rational(1)), (0, 1, C.rational(-1)), (0, 1, C.zeta(4)), (0, 1, C.root_of_unity(Fraction(1, 6))),
    (1, 1, C.rational(1)), (1, 1, C.rational(-1)), (1, 1, C.root_of_unity(Fraction(1, 3))),
    (0, 2, C.rational(1)), (0, 2, C.rational(-1)), (0, 2, C.zeta(8)),
]


@pytest.mark.parametrize("n,r,alpha", DEGENERATE_SETS)
def test_deformation_independence(n, r, alpha):
    m = 2 * n + 2 * r
    default = SphericalFunction(degenerate_sigma_params(n, r, alpha, 3), 3)
    other = SphericalFunction(degenerate_sigma_params(n, r, alpha, 3, exponents=[3 * j * j - 1 for j in range(1, m + 1)]), 3)
    for lam in itertools.combinations_with_replacement(range(4), m):
        lam = tuple(sorted(lam, reverse=True))
        assert default(lam) == other(lam)


def test_bad_deformation_is_a_pole():
    with pytest.raises(PoleError):
        SphericalFunction(degenerate_sigma_params(0, 1, C.rational(1), 3, exponents=(1, -1)), 3)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("angle", [Fraction(1, 5), Fraction(1, 8), Fraction(2, 7)])
def test_hecke_convolution_oracle_exact(p, angle):
    u = C.root_of_unity(angle)
    assert SphericalFunction(DeformedSatake((u,)), p)((1,)) == hecke_oracle(u, p)


def test_hecke_convolution_oracle_floating():
    with mpmath.workdps(30):
        u = mpmath.expjpi(mpmath.mpf(2) / 9)
        value = SphericalFunction(DeformedSatake((u,)), 3)((1,))
        assert abs(value - hecke_oracle(u, 3)) < 1e-10


def test_half_parameter_formula_for_sl2():
    # with u = b^2: q^-1 (c(b) b^2 + c(1/b) b^-2) / (1 + q^-1), c(b) = (1 - q^-1 b^-2) / (1 - b^-2)
    q, b = 3, C.root_of_unity(Fraction(1, 10))
    c = lambda x: (1 - Fraction(1, q) * x**-2) / (1 - x**-2)
    expected = Fraction(1, q) * (c(b) * b**2 + c(1 / b) * b**-2) / (1 + Fraction(1, q))
    assert spherical_value(1, DeformedSatake((b * b,)), (1,), q) == expected


def test_tempered_values_bounded_by_trivial_limit():
    rng = random.Random(11)
    for _ in range(50):
        angle = Fraction(rng.randrange(1, 60), 60)
        sf = SphericalFunction(DeformedSatake((C.root_of_unity(angle),)), 3)
        ref = SphericalFunction(DeformedSatake((C.rational(1),)), 3)
        for lam in range(11):
            assert abs(sf((lam,))) <= abs(ref((lam,))) + 1e-12


def test_float_and_exact_agree_on_degenerate_parameters():
    exact = SphericalFunction(degenerate_sigma_params(1, 1, C.root_of_unity(Fraction(1, 5)), 2), 2)
    with mpmath.workdps(40):
        fl = SphericalFunction(degenerate_sigma_params(1, 1, mpmath.expjpi(mpmath.mpf(2) / 5), 2), 2)
        for lam in [(0, 0, 0, 0), (1, 0, 0, 0), (3, 0, 0, 0)]:
            assert abs(to_mpc(exact(lam)) - fl(lam)) < 1e-25


def test_lambda_length_checked():
    with pytest.raises(DomainError):
        SphericalFunction(trivial_params(2, 3), 3)((1,))


# -- parameters and cocharacters -------------------------------------------

def test_degenerate_parameters():
    a = C.zeta(6)
    s3 = C.sqrt_prime(3)
    assert degenerate_sigma_params(0, 1, a, 3).base == (a * s3, a / s3)
    p = degenerate_sigma_params(1, 1, a, 3)
    assert p.base == (a * 3 * s3, a * s3, a / s3, a / (3 * s3))
    assert p.exponents == (1, 2, 3, 4)
    assert p.in_general_position(3)
    assert not DeformedSatake(p.base, (1, 1, 1, 1)).in_general_position(3)


def test_embedded_cocharacter():
    assert embedded_cocharacter(0, 1, (2,)) == Cocharacter((2, 0))
    assert embedded_cocharacter(1, 1, (3,)) == Cocharacter((3, 0, 0, 0))
    assert embedded_cocharacter(1, 1, (0,)) == Cocharacter((0, 0, 0, 0))
    assert Cocharacter((-1, 3)).dominant() == Cocharacter((3, 1))


# -- volumes ---------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("c", [1, 2])
def test_cell_volume_against_lattice_enumeration(p, c):
    count = len(lattice_cells(p, c))
    assert count == p ** (2 * c) + p ** (2 * c - 1)
    assert cell_volume(1, (c,), p) == count * (1 - Fraction(1, p * p))


def test_cell_volume_values():
    assert cell_volume(1, (0,), 5) == Fraction(24, 25)
    assert cell_volume(1, (1,), 2) == Fraction(9, 2)
    assert cell_volume(1, (2,), 2) == 18
    with pytest.raises(DomainError):
        cell_volume(2, (0, 1), 2)


def test_sp4_cell_counts_against_lagrangian_enumeration():
    p = 2
    counts = {}
    for H in lagrangian_subgroups(p):
        killed = sum(1 for h in H if all((p * c) % (p * p) == 0 for c in h))
        lam = {p**4: (0, 0), p**3: (1, 0), p**2: (1, 1)}[killed]
        counts[lam] = counts.get(lam, 0) + 1
    vol_k = f_recursion_special_value(2, p)
    for lam, count in counts.items():
        assert cell_volume(2, lam, p) == count * vol_k
    assert counts == {(0, 0): 1, (1, 0): 30, (1, 1): 120}


def test_f_recursion_special_value():
    assert f_recursion_special_value(1, 2) == Fraction(3, 4)
    assert f_recursion_special_value(2, 2) == Fraction(3, 4) * Fraction(15, 16)


# -- local integral --------------------------------------------------------

def test_truncation_zero_is_vol_k():
    li = truncated_local_integral(0, 1, C.zeta(6), SatakeSp.from_angles(Fraction(1, 8)), 3, 0)
    assert li.exact == Fraction(8, 9)


def test_untempered_input_does_not_converge():
    with mpmath.workdps(20):
        beta = SatakeSp((mpmath.mpc(3, 0),), tempered=False)
        with pytest.raises(ConvergenceError, match="tempered"):
            truncated_local_integral(0, 1, C.zeta(6), beta, 3, 30)


def test_rank_two_not_implemented():
    with pytest.raises(NotImplementedError, match="v1"):
        truncated_local_integral(0, 2, C.zeta(6), SatakeSp.from_angles(Fraction(1, 8), Fraction(1, 5)), 3, 4)


def test_geometric_tail():
    ratio, tail = geometric_tail([0.5**k for k in range(30)])
    assert ratio == pytest.approx(0.5)
    assert tail == pytest.approx(0.5**29 / 0.5)
    assert geometric_tail([1.0] * 5 + [2.0] * 10)[1] == float("inf")


def test_terms_decay_at_least_like_inverse_sqrt_q():
    for p in (2, 3, 5):
        li = truncated_local_integral(0, 1, C.zeta(6), SatakeSp.from_angles(Fraction(1, 8)), p, 60)
        assert li.ratio <= p**-0.5 * 1.05
