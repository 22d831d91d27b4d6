from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from normlift.errors import DomainError
from normlift.exact import ExactNumber, HalfInt, bernoulli, float_value, zeta_even

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
halves = st.integers(-8, 8).map(lambda t: Fraction(t, 2))


@st.composite
def exact_numbers(draw):
    x = ExactNumber.rational(0)
    for _ in range(draw(st.integers(1, 3))):
        x = x + ExactNumber.monomial(draw(rationals), draw(halves), draw(halves))
    return x


def approx(x: ExactNumber):
    return float_value(x, 25)


@pytest.mark.parametrize("n", range(2, 41, 2))
def test_bernoulli_matches_mpmath(n):
    assert mpmath.mpf(bernoulli(n).numerator) / bernoulli(n).denominator == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-14)


@pytest.mark.parametrize("n", range(2, 31, 2))
def test_zeta_even_matches_dirichlet_series(n):
    with mpmath.workdps(30):
        assert abs(float_value(zeta_even(n), 30) - mpmath.zeta(n)) < mpmath.mpf(10) ** -25


def test_known_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert zeta_even(2) == ExactNumber.monomial(Fraction(1, 6), 0, 2)
    assert zeta_even(4) == ExactNumber.monomial(Fraction(1, 90), 0, 4)


@pytest.mark.parametrize("bad", [0, 1, 3, -2])
def test_bernoulli_rejects(bad):
    with pytest.raises(DomainError):
        bernoulli(bad)


def test_canonical_folding():
    assert ExactNumber.monomial(1, 3, 0) == ExactNumber.rational(8)
    assert ExactNumber.monomial(1, Fraction(3, 2), 0) == ExactNumber.monomial(2, Fraction(1, 2), 0)
    assert ExactNumber.monomial(1, 2, 0) == ExactNumber.rational(4)
    assert str(ExactNumber.monomial(Fraction(4, 7), 0, 2)) == "4/7 * 2^(0/2) * pi^(4/2)"
    assert str(ExactNumber.monomial(3, Fraction(1, 2), -1)) == "3 * 2^(1/2) * pi^(-2/2)"


def test_half_int():
    assert HalfInt.of(Fraction(3, 2)).value == Fraction(3, 2)
    with pytest.raises(DomainError):
        HalfInt.of(Fraction(1, 3))


def test_reciprocal_of_sum_is_refused():
    with pytest.raises(DomainError):
        (ExactNumber.rational(1) + ExactNumber.monomial(1, 0, 2)).reciprocal()


@given(exact_numbers(), exact_numbers(), exact_numbers())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ExactNumber.rational(0)


@given(exact_numbers(), exact_numbers())
def test_float_value_is_a_homomorphism(a, b):
    with mpmath.workdps(30):
        assert abs(approx(a * b) - approx(a) * approx(b)) <= 1e-15 * (1 + abs(approx(a) * approx(b)))
        assert abs(approx(a + b) - approx(a) - approx(b)) <= 1e-15 * (1 + abs(approx(a)) + abs(approx(b)))


@given(rationals.filter(bool), halves, halves, st.integers(-4, 4))
def test_monomial_powers(c, a, b, e):
    m = ExactNumber.monomial(c, a, b)
    assert m**e * m ** (-e) == ExactNumber.rational(1)
    assert (m / m) == ExactNumber.rational(1)
