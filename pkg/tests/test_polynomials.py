import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mathieu_refute.errors import DegreeCapError
from mathieu_refute.polynomials import (
    PolynomialCoeffs,
    bernoulli_number,
    bernoulli_poly,
    euler_at_zero,
    euler_poly,
    zeta_even,
)

GRID = [Fraction(i, 4) for i in range(-8, 9)]


def test_bernoulli_trivial_values():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(3) == 0


def test_bernoulli_10():
    assert bernoulli_number(10) == Fraction(5, 66)


def test_bernoulli_matches_independent_algorithm(bernoulli_oracle):
    for n, b in enumerate(bernoulli_oracle):
        assert bernoulli_number(n) == b


def test_bernoulli_poly_low_degrees():
    assert bernoulli_poly(0).coeffs == (1,)
    assert bernoulli_poly(1).coeffs == (Fraction(-1, 2), 1)
    assert bernoulli_poly(2).coeffs == (Fraction(1, 6), -1, 1)


def test_euler_poly_low_degrees():
    assert euler_poly(0).coeffs == (1,)
    assert euler_poly(1).coeffs == (Fraction(-1, 2), 1)


@pytest.mark.parametrize("n", [2, 5, 9, 14])
def test_euler_poly_against_sympy(n):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.euler(n, x), x).all_coeffs()[::-1]
    assert [Fraction(int(c.p), int(c.q)) for c in ref] == list(euler_poly(n).coeffs)


def test_euler_nine_at_zero():
    assert euler_at_zero(9) == Fraction(-31, 2)
    assert euler_poly(9)(0) == Fraction(-31, 2)
    # E_{2p-1}(0) = -(2^{2p} - 1) B_{2p} / p at p = 5
    assert euler_at_zero(9) == -(2**10 - 1) * bernoulli_number(10) / 5


def test_euler_even_index_vanishes_at_zero():
    assert euler_at_zero(0) == 1
    for n in range(2, 30, 2):
        assert euler_at_zero(n) == 0


def test_euler_at_zero_is_constant_coefficient():
    for n in range(21):
        assert euler_at_zero(n) == euler_poly(n).coeffs[0]


@pytest.mark.parametrize("n", range(21))
def test_bernoulli_difference_identity(n):
    b = bernoulli_poly(n)
    for x in GRID:
        assert b(x + 1) - b(x) == (n * x ** (n - 1) if n else 0)


@pytest.mark.parametrize("n", range(21))
def test_euler_sum_identity(n):
    e = euler_poly(n)
    for x in GRID:
        assert e(x + 1) + e(x) == 2 * x**n


def test_leading_coefficients_are_one():
    for n in range(25):
        assert bernoulli_poly(n).coeffs[-1] == 1
        assert euler_poly(n).coeffs[-1] == 1
        assert euler_poly(n).degree == n


def test_bernoulli_even_sign_alternates():
    for p in range(1, 13):
        assert (bernoulli_number(2 * p) > 0) == (p % 2 == 1)


def test_degree_cap():
    bernoulli_number(64)
    with pytest.raises(DegreeCapError, match="degree cap"):
        bernoulli_number(65)
    with pytest.raises(DegreeCapError):
        euler_poly(64)
    with pytest.raises(DegreeCapError):
        euler_at_zero(64)


def test_zeta_even_known_values():
    assert zeta_even(1) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert zeta_even(2) == pytest.approx(math.pi**4 / 90, rel=1e-15)


@pytest.mark.parametrize("p", range(2, 9))
def test_zeta_even_against_partial_sums(p):
    brute = math.fsum(k ** (-2.0 * p) for k in range(1, 100_001))
    assert abs(zeta_even(p) - brute) < 1e-12


def test_zeta_even_decreasing_above_one():
    values = [zeta_even(p) for p in range(1, 33)]
    assert all(v >= 1 for v in values)
    # zeta(2p) - 1 ~ 4^-p drops below double resolution after p = 26
    assert all(a > b for a, b in zip(values[:26], values[1:26]))
    assert all(a >= b for a, b in zip(values, values[1:]))


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 20), num=st.integers(-50, 50), den=st.integers(1, 13))
def test_identities_at_random_rationals(n, num, den):
    x = Fraction(num, den)
    assert euler_poly(n)(x + 1) + euler_poly(n)(x) == 2 * x**n
    assert bernoulli_poly(n)(x + 1) - bernoulli_poly(n)(x) == (n * x ** (n - 1) if n else 0)


def test_float_evaluation():
    p = PolynomialCoeffs((Fraction(1, 6), -1, 1))
    assert p(0.5) == pytest.approx(-1 / 12)
    assert p.as_strings() == ["1/6", "-1/1", "1/1"]
