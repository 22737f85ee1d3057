"""
Unit tests for exact cyclotomic arithmetic.
"""

import random

import pytest
from sympy import Rational

from src.cyclotower.domain.cyclotomic import (
    CycAut,
    CycNum,
    apply_aut,
    cyclotomic_polynomial,
    full_norm,
    product,
    units,
)
from src.cyclotower.exceptions import BadGenerator, ConductorMismatch, CycDivisionByZero


def random_element(rng, m, bound=3):
    return CycNum.reduce(m, [rng.randint(-bound, bound) for _ in range(m)])


class TestCyclotomicPolynomial:
    """Test cases for cyclotomic_polynomial."""

    def test_prime_conductor(self):
        f = cyclotomic_polynomial(7)
        assert f.degree() == 6
        assert all(c == 1 for c in f.all_coeffs())

    def test_composite_conductor(self):
        assert cyclotomic_polynomial(21).degree() == 12

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)


class TestCycNum:
    """Test cases for CycNum arithmetic."""

    def test_zeta_has_order_m(self):
        z = CycNum.zeta(21)
        assert z**21 == CycNum.one(21)
        assert z**7 != CycNum.one(21)

    def test_cube_roots_of_unity_sum_to_zero(self):
        zeta_3 = CycNum.zeta(21, 7)
        assert (1 + zeta_3 + zeta_3 * zeta_3).is_zero()

    def test_coefficients_are_canonical(self):
        # zeta_3^2 = -1 - zeta_3 in the power basis
        zeta_3 = CycNum.zeta(3)
        assert (zeta_3 * zeta_3).coeffs == (Rational(-1), Rational(-1))

    def test_inverse(self):
        rng = random.Random(1)
        for _ in range(20):
            a = random_element(rng, 21)
            if a.is_zero():
                continue
            assert a * a.inv() == CycNum.one(21)
            assert a / a == CycNum.one(21)

    def test_negative_power(self):
        a = 2 + CycNum.zeta(7)
        assert a**-2 * a**2 == CycNum.one(7)

    def test_division_by_zero(self):
        with pytest.raises(CycDivisionByZero):
            CycNum.zero(7).inv()

    def test_conductor_mismatch(self):
        with pytest.raises(ConductorMismatch):
            CycNum.zeta(7) + CycNum.zeta(21)

    def test_rational_helpers(self):
        a = CycNum.from_rational(21, Rational(3, 4))
        assert a.is_rational()
        assert a.rational_value() == Rational(3, 4)
        assert not a.is_integral()
        assert a.denominator() == 4

    def test_rational_value_of_irrational(self):
        with pytest.raises(ValueError):
            CycNum.zeta(7).rational_value()

    def test_residue_matches_root_power(self):
        q, m = 29, 7
        root = pow(2, (q - 1) // m, q)
        assert CycNum.zeta(m, 3).residue(root, q) == pow(root, 3, q)
        assert CycNum.from_rational(m, Rational(1, 2)).residue(root, q) == pow(2, -1, q)


class TestCycAut:
    """Test cases for automorphisms."""

    def test_non_unit_rejected(self):
        with pytest.raises(BadGenerator):
            CycAut(21, 7)

    def test_exponent_normalized(self):
        assert CycAut(21, 23).exponent == 2
        assert CycAut(21, -1).exponent == 20

    def test_composition_and_order(self):
        s = CycAut(21, 2)
        assert (s * s).exponent == 4
        assert (s**6).exponent == 1
        assert s.order() == 6

    def test_is_ring_homomorphism(self):
        rng = random.Random(2)
        s = CycAut(21, 5)
        for _ in range(10):
            a, b = random_element(rng, 21), random_element(rng, 21)
            assert apply_aut(s, a * b) == apply_aut(s, a) * apply_aut(s, b)
            assert apply_aut(s, a + b) == apply_aut(s, a) + apply_aut(s, b)

    def test_fixes_rationals(self):
        assert CycAut(21, 2)(CycNum.from_rational(21, 5)) == CycNum.from_rational(21, 5)


class TestNorms:
    """Test cases for full_norm and product."""

    def test_norm_of_one_minus_zeta(self):
        assert full_norm(CycNum.zeta(7) - 1).rational_value() == 7

    def test_units(self):
        assert units(9) == [1, 2, 4, 5, 7, 8]

    def test_empty_product(self):
        assert product([], 21) == CycNum.one(21)
