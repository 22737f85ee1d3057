"""
Unit tests for the field tower.
"""

import pytest
from sympy import Rational

from src.cyclotower.domain.cyclotomic import CycNum, apply_aut
from src.cyclotower.domain.models import SubfieldTag
from src.cyclotower.domain.tower import (
    PINNED_SIGMA,
    _default_sigma,
    build_tower,
    conjugate_polynomial,
    crt_residue,
    gaussian_period,
    k_coordinates,
    membership,
    period_min_poly,
    subgroup_generators,
)
from src.cyclotower.exceptions import (
    BadGenerator,
    CongruenceViolation,
    DegenerateConjugates,
    NotDivisible,
    NotInSubfield,
)


@pytest.fixture
def tower_3_7():
    """The (3, 7) tower with the default generators."""
    return build_tower(3, 7)


class TestBuildTower:
    """Test cases for build_tower."""

    def test_generators_of_3_7(self, tower_3_7):
        t = tower_3_7
        assert (t.m, t.e, t.c, t.m_r) == (21, 2, 2, 3)
        assert t.sigma_bar.exponent == 16
        assert t.tau_bar.exponent == 8
        assert t.to_dict() == {
            "p": 3, "r": 7, "m": 21, "e": 2, "m_r": 3, "c": 2, "sigma_k": 16, "tau_k": 8,
        }

    def test_pinned_sigma(self):
        assert build_tower(3, 19).c == 6
        assert build_tower(5, 11).c == 2

    @pytest.mark.parametrize(
        "p, r",
        [pytest.param(*key, marks=pytest.mark.slow) if key[1] > 50 else key for key in PINNED_SIGMA],
    )
    def test_every_pinned_entry_builds(self, p, r):
        t = build_tower(p, r)
        assert apply_aut(t.sigma_bar, t.delta) != t.delta
        assert pow(t.c, (r - 1) // p, r) != 1

    def test_non_generating_pin_falls_back(self):
        assert PINNED_SIGMA[(3, 73)] == 24
        assert pow(24, 24, 73) == 1
        assert _default_sigma(3, 73) == 2

    def test_builder_mode(self):
        t = build_tower(3, 7, e=-1)
        assert t.builder_mode
        assert t.tau_bar.exponent == 8

    @pytest.mark.parametrize("p, r", [(3, 6), (3, 11), (4, 13), (2, 7)])
    def test_congruence_violation(self, p, r):
        with pytest.raises(CongruenceViolation):
            build_tower(p, r)

    def test_minus_one_only_for_three(self):
        with pytest.raises(BadGenerator):
            build_tower(5, 11, e=-1)

    def test_bad_tau_generator(self):
        with pytest.raises(BadGenerator):
            build_tower(3, 7, e=3)
        with pytest.raises(BadGenerator):
            build_tower(5, 11, e=4)

    def test_bad_sigma_generator(self):
        # 6^2 = 1 (mod 7), so 6 lies in the subgroup fixing F
        with pytest.raises(BadGenerator):
            build_tower(3, 7, c=6)

    def test_bad_primitive_root(self):
        with pytest.raises(BadGenerator):
            build_tower(3, 7, m_r=2)

    def test_sigma_moves_delta_to_delta_squared_minus_two(self, tower_3_7):
        t = tower_3_7
        assert apply_aut(t.sigma_bar, t.delta) == t.delta * t.delta - 2
        assert apply_aut(t.tau_bar, t.delta) == t.delta


class TestPeriods:
    """Test cases for Gaussian periods and their minimal polynomials."""

    def test_cubic_period_polynomial(self, tower_3_7):
        assert period_min_poly(tower_3_7).all_coeffs() == [1, 1, -2, -1]

    def test_quintic_period_polynomial(self):
        assert period_min_poly(build_tower(5, 11)).all_coeffs() == [1, 1, -4, -3, 3, 1]

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            gaussian_period(7, 4, 3)

    def test_crt_residue(self):
        assert crt_residue(3, 7, 1, 2) == 16
        assert crt_residue(3, 7, 2, 1) == 8


class TestMembership:
    """Test cases for subfield membership."""

    def test_delta_is_in_f(self, tower_3_7):
        t = tower_3_7
        assert membership(t, t.delta, SubfieldTag.F)
        assert membership(t, t.delta, SubfieldTag.L)
        assert not membership(t, t.delta, SubfieldTag.K)

    def test_zeta_p_is_in_k(self, tower_3_7):
        t = tower_3_7
        assert membership(t, t.zeta_p(), SubfieldTag.K)
        assert not membership(t, t.zeta_p(), SubfieldTag.F)

    def test_zeta_r_only_in_full(self, tower_3_7):
        t = tower_3_7
        assert not membership(t, t.zeta_r(), SubfieldTag.L)
        assert membership(t, t.zeta_r(), SubfieldTag.FULL)
        assert subgroup_generators(t, SubfieldTag.FULL) == ()

    def test_rationals_in_q(self, tower_3_7):
        assert membership(tower_3_7, CycNum.from_rational(21, 5), SubfieldTag.Q)


class TestConjugatePolynomial:
    """Test cases for conjugate_polynomial and k_coordinates."""

    def test_repeated_conjugates(self, tower_3_7):
        with pytest.raises(DegenerateConjugates):
            conjugate_polynomial([tower_3_7.delta, tower_3_7.delta], "delta")

    def test_irrational_coefficients(self, tower_3_7):
        with pytest.raises(NotInSubfield):
            conjugate_polynomial([tower_3_7.zeta_p()], "zeta_p")

    def test_k_coordinates(self, tower_3_7):
        t = tower_3_7
        assert k_coordinates(t, 3 * t.zeta_p() - 1) == [Rational(-1), Rational(3)]

    def test_k_coordinates_outside_k(self, tower_3_7):
        with pytest.raises(NotInSubfield):
            k_coordinates(tower_3_7, tower_3_7.delta)
