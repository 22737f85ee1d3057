"""
Unit tests for relative norms and Phi.
"""

import random

import pytest

from src.cyclotower.domain.cyclotomic import CycNum
from src.cyclotower.domain.models import SubfieldTag, Variant
from src.cyclotower.domain.phinorm import (
    beta,
    chi_vector,
    compute_b,
    norm_K_over_Q,
    norm_L_over_K,
    norm_L_over_Q,
    phi,
    phi_of_zeta,
)
from src.cyclotower.domain.tower import build_tower, membership
from src.cyclotower.exceptions import NotInSubfield


@pytest.fixture(scope="module")
def tower_3_7():
    return build_tower(3, 7)


@pytest.fixture(scope="module")
def tower_3_19():
    return build_tower(3, 19)


def random_l_element(rng, t, bound=3):
    d, z = t.delta, t.zeta_p()
    return (
        rng.randint(-bound, bound) * d * d
        + rng.randint(-bound, bound) * d
        + rng.randint(-bound, bound) * z
        + rng.randint(-bound, bound) * z * d
        + rng.randint(-bound, bound)
    )


class TestNorms:
    """Test cases for the relative norms."""

    def test_delta_plus_zeta_has_norm_13(self, tower_3_7):
        t = tower_3_7
        assert norm_L_over_Q(t, t.delta + t.zeta_p()) == 13

    def test_gamma_for_norm_49(self, tower_3_19):
        t = tower_3_19
        x = t.delta + t.zeta_p() + 1
        gamma = norm_L_over_K(t, x)
        assert gamma == -7 * t.zeta_p()
        assert norm_K_over_Q(t, gamma) == 49

    def test_quintic_norm_991(self):
        t = build_tower(5, 11)
        assert norm_L_over_Q(t, t.delta - t.zeta_p()) == 991

    def test_norm_requires_l(self, tower_3_7):
        with pytest.raises(NotInSubfield):
            norm_L_over_K(tower_3_7, tower_3_7.zeta_r())

    def test_norm_is_multiplicative(self, tower_3_7):
        rng = random.Random(3)
        t = tower_3_7
        for _ in range(10):
            x, y = random_l_element(rng, t), random_l_element(rng, t)
            assert norm_L_over_Q(t, x * y) == norm_L_over_Q(t, x) * norm_L_over_Q(t, y)

    @pytest.mark.slow
    def test_norm_commutes_with_phi(self, tower_3_7):
        rng = random.Random(4)
        t = tower_3_7
        for _ in range(200):
            x = random_l_element(rng, t)
            if x.is_zero():
                continue
            assert norm_L_over_K(t, phi(t, x)) == phi(t, norm_L_over_K(t, x))


class TestPhi:
    """Test cases for Phi and b(x)."""

    def test_phi_of_gamma(self, tower_3_19):
        t = tower_3_19
        gamma = -7 * t.zeta_p()
        assert phi(t, gamma) == -343 * t.zeta_p()

    @pytest.mark.parametrize("p, r", [(3, 7), (5, 11)])
    def test_phi_of_zeta(self, p, r):
        t = build_tower(p, r)
        expected = CycNum.zeta(t.m, -r * t.e ** (p - 2))
        assert phi_of_zeta(t) == expected

    def test_builder_mode_phi_is_tau_over_identity(self):
        t = build_tower(3, 7, e=-1)
        y = t.delta + t.zeta_p()
        assert phi(t, y) == t.tau_bar(y) / y

    def test_semidirect_b_differs_by_phi_of_zeta(self, tower_3_7):
        t = tower_3_7
        x = t.delta + t.zeta_p()
        b_h = compute_b(t, x, Variant.HEISENBERG)
        b_s = compute_b(t, x, Variant.SEMIDIRECT)
        assert b_s == phi_of_zeta(t) * b_h
        assert membership(t, b_h, SubfieldTag.K)

    @pytest.mark.slow
    def test_phi_of_norm_for_period_minus_zeta(self):
        t = build_tower(3, 73)
        x = t.delta - t.zeta_p() + 1
        assert compute_b(t, x, Variant.HEISENBERG) == 21**3 * t.zeta_p()

    def test_beta_for_p_three(self, tower_3_7):
        t = tower_3_7
        x = t.delta + t.zeta_p()
        assert beta(t, x) == x * x * t.sigma_bar(x)


class TestTwistIdentities:
    """Seeded checks of how sigma and tau act on Phi."""

    @pytest.mark.slow
    @pytest.mark.parametrize("p, r, e", [(3, 7, 2), (3, 7, -1), (3, 19, 2), (5, 11, 2)])
    def test_sigma_twist(self, p, r, e):
        rng = random.Random(11)
        t = build_tower(p, r, e=e)
        checked = 0
        while checked < 20:
            x = random_l_element(rng, t)
            if x.is_zero():
                continue
            b = phi(t, beta(t, x))
            assert t.sigma_bar(b) / b == phi(t, norm_L_over_K(t, x)) / phi(t, x) ** p
            checked += 1

    @pytest.mark.slow
    @pytest.mark.parametrize("p, r, e", [(3, 7, 2), (3, 7, -1), (3, 19, 2), (5, 11, 2)])
    def test_tau_twist(self, p, r, e):
        rng = random.Random(12)
        t = build_tower(p, r, e=e)
        checked = 0
        while checked < 20:
            x = random_l_element(rng, t)
            if x.is_zero():
                continue
            y = phi(t, x)
            assert t.tau_bar(y) / y**e == x ** (1 - e ** (p - 1))
            checked += 1


class TestChiVector:
    """Test cases for chi_vector."""

    def test_single_valuation(self, tower_3_7):
        assert chi_vector(tower_3_7, [1, 0]) == [2, 1]

    def test_balanced_valuations(self, tower_3_7):
        assert chi_vector(tower_3_7, [1, 1]) == [3, 3]

    def test_shift_divides_by_e(self):
        t = build_tower(5, 11)
        chis = chi_vector(t, [1, 0, 2, 0])
        for j in range(3):
            assert (t.e * chis[j + 1] - chis[j]) % 5 == 0

    def test_wrong_length(self, tower_3_7):
        with pytest.raises(ValueError):
            chi_vector(tower_3_7, [1, 0, 0])
