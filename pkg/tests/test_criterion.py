"""
Unit tests for the ideal criterion and its helpers.
"""

import random

import pytest
from sympy import Rational

from src.cyclotower.domain.criterion import (
    CandidateBox,
    candidate_element,
    chi_report,
    classify_prime,
    criterion_verdict,
    element_evidence,
    factor_norm,
    hensel_lift,
    hensel_valuation,
    pth_power_mc_test,
    search_candidates,
    split_density,
    split_roots,
)
from src.cyclotower.domain.models import NotPthPower, PrimeClass, ProbablyPthPower, Variant
from src.cyclotower.domain.phinorm import compute_b, norm_L_over_K
from src.cyclotower.domain.tower import build_tower
from src.cyclotower.exceptions import (
    FactorizationIncomplete,
    InsufficientPrimes,
    NonIntegralInput,
    NoRoots,
    WrongPrimeClass,
)


@pytest.fixture(scope="module")
def tower_3_7():
    return build_tower(3, 7)


@pytest.fixture(scope="module")
def tower_3_19():
    return build_tower(3, 19)


@pytest.fixture(scope="module")
def tower_5_11():
    return build_tower(5, 11)


class TestFactorNorm:
    """Test cases for factor_norm."""

    def test_prime(self):
        f = factor_norm(Rational(13))
        assert (f.sign, f.factors) == (1, ((13, 1),))

    def test_square(self):
        assert factor_norm(Rational(441)).factors == ((3, 2), (7, 2))

    def test_minus_one(self):
        f = factor_norm(Rational(-1))
        assert (f.sign, f.factors) == (-1, ())
        assert str(f) == "-1"

    def test_denominator_primes_get_negative_exponents(self):
        f = factor_norm(Rational(-12, 35))
        assert f.factors == ((2, 2), (3, 1), (5, -1), (7, -1))
        assert f.value() == Rational(-12, 35)
        assert f.exponent_of(5) == -1
        assert f.exponent_of(11) == 0

    def test_zero(self):
        with pytest.raises(ValueError):
            factor_norm(Rational(0))

    def test_composite_residual(self, monkeypatch):
        monkeypatch.setattr(
            "src.cyclotower.domain.criterion.factorint",
            lambda n, limit=None: {n: 1},
        )
        with pytest.raises(FactorizationIncomplete):
            factor_norm(Rational(15), bound=2)


class TestClassifyPrime:
    """Test cases for classify_prime."""

    @pytest.mark.parametrize(
        "q, expected",
        [
            (3, PrimeClass.RAMIFIED_P),
            (7, PrimeClass.RAMIFIED_R),
            (5, PrimeClass.NOT_SPLIT_IN_K),
            (19, PrimeClass.SPLIT_K_NOT_F),
            (13, PrimeClass.SPLIT_COMPLETELY_L),
        ],
    )
    def test_classes_over_3_7(self, tower_3_7, q, expected):
        assert classify_prime(tower_3_7, q) is expected

    def test_seven_splits_over_3_19(self, tower_3_19):
        assert classify_prime(tower_3_19, 7) is PrimeClass.SPLIT_COMPLETELY_L

    def test_991_splits_over_5_11(self, tower_5_11):
        assert classify_prime(tower_5_11, 991) is PrimeClass.SPLIT_COMPLETELY_L

    def test_depends_only_on_residues(self, tower_3_7):
        # 13 and 13 + 21 * 20 = 433 agree mod 3 and mod 7
        assert classify_prime(tower_3_7, 433) is classify_prime(tower_3_7, 13)

    def test_split_density(self, tower_3_7):
        split, total = split_density(tower_3_7, 20000)
        assert abs(split / total - 1 / 6) < 0.02


class TestSplitRoots:
    """Test cases for split_roots and Hensel lifting."""

    def test_tau_order_for_p_five(self, tower_5_11):
        assert split_roots(tower_5_11, 11) == (3, 5, 4, 9)

    def test_other_start(self, tower_5_11):
        assert split_roots(tower_5_11, 11, start=5) == (5, 4, 9, 3)

    def test_no_roots(self, tower_3_7):
        with pytest.raises(NoRoots):
            split_roots(tower_3_7, 5)

    def test_hensel_lift(self):
        assert hensel_lift(3, 13, 3, 2) == 146
        assert (146**2 + 146 + 1) % 169 == 0

    def test_hensel_lift_rejects_non_root(self):
        with pytest.raises(NoRoots):
            hensel_lift(3, 13, 4, 2)

    def test_valuation_of_q_itself(self, tower_3_7):
        t = tower_3_7
        gamma = 13 * (t.zeta_p() - 3)
        roots = split_roots(t, 13)
        valuations = {a: hensel_valuation(t, gamma, 13, a) for a in roots}
        assert valuations == {3: 2, 9: 1}

    def test_valuation_rejects_fractions(self, tower_3_7):
        t = tower_3_7
        with pytest.raises(NonIntegralInput):
            hensel_valuation(t, t.zeta_p() / 2, 13, 3)


class TestChiReport:
    """Test cases for chi_report."""

    def test_norm_13(self, tower_3_7):
        t = tower_3_7
        gamma = norm_L_over_K(t, t.delta + t.zeta_p())
        report = chi_report(t, gamma, 13)
        assert sum(report.betas) == 1
        assert report.chi_mod_p != 0
        assert report.roots[0] == 3

    def test_norm_49_is_balanced(self, tower_3_19):
        t = tower_3_19
        report = chi_report(t, -7 * t.zeta_p(), 7)
        assert report.betas == (1, 1)
        assert report.chi_mod_p == 0

    @pytest.mark.parametrize("x_coords", [(1, 0, 1), (1, 1, 1)])
    def test_start_root_does_not_change_vanishing(self, tower_3_7, tower_3_19, x_coords):
        for t in (tower_3_7, tower_3_19):
            gamma = norm_L_over_K(t, candidate_element(t, *x_coords))
            verdict = criterion_verdict(t, candidate_element(t, *x_coords))
            for pv in verdict.per_prime:
                if pv.chi is None:
                    continue
                for start in pv.chi.roots:
                    other = chi_report(t, gamma, pv.q, start=start)
                    assert (other.chi_mod_p == 0) == (pv.chi.chi_mod_p == 0)

    def test_wrong_class(self, tower_3_7):
        with pytest.raises(WrongPrimeClass):
            chi_report(tower_3_7, tower_3_7.zeta_p(), 19)


class TestCriterionVerdict:
    """Test cases for criterion_verdict."""

    def test_norm_13_passes(self, tower_3_7):
        t = tower_3_7
        verdict = criterion_verdict(t, t.delta + t.zeta_p())
        assert verdict.passes
        assert verdict.factorization.factors == ((13, 1),)
        assert verdict.per_prime[0].prime_class is PrimeClass.SPLIT_COMPLETELY_L
        assert verdict.heisenberg_ok and verdict.semidirect_ok

    def test_norm_49_fails(self, tower_3_19):
        t = tower_3_19
        verdict = criterion_verdict(t, t.delta + t.zeta_p() + 1)
        assert not verdict.ideal_criterion_holds
        assert not verdict.heisenberg_ok
        assert any("two distinct primes of norm 7" in note for note in verdict.notes)

    def test_quintic_passes(self, tower_5_11):
        t = tower_5_11
        verdict = criterion_verdict(t, t.delta - t.zeta_p())
        assert verdict.factorization.value() == 991
        assert verdict.per_prime[0].chi.chi_mod_p != 0
        assert verdict.passes

    def test_non_integral(self, tower_3_7):
        with pytest.raises(NonIntegralInput):
            criterion_verdict(tower_3_7, tower_3_7.delta / 2)

    def test_valuation_mass(self, tower_3_7):
        rng = random.Random(5)
        t = tower_3_7
        for _ in range(15):
            x = candidate_element(t, rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
            if x.is_zero():
                continue
            verdict = criterion_verdict(t, x)
            for pv in verdict.per_prime:
                if pv.chi is not None:
                    assert sum(pv.chi.betas) == pv.exponent


class TestPthPowerTest:
    """Test cases for the Monte-Carlo p-th power test."""

    def test_witness_for_norm_49(self, tower_3_19):
        t = tower_3_19
        x = t.delta + t.zeta_p() + 1
        for variant in Variant:
            result = pth_power_mc_test(t, compute_b(t, x, variant), trials=40, seed=1)
            assert isinstance(result, NotPthPower)
            assert result.witness_prime % t.m == 1

    def test_witness_for_21_cubed_zeta(self):
        t = build_tower(3, 73)
        result = pth_power_mc_test(t, 21**3 * t.zeta_p(), trials=40, seed=1)
        assert isinstance(result, NotPthPower)

    @pytest.mark.slow
    def test_cubes_are_never_refuted(self, tower_3_7):
        rng = random.Random(6)
        t = tower_3_7
        checked = 0
        while checked < 200:
            y = candidate_element(t, rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
            if y.is_zero():
                continue
            result = pth_power_mc_test(t, y**3, trials=5, seed=checked)
            assert isinstance(result, ProbablyPthPower)
            checked += 1

    @pytest.mark.slow
    def test_criterion_implies_no_pth_root(self, tower_3_7):
        t = tower_3_7
        found = search_candidates(t, CandidateBox.symmetric(2), limit=20)
        assert found
        for i, candidate in enumerate(found):
            assert candidate.verdict.ideal_criterion_holds
            for variant in Variant:
                result = pth_power_mc_test(t, compute_b(t, candidate.x, variant), trials=40, seed=i)
                assert isinstance(result, NotPthPower), (candidate.coords, variant)

    def test_prime_cap_exhausted(self, tower_3_7):
        cube = (1 + tower_3_7.zeta_p()) ** 3
        with pytest.raises(InsufficientPrimes):
            pth_power_mc_test(tower_3_7, cube, trials=5, cap=50)

    def test_zero(self, tower_3_7):
        with pytest.raises(ValueError):
            pth_power_mc_test(tower_3_7, tower_3_7.zeta_p() * 0)

    def test_deterministic(self, tower_3_19):
        t = tower_3_19
        z = compute_b(t, t.delta + t.zeta_p() + 1, Variant.HEISENBERG)
        assert pth_power_mc_test(t, z, seed=9) == pth_power_mc_test(t, z, seed=9)

    def test_element_evidence_enables_constructions(self, tower_3_19):
        t = tower_3_19
        x = t.delta + t.zeta_p() + 1
        verdict, results = element_evidence(t, x, criterion_verdict(t, x), trials=40, seed=1)
        assert verdict.heisenberg_ok and verdict.semidirect_ok
        assert not verdict.ideal_criterion_holds
        assert set(results) == set(Variant)
        assert any("elementwise" in note for note in verdict.notes)


class TestSearch:
    """Test cases for search_candidates."""

    def test_box_two_contains_delta_plus_zeta(self, tower_3_7):
        found = search_candidates(tower_3_7, CandidateBox.symmetric(2))
        assert any(c.coords == (1, 0, 1) for c in found)
        assert all(c.verdict.passes for c in found)

    def test_box_iteration_order(self):
        box = CandidateBox(range(2), range(1), range(-1, 1))
        assert list(box) == [(0, 0, -1), (0, 0, 0), (1, 0, -1), (1, 0, 0)]

    def test_box_zero_is_empty(self, tower_3_7):
        assert search_candidates(tower_3_7, CandidateBox.symmetric(0)) == []

    def test_limit(self, tower_3_7):
        assert len(search_candidates(tower_3_7, CandidateBox.symmetric(2), limit=2)) == 2

    @pytest.mark.slow
    def test_box_three_has_five_hits(self, tower_3_7):
        found = search_candidates(tower_3_7, CandidateBox.symmetric(3))
        assert len(found) >= 5
        for candidate in found:
            assert criterion_verdict(tower_3_7, candidate.x).passes
