"""
Relative norms and the twisting homomorphism Phi of the tower.

Phi(y) = y^(e^(p-2)) * tau(y)^(e^(p-3)) * ... * tau^(p-2)(y). With e = -1
(p = 3 only) the exponents are negative and Phi(y) = tau(y) / y.
"""

from __future__ import annotations

from collections.abc import Sequence

from sympy import Rational

from ..exceptions import NotInSubfield
from .cyclotomic import CycNum, apply_aut, product
from .models import SubfieldTag, Tower, Variant
from .tower import require


def norm_L_over_K(t: Tower, x: CycNum) -> CycNum:
    """Product of the p conjugates of x under sigma_bar."""
    require(t, x, SubfieldTag.L, "norm_L_over_K")
    result = product((apply_aut(t.sigma_bar**i, x) for i in range(t.p)), t.m)
    require(t, result, SubfieldTag.K, "norm_L_over_K result")
    return result


def norm_K_over_Q(t: Tower, gamma: CycNum) -> Rational:
    """Product of the p-1 conjugates of gamma under tau_bar."""
    require(t, gamma, SubfieldTag.K, "norm_K_over_Q")
    result = product((apply_aut(t.tau_bar**j, gamma) for j in range(t.p - 1)), t.m)
    if not result.is_rational():
        raise NotInSubfield("Q", "norm_K_over_Q result")
    return result.rational_value()


def norm_L_over_Q(t: Tower, x: CycNum, cross_check: bool = True) -> Rational:
    """Nr_{K/Q}(Nr_{L/K}(x)), optionally compared with the product of all p(p-1) conjugates."""
    value = norm_K_over_Q(t, norm_L_over_K(t, x))
    if cross_check:
        conjugates = (
            apply_aut(t.sigma_bar**i * t.tau_bar**j, x)
            for i in range(t.p)
            for j in range(t.p - 1)
        )
        full = product(conjugates, t.m)
        if not full.is_rational() or full.rational_value() != value:
            raise NotInSubfield("Q", "norm_L_over_Q cross-check")
    return value


def phi(t: Tower, y: CycNum) -> CycNum:
    """Phi_{L/F}(y); on elements of K this is Phi_{K/Q}."""
    p, e = t.p, t.e
    return product(
        (apply_aut(t.tau_bar**j, y) ** (e ** (p - 2 - j)) for j in range(p - 1)),
        t.m,
    )


def phi_of_zeta(t: Tower) -> CycNum:
    """Phi(zeta_p), which equals zeta_p^(-e^(p-2))."""
    return phi(t, t.zeta_p())


def beta(t: Tower, x: CycNum) -> CycNum:
    """x^(p-1) * sigma(x)^(p-2) * ... * sigma^(p-2)(x)."""
    require(t, x, SubfieldTag.L, "beta")
    return product(
        (apply_aut(t.sigma_bar**i, x) ** (t.p - 1 - i) for i in range(t.p - 1)),
        t.m,
    )


def compute_b(t: Tower, x: CycNum, variant: Variant) -> CycNum:
    """b(x) = Phi(Nr(x)) for the Heisenberg group, Phi(zeta_p Nr(x)) for the semidirect product."""
    gamma = norm_L_over_K(t, x)
    if variant is Variant.SEMIDIRECT:
        gamma = t.zeta_p() * gamma
    b = phi(t, gamma)
    require(t, b, SubfieldTag.K, "compute_b result")
    return b


def chi_vector(t: Tower, betas: Sequence[int]) -> list[int]:
    """chi_j = sum_k e^(p-2-k) * beta_{j-k}, indices cyclic in 1..p-1."""
    n = t.p - 1
    if len(betas) != n:
        raise ValueError(f"Expected {n} valuations, got {len(betas)}")
    return [
        sum(t.e ** (t.p - 2 - k) * betas[(j - k) % n] for k in range(n))
        for j in range(n)
    ]
