"""
The field tower Q in F, K in L inside Q(zeta_m), m = p * r.

F is the degree-p subfield of Q(zeta_r) generated by the Gaussian period
delta_p(r), K = Q(zeta_p) and L = FK. Automorphisms of Q(zeta_m) are
residues mod m; by CRT a residue is the pair (action on zeta_p, action on
zeta_r).
"""

from __future__ import annotations

from collections.abc import Sequence

from sympy import QQ, Matrix, Poly, Rational, isprime
from sympy.ntheory import is_primitive_root, primitive_root
from sympy.ntheory.modular import crt

from ..exceptions import (
    BadGenerator,
    CongruenceViolation,
    DegenerateConjugates,
    NotDivisible,
    NotInSubfield,
)
from ..logging import add_context, get_logger
from .cyclotomic import X, CycAut, CycNum, apply_aut, is_fixed_by
from .models import SubfieldTag, Tower

logger = get_logger(__name__)

# sigma_bar on zeta_r for the towers whose published polynomials depend on it
PINNED_SIGMA = {
    (3, 7): 2,
    (3, 19): 6,
    (3, 73): 24,
    (5, 11): 2,
}


def gaussian_period(r: int, k: int, m_r: int, conductor: int | None = None) -> CycNum:
    """delta_k(r) = sum of zeta_r^(m_r^(jk)) for j = 0 .. (r-1)/k - 1.

    The period lives in Q(zeta_conductor); conductor defaults to r and must be
    a multiple of r.
    """
    if k <= 0 or (r - 1) % k:
        raise NotDivisible(r, k)
    m = conductor or r
    if m % r:
        raise ValueError(f"Conductor {m} is not a multiple of {r}")
    step = m // r
    raw: list[int] = [0] * m
    for j in range((r - 1) // k):
        exponent = pow(m_r, j * k, r)
        raw[exponent * step % m] += 1
    return CycNum.reduce(m, raw)


def crt_residue(p: int, r: int, mod_p: int, mod_r: int) -> int:
    """The residue mod p*r congruent to mod_p (mod p) and mod_r (mod r)."""
    value, _ = crt([p, r], [mod_p % p, mod_r % r])
    return int(value)


def _is_quotient_generator(c: int, p: int, r: int) -> bool:
    # c generates (Z/r)* / <m_r^p> exactly when it lies outside that index-p subgroup
    return c % r != 0 and pow(c, (r - 1) // p, r) != 1


def _default_sigma(p: int, r: int) -> int:
    pinned = PINNED_SIGMA.get((p, r))
    if pinned is not None:
        if _is_quotient_generator(pinned, p, r):
            return pinned
        # Nr_{L/K} and Phi only depend on the group <sigma_bar>, so any generator will do
        logger.warning(f"Pinned c={pinned} does not generate for (p={p}, r={r}); using the smallest generator")
    return next(c for c in range(2, r) if _is_quotient_generator(c, p, r))


def build_tower(
    p: int,
    r: int,
    e: int | None = None,
    c: int | None = None,
    m_r: int | None = None,
) -> Tower:
    """Construct the tower for the prime pair (p, r).

    Args:
        p: Odd prime, the degree of F/Q
        r: Prime with r = 1 (mod p), the conductor of F
        e: Primitive root mod p used by Phi, or -1 (p = 3 only, builder mode)
        c: Action of sigma_bar on zeta_r; defaults to the published choice
        m_r: Primitive root mod r; defaults to the smallest one

    Returns:
        The populated Tower

    Raises:
        CongruenceViolation: p, r are not primes with r = 1 (mod p)
        BadGenerator: e, c or m_r do not generate what they must
    """
    if p < 3 or not isprime(p):
        raise CongruenceViolation(p, r, f"p={p} is not an odd prime")
    if not isprime(r):
        raise CongruenceViolation(p, r, f"r={r} is not prime")
    if r % p != 1:
        raise CongruenceViolation(p, r, f"r={r} is not 1 mod {p}")

    if m_r is None:
        m_r = int(primitive_root(r))
    elif m_r % r == 0 or not is_primitive_root(m_r % r, r):
        raise BadGenerator("m_r", m_r, f"not a primitive root mod {r}")

    if e is None:
        e = int(primitive_root(p))
    if e == -1:
        if p != 3:
            raise BadGenerator("e", e, "e = -1 generates (Z/p)* only for p = 3")
    elif e % p == 0 or not is_primitive_root(e % p, p):
        raise BadGenerator("e", e, f"not a primitive root mod {p}")

    if c is None:
        c = _default_sigma(p, r)
    elif not _is_quotient_generator(c, p, r):
        raise BadGenerator("c", c, f"does not generate (Z/{r})*/<m_r^{p}>")

    m = p * r
    sigma_bar = CycAut(m, crt_residue(p, r, 1, c))
    tau_exponent = e % p
    tau_bar = CycAut(m, crt_residue(p, r, tau_exponent, 1))
    delta = gaussian_period(r, p, m_r, conductor=m)

    if apply_aut(sigma_bar, delta) == delta:
        raise BadGenerator("c", c, "sigma_bar fixes the period")
    if apply_aut(tau_bar, delta) != delta:
        raise BadGenerator("e", e, "tau_bar moves the period")

    tower = Tower(
        p=p,
        r=r,
        e=e,
        m_r=m_r,
        c=c,
        delta=delta,
        sigma_bar=sigma_bar,
        tau_bar=tau_bar,
        tau_exponent=tau_exponent,
    )
    add_context(logger, p=p, r=r).info(
        f"Built tower m={m}, sigma_k={sigma_bar.exponent}, tau_k={tau_bar.exponent}"
    )
    return tower


def subgroup_generators(t: Tower, tag: SubfieldTag) -> tuple[CycAut, ...]:
    """Residues generating the subgroup of (Z/m)* that fixes the tagged subfield."""
    p, r, m = t.p, t.r, t.m
    g_p = int(primitive_root(p))
    h_r = pow(t.m_r, p, r)

    def aut(mod_p: int, mod_r: int) -> CycAut:
        return CycAut(m, crt_residue(p, r, mod_p, mod_r))

    if tag is SubfieldTag.Q:
        return aut(g_p, 1), aut(1, t.m_r)
    if tag is SubfieldTag.K:
        return (aut(1, t.m_r),)
    if tag is SubfieldTag.F:
        return aut(g_p, 1), aut(1, h_r)
    if tag is SubfieldTag.L:
        return (aut(1, h_r),)
    return ()


def membership(t: Tower, a: CycNum, tag: SubfieldTag) -> bool:
    return is_fixed_by(a, subgroup_generators(t, tag))


def require(t: Tower, a: CycNum, tag: SubfieldTag, operation: str) -> None:
    """Raise NotInSubfield unless a lies in the tagged subfield."""
    if not membership(t, a, tag):
        raise NotInSubfield(tag.value, operation)


def conjugate_polynomial(values: Sequence[CycNum], what: str) -> Poly:
    """prod(X - v) over the given conjugates, with rational coefficients asserted.

    Raises:
        DegenerateConjugates: two of the values coincide
        NotInSubfield: a coefficient is not rational
    """
    if len(set(values)) != len(values):
        raise DegenerateConjugates(what)
    m = values[0].conductor
    # ascending coefficients, each an element of Q(zeta_m)
    coeffs = [CycNum.one(m)]
    for v in values:
        shifted = [CycNum.zero(m), *coeffs]
        scaled = [-(v * c) for c in coeffs] + [CycNum.zero(m)]
        coeffs = [a + b for a, b in zip(shifted, scaled)]
    rational: list[Rational] = []
    for coeff in coeffs:
        if not coeff.is_rational():
            raise NotInSubfield("Q", f"coefficients of the polynomial of {what}")
        rational.append(coeff.rational_value())
    return Poly(list(reversed(rational)), X, domain=QQ)


def period_min_poly(t: Tower) -> Poly:
    """Minimal polynomial of delta over Q, the product over its p conjugates."""
    conjugates = [apply_aut(t.sigma_bar**i, t.delta) for i in range(t.p)]
    return conjugate_polynomial(conjugates, "delta")


def k_coordinates(t: Tower, gamma: CycNum) -> list[Rational]:
    """Coordinates of gamma in the basis 1, zeta_p, ..., zeta_p^(p-2) of K."""
    require(t, gamma, SubfieldTag.K, "k_coordinates")
    basis = [CycNum.zeta(t.m, t.r * j) for j in range(t.p - 1)]
    system = Matrix([[b.coeffs[i] for b in basis] for i in range(gamma.degree)])
    target = Matrix(gamma.coeffs)
    try:
        solution, _ = system.gauss_jordan_solve(target)
    except ValueError as exc:
        raise NotInSubfield("K", "k_coordinates") from exc
    return [Rational(v) for v in solution]
