"""
Frobenius cycle types of a rational polynomial.

The factor degrees of f modulo an unramified prime q give the cycle type of
Frobenius on the roots. H_27 has exponent 3, so only parts 1 and 3 occur;
C_9 x| C_3 has elements of order 9 and shows the pattern {9} with positive
density.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable

from sympy import ZZ, Poly, Rational, isprime, nextprime
from sympy.ntheory import n_order
from sympy.polys.galoistools import gf_ddf_zassenhaus, gf_degree, gf_monic, gf_sqf_p, gf_strip

from ..exceptions import BadPrime, DegeneratePolynomial
from ..logging import get_logger
from .cyclotomic import X, cyclotomic_polynomial
from .models import FingerprintVerdict, Group, GroupFingerprint, Support

logger = get_logger(__name__)

# Clean samples needed before H_27 counts as supported, whatever min_clean says
SUPPORT_FLOOR = 50

# (q, p): Phi_q is factored modulo p
SELF_TEST_PAIRS = (
    (7, 2), (7, 3), (11, 2), (11, 3), (13, 2),
    (13, 5), (17, 2), (19, 7), (23, 2), (31, 5),
)


def _reduce(f: Poly, q: int) -> list[int]:
    coeffs = []
    for c in f.all_coeffs():
        c = Rational(c)
        if c.q % q == 0:
            raise BadPrime(q)
        coeffs.append(int(c.p) * pow(int(c.q), -1, q) % q)
    return gf_strip(coeffs)


def factor_degrees_mod_q(f: Poly, q: int) -> tuple[int, ...] | None:
    """Sorted irreducible-factor degrees of f mod q; None when f mod q is not squarefree.

    Raises:
        BadPrime: q divides a coefficient denominator
    """
    g = _reduce(f, q)
    if gf_degree(g) != f.degree():
        return None
    _, g = gf_monic(g, q, ZZ)
    if not gf_sqf_p(g, q, ZZ):
        return None
    degrees: list[int] = []
    for factor, d in gf_ddf_zassenhaus(g, q, ZZ):
        degrees.extend([d] * (gf_degree(factor) // d))
    return tuple(sorted(degrees))


def _verdict(patterns: Counter[tuple[int, ...]], sampled: int, min_clean: int) -> FingerprintVerdict:
    if any(9 in pattern for pattern in patterns):
        return FingerprintVerdict.CONTAINS_ORDER_9_FROBENIUS
    clean = all(set(pattern) <= {1, 3} for pattern in patterns)
    if clean and sampled >= min_clean:
        return FingerprintVerdict.CONSISTENT_WITH_EXPONENT_3
    return FingerprintVerdict.INCONCLUSIVE


def survey(f: Poly, budget: int, start: int = 3, min_clean: int = 50) -> GroupFingerprint:
    """Collect factor-degree patterns of f over the first budget usable primes from start."""
    if f.degree() < 1:
        raise DegeneratePolynomial("constant polynomial")
    if f.gcd(f.diff(X)).degree() > 0:
        raise DegeneratePolynomial("polynomial has repeated roots")

    patterns: Counter[tuple[int, ...]] = Counter()
    sampled = skipped = 0
    q = start if isprime(start) else int(nextprime(start))
    while sampled < budget:
        try:
            pattern = factor_degrees_mod_q(f, q)
        except BadPrime:
            pattern = None
        if pattern is None:
            skipped += 1
        else:
            patterns[pattern] += 1
            sampled += 1
        q = int(nextprime(q))

    verdict = _verdict(patterns, sampled, min_clean)
    logger.info(f"Fingerprint over {sampled} primes ({skipped} skipped): {verdict.value}")
    return GroupFingerprint(
        sampled_primes=sampled,
        patterns=dict(patterns),
        skipped=skipped,
        verdict=verdict,
        degree=f.degree(),
    )


def discriminate(fp: GroupFingerprint, claimed: Group) -> Support:
    """How the observed cycle types bear on the claimed Galois group."""
    if claimed is Group.H27:
        if fp.verdict is FingerprintVerdict.CONTAINS_ORDER_9_FROBENIUS:
            return Support.REFUTED
        clean = fp.verdict is FingerprintVerdict.CONSISTENT_WITH_EXPONENT_3
        if clean and fp.sampled_primes >= SUPPORT_FLOOR:
            return Support.SUPPORTED
        return Support.INCONCLUSIVE
    if fp.verdict is FingerprintVerdict.CONTAINS_ORDER_9_FROBENIUS:
        return Support.SUPPORTED
    return Support.INCONCLUSIVE


def pattern_frequency(fp: GroupFingerprint, pattern: Iterable[int]) -> Rational:
    if not fp.sampled_primes:
        return Rational(0)
    return Rational(fp.patterns.get(tuple(sorted(pattern)), 0), fp.sampled_primes)


def self_test_cyclotomic(
    pairs: Iterable[tuple[int, int]] = SELF_TEST_PAIRS,
) -> list[tuple[int, int, tuple[int, ...] | None, tuple[int, ...]]]:
    """Factor Phi_q mod p and compare with (q-1)/ord_q(p) factors of degree ord_q(p).

    Returns (q, p, observed, expected) for every pair.
    """
    results = []
    for q, p in pairs:
        order = int(n_order(p, q))
        expected = tuple([order] * ((q - 1) // order))
        observed = factor_degrees_mod_q(cyclotomic_polynomial(q), p)
        results.append((q, p, observed, expected))
    return results
