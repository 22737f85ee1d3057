"""
Ideal-theoretic criterion for candidate elements x of L.

Phi(Nr_{L/K}(x)) fails to generate a p-th power ideal of L exactly when some
prime q dividing Nr_{L/Q}(x) splits completely in L and the valuation
vector (beta_1, ..., beta_{p-1}) of Nr_{L/K}(x) at the primes above q has
chi = e^(p-2) beta_1 + e^(p-3) beta_{p-1} + ... + beta_2 prime to p.

Ideals are never built: for a completely split q every prime of K above q
has residue degree one, so its valuation is read off q-adically at a
Hensel-lifted root of Phi_p.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, replace

from sympy import ZZ, Rational, factorint, isprime, multiplicity, primerange
from sympy.ntheory import nthroot_mod, primitive_root
from sympy.polys.galoistools import gf_eval

from ..exceptions import (
    CyclotowerError,
    FactorizationIncomplete,
    InsufficientPrimes,
    NonIntegralInput,
    NoRoots,
    WrongPrimeClass,
)
from ..logging import add_context, get_logger
from .cyclotomic import X, CycNum, cyclotomic_polynomial
from .models import (
    ChiReport,
    CriterionVerdict,
    NormFactorization,
    NotPthPower,
    PrimeClass,
    PrimeVerdict,
    ProbablyPthPower,
    PthPowerTestResult,
    SubfieldTag,
    Tower,
    Variant,
)
from .phinorm import chi_vector, compute_b, norm_K_over_Q, norm_L_over_K
from .tower import k_coordinates, require

logger = get_logger(__name__)

_COUNT_WORDS = {1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six"}


# Norm factorization


def factor_norm(n: Rational, bound: int | None = None) -> NormFactorization:
    """Factor a nonzero rational into signed prime powers.

    Args:
        n: The rational to factor
        bound: Effort limit passed to the integer factorizer; None for a complete run

    Raises:
        FactorizationIncomplete: a composite residual survived the effort budget
    """
    n = Rational(n)
    if n == 0:
        raise ValueError("Cannot factor zero")
    sign = -1 if n < 0 else 1
    exponents: dict[int, int] = {}
    for part, direction in ((abs(int(n.p)), 1), (int(n.q), -1)):
        if part == 1:
            continue
        for q, l in factorint(part, limit=bound).items():
            q = int(q)
            if not isprime(q):
                raise FactorizationIncomplete(part, q, bound)
            exponents[q] = exponents.get(q, 0) + direction * int(l)
    return NormFactorization(
        sign=sign,
        factors=tuple(sorted((q, l) for q, l in exponents.items() if l)),
    )


# Prime classification


def classify_prime(t: Tower, q: int) -> PrimeClass:
    """Splitting type of q in L, a function of q mod p and q mod r."""
    if q == t.p:
        return PrimeClass.RAMIFIED_P
    if q == t.r:
        return PrimeClass.RAMIFIED_R
    if q % t.p != 1:
        return PrimeClass.NOT_SPLIT_IN_K
    if pow(q, (t.r - 1) // t.p, t.r) != 1:
        return PrimeClass.SPLIT_K_NOT_F
    return PrimeClass.SPLIT_COMPLETELY_L


def split_density(t: Tower, bound: int) -> tuple[int, int]:
    """(completely split primes, all primes) below bound."""
    primes = list(primerange(2, bound))
    split = sum(1 for q in primes if classify_prime(t, q) is PrimeClass.SPLIT_COMPLETELY_L)
    return split, len(primes)


def split_roots(t: Tower, q: int, start: int | None = None) -> tuple[int, ...]:
    """Roots of Phi_p mod q ordered along tau: a_{j+1} = a_j^(e^-1) mod q.

    The root a_j stands for the prime (q, zeta_p - a_j) of K; tau maps the
    prime of a_j to the prime of a_j^(e^-1). a_1 is the smallest root unless
    start picks another one.
    """
    if q == t.p or q % t.p != 1:
        raise NoRoots(t.p, q)
    roots = sorted(int(a) for a in nthroot_mod(1, t.p, q, all_roots=True) if a != 1)
    if len(roots) != t.p - 1:
        raise NoRoots(t.p, q)
    first = roots[0] if start is None else start
    if first not in roots:
        raise NoRoots(t.p, q)
    step = pow(t.tau_exponent, -1, t.p)
    ordered = [first]
    for _ in range(t.p - 2):
        ordered.append(pow(ordered[-1], step, q))
    if sorted(ordered) != roots:
        raise NoRoots(t.p, q)
    return tuple(ordered)


# Hensel lifting


def _phi_p_coefficients(p: int) -> tuple[list[int], list[int]]:
    f = cyclotomic_polynomial(p)
    return [int(c) for c in f.all_coeffs()], [int(c) for c in f.diff(X).all_coeffs()]


def hensel_lift(p: int, q: int, a: int, precision: int) -> int:
    """Newton-lift a root a of Phi_p mod q to a root mod q^precision."""
    f, df = _phi_p_coefficients(p)
    if gf_eval(f, a, q, ZZ) != 0:
        raise NoRoots(p, q)
    lifted, reached = a % q, 1
    while reached < precision:
        reached = min(2 * reached, precision)
        modulus = q**reached
        derivative = gf_eval(df, lifted, modulus, ZZ)
        lifted = (lifted - gf_eval(f, lifted, modulus, ZZ) * pow(derivative, -1, modulus)) % modulus
    return lifted


def _integer_k_coordinates(t: Tower, gamma: CycNum) -> list[int]:
    coords = k_coordinates(t, gamma)
    if any(c.q != 1 for c in coords):
        raise NonIntegralInput("gamma")
    return [int(c) for c in coords]


def hensel_valuation(t: Tower, gamma: CycNum, q: int, a: int) -> int:
    """Valuation of gamma at the prime (q, zeta_p - a) of K."""
    if gamma.is_zero():
        raise ValueError("gamma must be nonzero")
    if not gamma.is_integral():
        raise NonIntegralInput("gamma")
    coords = _integer_k_coordinates(t, gamma)
    total = multiplicity(q, abs(int(norm_K_over_Q(t, gamma))))
    start = total + 1
    precision = start
    g = list(reversed(coords))
    log = add_context(logger, p=t.p, r=t.r, q=q)
    while precision <= 4 * start:
        modulus = q**precision
        root = hensel_lift(t.p, q, a, precision)
        value = gf_eval(g, root, modulus, ZZ)
        if value != 0:
            return int(multiplicity(q, value))
        log.debug(f"Valuation saturated at precision {precision}, doubling")
        precision *= 2
    raise CyclotowerError(
        f"Hensel precision cap exceeded at q={q}",
        error_code="HENSEL_PRECISION",
        context={"q": q, "start": start},
    )


def chi_report(t: Tower, gamma: CycNum, q: int, start: int | None = None) -> ChiReport:
    """Valuations of gamma at the tau-ordered primes above q and the chi invariant."""
    prime_class = classify_prime(t, q)
    if prime_class is not PrimeClass.SPLIT_COMPLETELY_L:
        raise WrongPrimeClass(q, prime_class.value)
    if not gamma.is_integral():
        raise NonIntegralInput("gamma")
    roots = split_roots(t, q, start)
    betas = tuple(hensel_valuation(t, gamma, q, a) for a in roots)
    total = multiplicity(q, abs(int(norm_K_over_Q(t, gamma))))
    if sum(betas) != total:
        raise CyclotowerError(
            f"Valuations {betas} at q={q} do not add up to {total}",
            error_code="VALUATION_MASS",
            context={"q": q, "betas": list(betas), "total": int(total)},
        )
    chi = chi_vector(t, betas)[0]
    return ChiReport(q=q, roots=roots, betas=betas, chi=chi, chi_mod_p=chi % t.p)


# Verdict


def criterion_verdict(t: Tower, x: CycNum, factor_bound: int | None = None) -> CriterionVerdict:
    """Decide whether Phi(Nr_{L/K}(x)) generates a p-th power ideal of L."""
    if not x.is_integral():
        raise NonIntegralInput("x")
    require(t, x, SubfieldTag.L, "criterion_verdict")
    if x.is_zero():
        raise ValueError("x must be nonzero")

    gamma = norm_L_over_K(t, x)
    factorization = factor_norm(norm_K_over_Q(t, gamma), factor_bound)
    log = add_context(logger, p=t.p, r=t.r)

    per_prime: list[PrimeVerdict] = []
    notes: list[str] = []
    holds = False
    for q, l in factorization.factors:
        prime_class = classify_prime(t, q)
        log.debug(f"q={q} (l={l}) classified {prime_class.value}")
        report = None
        if prime_class is PrimeClass.SPLIT_COMPLETELY_L:
            report = chi_report(t, gamma, q)
            notes.extend(_split_prime_notes(t, report, l))
            holds = holds or report.chi_mod_p != 0
        per_prime.append(PrimeVerdict(q=q, exponent=l, prime_class=prime_class, chi=report))

    if holds:
        notes.append(
            "Phi(Nr(x)) and Phi(zeta_p Nr(x)) are not p-th powers in L*; "
            "both the Heisenberg and the semidirect constructions apply"
        )
    else:
        notes.append(
            "ideal criterion fails: Phi(Nr(x)) generates a p-th power ideal, which is "
            "inconclusive for the elementwise p-th power status of b(x)"
        )
        notes.append(
            f"L != Q(zeta_{t.p * t.p}): if x does not induce an H_{t.p}^3-extension it "
            f"necessarily induces a C_{t.p * t.p} x| C_{t.p}-extension"
        )

    return CriterionVerdict(
        factorization=factorization,
        per_prime=per_prime,
        ideal_criterion_holds=holds,
        heisenberg_ok=holds,
        semidirect_ok=holds,
        notes=notes,
    )


def _split_prime_notes(t: Tower, report: ChiReport, l: int) -> list[str]:
    q, p = report.q, t.p
    notes = []
    nonzero = [b for b in report.betas if b]
    if report.chi_mod_p:
        notes.append(f"q={q} splits completely in L and chi={report.chi} is prime to {p}")
    if len(nonzero) == 1:
        divides = "divides" if l % p == 0 else "does not divide"
        notes.append(f"q={q}: I = P^{l} for a single prime P of K; {p} {divides} {l}")
    if all(b == 1 for b in report.betas):
        count = _COUNT_WORDS.get(p - 1, str(p - 1))
        notes.append(f"I = O_K {q}; x generates a product of {count} distinct primes of norm {q}")
    return notes


# Monte-Carlo p-th power test


def pth_power_mc_test(
    t: Tower,
    z: CycNum,
    trials: int = 40,
    seed: int = 0,
    cap: int = 10_000_000,
) -> PthPowerTestResult:
    """One-sided test that z is not a p-th power in Q(zeta_m).

    Reduces z at degree-one places q = 1 (mod m): a (q-1)/p-th power of the
    residue different from 1 certifies that z is not a p-th power.
    Zero residues are skipped and do not count as trials.
    """
    if z.is_zero():
        raise ValueError("z must be nonzero")
    if trials < 1:
        raise ValueError(f"trials must be positive: {trials}")

    m, p = t.m, t.p
    rng = random.Random(seed)
    denominator = z.denominator()
    ceiling = cap // m
    if ceiling < 1:
        raise InsufficientPrimes(trials, 0, cap)

    usable, draws, tried = 0, 0, set()
    max_draws = 500 * trials
    while usable < trials:
        draws += 1
        if draws > max_draws or len(tried) >= ceiling:
            raise InsufficientPrimes(trials, usable, cap)
        k = rng.randint(1, ceiling)
        if k in tried:
            continue
        tried.add(k)
        q = 1 + m * k
        if not isprime(q) or denominator % q == 0:
            continue
        root = pow(int(primitive_root(q)), (q - 1) // m, q)
        residue = z.residue(root, q)
        if residue == 0:
            continue
        usable += 1
        if pow(residue, (q - 1) // p, q) != 1:
            add_context(logger, p=t.p, r=t.r, q=q).info(f"Not a {p}-th power, witness after {usable} trials")
            return NotPthPower(witness_prime=q)
    return ProbablyPthPower(trials=usable)


def element_evidence(
    t: Tower,
    x: CycNum,
    verdict: CriterionVerdict,
    trials: int = 40,
    seed: int = 0,
    cap: int = 10_000_000,
) -> tuple[CriterionVerdict, dict[Variant, PthPowerTestResult]]:
    """Run the p-th power test on b(x) for both variants and fold certificates into the verdict."""
    results = {
        variant: pth_power_mc_test(t, compute_b(t, x, variant), trials, seed, cap)
        for variant in Variant
    }
    notes = list(verdict.notes)
    heisenberg_ok, semidirect_ok = verdict.heisenberg_ok, verdict.semidirect_ok
    for variant, result in results.items():
        if isinstance(result, NotPthPower):
            notes.append(
                f"b(x) for the {variant.value} construction is not a {t.p}-th power: "
                f"witness q={result.witness_prime}"
            )
            if variant is Variant.HEISENBERG:
                heisenberg_ok = True
            else:
                semidirect_ok = True
        else:
            notes.append(
                f"b(x) for the {variant.value} construction passed {result.trials} "
                f"{t.p}-th power samples"
            )
    if not verdict.ideal_criterion_holds and (heisenberg_ok or semidirect_ok):
        notes.append("constructions enabled by elementwise evidence, not by the ideal criterion")
    return replace(verdict, heisenberg_ok=heisenberg_ok, semidirect_ok=semidirect_ok, notes=notes), results


# Candidate search


@dataclass(frozen=True)
class CandidateBox:
    """Integer ranges for x = u * delta + v + w * zeta_p."""
    u: range
    v: range
    w: range

    @classmethod
    def symmetric(cls, bound: int) -> CandidateBox:
        span = range(-bound, bound + 1) if bound >= 0 else range(0)
        return cls(span, span, span)

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        for u in self.u:
            for v in self.v:
                for w in self.w:
                    yield u, v, w


@dataclass(frozen=True)
class Candidate:
    coords: tuple[int, int, int]
    x: CycNum
    verdict: CriterionVerdict


def candidate_element(t: Tower, u: int, v: int, w: int) -> CycNum:
    return t.delta * u + v + t.zeta_p() * w


def search_candidates(
    t: Tower,
    box: CandidateBox,
    limit: int = 100,
    factor_bound: int | None = None,
) -> list[Candidate]:
    """Scan the box lexicographically and keep the elements passing the criterion."""
    found: list[Candidate] = []
    log = add_context(logger, p=t.p, r=t.r, command="search")
    for u, v, w in box:
        if len(found) >= limit:
            break
        x = candidate_element(t, u, v, w)
        if x.is_zero():
            continue
        try:
            verdict = criterion_verdict(t, x, factor_bound)
        except FactorizationIncomplete as exc:
            log.warning(f"Skipping ({u}, {v}, {w}): {exc.detail}")
            continue
        if verdict.passes:
            log.debug(f"Candidate ({u}, {v}, {w}) passes")
            found.append(Candidate(coords=(u, v, w), x=x, verdict=verdict))
    return found
