"""
Domain models for cyclotower.

These models represent the field tower, the criterion results and the
builder outputs. They contain no I/O concerns; `to_dict` renders the plain
data consumed by the report layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from sympy import Poly, Rational

from .cyclotomic import CycAut, CycNum


class SubfieldTag(Enum):
    """Subfields of Q(zeta_m) appearing in the tower diagram."""
    Q = "Q"
    K = "K"
    F = "F"
    L = "L"
    FULL = "Full"


class Group(Enum):
    """The two non-abelian groups of order 27."""
    H27 = "h27"
    C9XC3 = "c9c3"


class Variant(Enum):
    """Which b(x) is formed: Phi(Nr(x)) or Phi(zeta_p Nr(x))."""
    HEISENBERG = "heisenberg"
    SEMIDIRECT = "semidirect"


class PrimeClass(Enum):
    """Splitting behaviour of a rational prime in the tower."""
    RAMIFIED_P = "ramified_p"
    RAMIFIED_R = "ramified_r"
    NOT_SPLIT_IN_K = "not_split_K"
    SPLIT_K_NOT_F = "split_K_not_F"
    SPLIT_COMPLETELY_L = "split_completely_L"


class FingerprintVerdict(Enum):
    CONSISTENT_WITH_EXPONENT_3 = "consistent_with_exponent_3"
    CONTAINS_ORDER_9_FROBENIUS = "contains_order_9_frobenius"
    INCONCLUSIVE = "inconclusive"


class Support(Enum):
    SUPPORTED = "supported"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Tower:
    """The fixed context Q in F, K in L inside Q(zeta_{pr})."""
    p: int
    r: int
    e: int
    m_r: int
    c: int
    delta: CycNum
    sigma_bar: CycAut
    tau_bar: CycAut
    # exponent of tau_bar on zeta_p: e itself, or -1 in builder mode
    tau_exponent: int

    @property
    def m(self) -> int:
        return self.p * self.r

    @property
    def builder_mode(self) -> bool:
        return self.e == -1

    def zeta_p(self) -> CycNum:
        return CycNum.zeta(self.m, self.r)

    def zeta_r(self) -> CycNum:
        return CycNum.zeta(self.m, self.p)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "r": self.r,
            "m": self.m,
            "e": self.e,
            "m_r": self.m_r,
            "c": self.c,
            "sigma_k": self.sigma_bar.exponent,
            "tau_k": self.tau_bar.exponent,
        }


@dataclass(frozen=True)
class NormFactorization:
    """sign * prod(q ** l) with distinct primes q and nonzero exponents l."""
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> Rational:
        result = Rational(self.sign)
        for q, l in self.factors:
            result *= Rational(q) ** l
        return result

    def exponent_of(self, q: int) -> int:
        return dict(self.factors).get(q, 0)

    def __str__(self) -> str:
        sign = "-" if self.sign < 0 else "+"
        if not self.factors:
            return f"{sign}1"
        parts = [f"{q}^{l}" for q, l in self.factors]
        return sign + "·".join(parts)


@dataclass(frozen=True)
class ChiReport:
    """Valuation vector of Nr_{L/K}(x) at the tau-ordered primes above q."""
    q: int
    roots: tuple[int, ...]
    betas: tuple[int, ...]
    chi: int
    chi_mod_p: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "a1": self.roots[0],
            "roots": list(self.roots),
            "betas": list(self.betas),
            "chi": self.chi,
            "chi_mod_p": self.chi_mod_p,
        }


@dataclass(frozen=True)
class PrimeVerdict:
    q: int
    exponent: int
    prime_class: PrimeClass
    chi: ChiReport | None = None

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "q": self.q,
            "l": self.exponent,
            "class": self.prime_class.value,
        }
        if self.chi:
            result.update(self.chi.to_dict())
        return result


@dataclass
class CriterionVerdict:
    """Outcome of the ideal-theoretic criterion for one candidate x."""
    factorization: NormFactorization
    per_prime: list[PrimeVerdict]
    ideal_criterion_holds: bool
    heisenberg_ok: bool
    semidirect_ok: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return self.ideal_criterion_holds


@dataclass(frozen=True)
class NotPthPower:
    witness_prime: int


@dataclass(frozen=True)
class ProbablyPthPower:
    trials: int


PthPowerTestResult = NotPthPower | ProbablyPthPower


@dataclass(frozen=True)
class ThetaCert:
    """A Kummer generator candidate: sigma(theta) = zeta_3 theta, theta^3 in K."""
    theta: CycNum
    a: CycNum
    ok: bool
    notes: tuple[str, ...] = ()


@dataclass
class GroupFingerprint:
    """Factor-degree statistics of a polynomial modulo sampled primes."""
    sampled_primes: int
    patterns: dict[tuple[int, ...], int]
    skipped: int
    verdict: FingerprintVerdict
    degree: int = 9

    def has_pattern(self, pattern: tuple[int, ...]) -> bool:
        return self.patterns.get(tuple(sorted(pattern)), 0) > 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "samples": self.sampled_primes,
            "skipped": self.skipped,
            "patterns": {
                ",".join(str(d) for d in pattern): count
                for pattern, count in sorted(self.patterns.items())
            },
            "verdict": self.verdict.value,
        }


@dataclass
class EPolyReport:
    """Everything produced by one run of the degree-9 polynomial builder."""
    group: Group
    x: CycNum
    omega: CycNum
    trace_cubic: Poly
    e_poly: Poly
    verdict: CriterionVerdict
    fingerprint: GroupFingerprint | None = None
    theta: ThetaCert | None = None
    evidence: list[str] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)
