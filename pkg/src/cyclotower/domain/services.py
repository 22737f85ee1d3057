"""
Domain services for cyclotower.

These services hold the use cases behind the CLI commands, combining the
mathematical modules with the effort budgets and seed from the
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from sympy import Poly, Rational

from ..config import Config
from ..exceptions import CriterionNotSatisfied, UnsupportedPrime
from ..logging import add_context, get_logger
from .builder import build, default_theta, verify_theta
from .criterion import (
    Candidate,
    CandidateBox,
    criterion_verdict,
    element_evidence,
    search_candidates,
)
from .cyclotomic import CycNum
from .fingerprint import discriminate, self_test_cyclotomic, survey
from .models import (
    CriterionVerdict,
    EPolyReport,
    Group,
    GroupFingerprint,
    NotPthPower,
    PthPowerTestResult,
    Support,
    ThetaCert,
    Tower,
    Variant,
)
from .phinorm import norm_L_over_K, norm_L_over_Q
from .tower import build_tower, period_min_poly

logger = get_logger(__name__)


@lru_cache(maxsize=32)
def cached_tower(p: int, r: int, e: int | None = None) -> Tower:
    return build_tower(p, r, e=e)


@dataclass
class CheckResult:
    """Criterion verdict plus the elementwise evidence for one x."""
    tower: Tower
    x: CycNum
    gamma: CycNum
    norm: Rational
    verdict: CriterionVerdict
    evidence: dict[Variant, PthPowerTestResult] = field(default_factory=dict)


@dataclass
class FingerprintResult:
    fingerprint: GroupFingerprint
    claimed: Group | None = None
    support: Support | None = None


class TowerService:
    """Service for constructing towers and describing them."""

    def get_tower(self, p: int, r: int, e: int | None = None, builder_mode: bool = False) -> Tower:
        """Get the tower for (p, r); builder mode pins e = -1."""
        if builder_mode and p != 3:
            raise UnsupportedPrime(p)
        return cached_tower(p, r, -1 if builder_mode else e)

    def describe(self, t: Tower) -> tuple[CycNum, Poly]:
        """The Gaussian period and its minimal polynomial."""
        return t.delta, period_min_poly(t)


class CriterionService:
    """Service for the criterion, the p-th power evidence and the candidate search."""

    def __init__(self, config: Config):
        self.config = config

    def _factor_bound(self) -> int | None:
        return self.config.factor_bound or None

    def check(self, t: Tower, x: CycNum) -> CheckResult:
        """Run the ideal criterion and the p-th power test on both b(x)."""
        log = add_context(logger, p=t.p, r=t.r, command="check")
        gamma = norm_L_over_K(t, x)
        norm = norm_L_over_Q(t, x)
        verdict = criterion_verdict(t, x, self._factor_bound())
        verdict, evidence = element_evidence(
            t,
            x,
            verdict,
            trials=self.config.mc_trials,
            seed=self.config.seed,
            cap=self.config.mc_prime_cap,
        )
        log.info(f"Norm {norm}: ideal criterion {'holds' if verdict.passes else 'fails'}")
        return CheckResult(tower=t, x=x, gamma=gamma, norm=norm, verdict=verdict, evidence=evidence)

    def search(self, t: Tower, box: int, limit: int) -> list[Candidate]:
        """Scan the symmetric box of half-width box for passing candidates."""
        found = search_candidates(t, CandidateBox.symmetric(box), limit, self._factor_bound())
        add_context(logger, p=t.p, r=t.r, command="search").info(f"Found {len(found)} candidates")
        return found


class BuilderService:
    """Service for the degree-9 polynomial builder."""

    def __init__(self, config: Config):
        self.config = config

    def theta(self, t: Tower, value: CycNum | None) -> ThetaCert:
        """Verify a user theta, or pick the default Kummer generator."""
        return verify_theta(t, value) if value is not None else default_theta(t)

    def build(
        self,
        t: Tower,
        x: CycNum,
        group: Group,
        theta: CycNum | None = None,
        override: bool = False,
        fingerprint_budget: int = 0,
    ) -> tuple[EPolyReport, Support | None]:
        """Build the polynomial and, when fingerprinted, judge the claimed group."""
        cert = self.theta(t, theta) if group is Group.C9XC3 else None
        try:
            report = build(
                t,
                x,
                group,
                theta=cert,
                override=override,
                fingerprint_budget=fingerprint_budget,
                fingerprint_start=self.config.fingerprint_start,
                min_clean=self.config.fingerprint_min_clean,
            )
        except CriterionNotSatisfied:
            logger.warning("x fails the ideal criterion; pass the override flag to build anyway")
            raise

        if override and not report.verdict.passes:
            _, evidence = element_evidence(
                t,
                x,
                report.verdict,
                trials=self.config.mc_trials,
                seed=self.config.seed,
                cap=self.config.mc_prime_cap,
            )
            for variant, result in evidence.items():
                report.evidence.append(f"{variant.value}: {_describe(result)}")

        support = discriminate(report.fingerprint, group) if report.fingerprint else None
        return report, support


class FingerprintService:
    """Service for Frobenius fingerprints of arbitrary polynomials."""

    def __init__(self, config: Config):
        self.config = config

    def fingerprint(self, f: Poly, claimed: Group | None, budget: int | None = None) -> FingerprintResult:
        fp = survey(
            f,
            budget or self.config.fingerprint_budget,
            self.config.fingerprint_start,
            self.config.fingerprint_min_clean,
        )
        support = discriminate(fp, claimed) if claimed else None
        return FingerprintResult(fingerprint=fp, claimed=claimed, support=support)

    def self_test(self) -> list[tuple[int, int, tuple[int, ...] | None, tuple[int, ...]]]:
        results = self_test_cyclotomic()
        failed = [(q, p) for q, p, observed, expected in results if observed != expected]
        if failed:
            logger.error(f"Factorization self-test failed for {failed}")
        return results


def _describe(result: PthPowerTestResult) -> str:
    if isinstance(result, NotPthPower):
        return f"not a p-th power, witness q={result.witness_prime}"
    return f"probably a p-th power after {result.trials} trials"
