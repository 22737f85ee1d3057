"""
Pydantic report models for cyclotower output.

Every report carries the schema version and the RunConfig that produced
it, so a report alone is enough to re-run the command. JSON is written with
sorted keys and fixed indentation; identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from pydantic import BaseModel, ConfigDict, Field
from sympy import Poly, Rational

from ..domain.criterion import Candidate
from ..domain.cyclotomic import CycNum
from ..domain.models import (
    CriterionVerdict,
    EPolyReport,
    GroupFingerprint,
    NotPthPower,
    PthPowerTestResult,
    Support,
    ThetaCert,
    Tower,
    Variant,
)

SCHEMA_VERSION = 1


# Rendering helpers


def format_rational(value: Rational) -> str:
    """'num/den', or the integer when the denominator is 1."""
    return str(Rational(value))


def _monomial(k: int) -> str:
    if k == 0:
        return ""
    return "X" if k == 1 else f"X^{k}"


def poly_text(f: Poly) -> str:
    """Human form 'X^3 - 81/49*X^2 - 111/343*X + 1489/2401', highest degree first."""
    terms = []
    for (k,), coeff in f.terms():
        c = Rational(coeff)
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        monomial = _monomial(k)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        elif magnitude.q == 1:
            body = f"{magnitude}{monomial}"
        else:
            body = f"{magnitude}*{monomial}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = f"-{first}" if first_sign == "-" else first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def poly_coefficients(f: Poly) -> list[str]:
    """Coefficients in ascending degree."""
    return [format_rational(c) for c in reversed(f.all_coeffs())]


# Report models


class PolynomialModel(BaseModel):
    text: str = Field(..., description="Polynomial in X, highest degree first")
    coefficients: list[str] = Field(..., description="Rational coefficients by ascending degree")

    @classmethod
    def from_poly(cls, f: Poly) -> PolynomialModel:
        return cls(text=poly_text(f), coefficients=poly_coefficients(f))


class ElementModel(BaseModel):
    text: str = Field(..., description="Element in the power basis of zeta_m, written in z")
    conductor: int
    coefficients: list[str]

    @classmethod
    def from_element(cls, a: CycNum) -> ElementModel:
        return cls(
            text=str(a),
            conductor=a.conductor,
            coefficients=[format_rational(c) for c in a.coeffs],
        )


class RunConfigModel(BaseModel):
    """Every effective input of a command; re-running it reproduces the report."""
    command: str
    p: int | None = None
    r: int | None = None
    e: int | None = None
    x: str | None = None
    group: str | None = None
    theta: str | None = None
    override_ideal_test: bool = False
    fingerprint: int = 0
    box: int | None = None
    limit: int | None = None
    poly: str | None = None
    claimed: str | None = None
    budget: int | None = None
    self_test: bool = False
    mc_trials: int
    mc_prime_cap: int
    factor_bound: int
    fingerprint_start: int
    min_clean: int
    seed: int
    format: str = "json"

    def to_argv(self) -> list[str]:
        """Command-line arguments that rebuild this configuration."""
        argv = [self.command]
        options: list[tuple[str, Any]] = [
            ("-p", self.p),
            ("-r", self.r),
            ("-e", self.e),
            ("-x", self.x),
            ("--group", self.group),
            ("--theta", self.theta),
            ("--box", self.box),
            ("--limit", self.limit),
            ("--poly", self.poly),
            ("--claimed", self.claimed),
            ("--budget", self.budget),
        ]
        for flag, value in options:
            if value is not None:
                argv += [flag, str(value)]
        if self.override_ideal_test:
            argv.append("--override-ideal-test")
        if self.fingerprint:
            argv += ["--fingerprint", str(self.fingerprint)]
        if self.self_test:
            argv.append("--self-test")
        argv += [
            "--mc-trials", str(self.mc_trials),
            "--mc-prime-cap", str(self.mc_prime_cap),
            "--factor-bound", str(self.factor_bound),
            "--fingerprint-start", str(self.fingerprint_start),
            "--min-clean", str(self.min_clean),
            "--seed", str(self.seed),
            "--format", self.format,
        ]
        return argv


class ReportBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    config: RunConfigModel


class TowerModel(BaseModel):
    p: int
    r: int
    m: int
    e: int
    m_r: int
    c: int
    sigma_k: int
    tau_k: int


class TowerReport(ReportBase):
    tower: TowerModel
    delta: ElementModel
    period_polynomial: PolynomialModel


class PrimeReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    q: int
    l: int  # noqa: E741
    prime_class: str = Field(..., alias="class")
    a1: int | None = None
    roots: list[int] | None = None
    betas: list[int] | None = None
    chi: int | None = None
    chi_mod_p: int | None = None


class PthPowerReport(BaseModel):
    variant: str
    result: str
    witness_prime: int | None = None
    trials: int | None = None

    @classmethod
    def from_result(cls, variant: Variant, result: PthPowerTestResult) -> PthPowerReport:
        if isinstance(result, NotPthPower):
            return cls(variant=variant.value, result="not_pth_power", witness_prime=result.witness_prime)
        return cls(variant=variant.value, result="probably_pth_power", trials=result.trials)


class VerdictModel(BaseModel):
    norm: str = Field(..., description="Nr_{L/Q}(x) factored as '±q1^l1·q2^l2'")
    norm_value: str
    primes: list[PrimeReport]
    ideal_criterion: bool
    h27_ok: bool
    c9c3_ok: bool
    notes: list[str]

    @classmethod
    def from_verdict(cls, verdict: CriterionVerdict) -> VerdictModel:
        return cls(
            norm=str(verdict.factorization),
            norm_value=format_rational(verdict.factorization.value()),
            primes=[PrimeReport.model_validate(pv.to_dict()) for pv in verdict.per_prime],
            ideal_criterion=verdict.ideal_criterion_holds,
            h27_ok=verdict.heisenberg_ok,
            c9c3_ok=verdict.semidirect_ok,
            notes=list(verdict.notes),
        )


class VerdictReport(ReportBase, VerdictModel):
    """The verdict fields at top level, next to the tower, gamma and the p-th power evidence."""
    tower: TowerModel
    x: str
    gamma: ElementModel
    pth_power: list[PthPowerReport]

    @classmethod
    def from_check(
        cls,
        config: RunConfigModel,
        t: Tower,
        x: CycNum,
        gamma: CycNum,
        verdict: CriterionVerdict,
        evidence: dict[Variant, PthPowerTestResult],
    ) -> VerdictReport:
        return cls(
            config=config,
            tower=tower_model(t),
            x=str(x),
            gamma=ElementModel.from_element(gamma),
            pth_power=[PthPowerReport.from_result(v, res) for v, res in evidence.items()],
            **dict(VerdictModel.from_verdict(verdict)),
        )


class FingerprintModel(BaseModel):
    samples: int
    skipped: int
    patterns: dict[str, int]
    verdict: str
    claimed: str | None = None
    support: str | None = None

    @classmethod
    def from_fingerprint(
        cls,
        fp: GroupFingerprint,
        claimed: str | None = None,
        support: Support | None = None,
    ) -> FingerprintModel:
        return cls(
            **fp.to_dict(),
            claimed=claimed,
            support=support.value if support else None,
        )


class ThetaModel(BaseModel):
    theta: ElementModel
    ok: bool
    notes: list[str]

    @classmethod
    def from_cert(cls, cert: ThetaCert) -> ThetaModel:
        return cls(theta=ElementModel.from_element(cert.theta), ok=cert.ok, notes=list(cert.notes))


class EPolyReportModel(ReportBase):
    tower: TowerModel
    group: str
    x: ElementModel
    omega: ElementModel
    trace_cubic: PolynomialModel
    e_poly: PolynomialModel
    verdict: VerdictModel
    theta: ThetaModel | None = None
    fingerprint: FingerprintModel | None = None
    evidence: list[str]
    discrepancies: list[str]


class SelfTestCase(BaseModel):
    q: int
    p: int
    observed: list[int] | None
    expected: list[int]
    ok: bool


class FingerprintReport(ReportBase):
    polynomial: PolynomialModel | None = None
    fingerprint: FingerprintModel | None = None
    self_test: list[SelfTestCase] | None = None


class CandidateModel(BaseModel):
    coords: list[int] = Field(..., description="(u, v, w) for x = u*d + v + w*zp")
    x: ElementModel
    norm: str
    norm_value: str
    notes: list[str]


class SearchReport(ReportBase):
    tower: TowerModel
    count: int
    candidates: list[CandidateModel]


# Builders


def tower_model(t: Tower) -> TowerModel:
    return TowerModel(**t.to_dict())


def epoly_report(
    config: RunConfigModel,
    t: Tower,
    report: EPolyReport,
    support: Support | None,
) -> EPolyReportModel:
    fingerprint = None
    if report.fingerprint is not None:
        fingerprint = FingerprintModel.from_fingerprint(report.fingerprint, report.group.value, support)
    return EPolyReportModel(
        config=config,
        tower=tower_model(t),
        group=report.group.value,
        x=ElementModel.from_element(report.x),
        omega=ElementModel.from_element(report.omega),
        trace_cubic=PolynomialModel.from_poly(report.trace_cubic),
        e_poly=PolynomialModel.from_poly(report.e_poly),
        verdict=VerdictModel.from_verdict(report.verdict),
        theta=ThetaModel.from_cert(report.theta) if report.theta else None,
        fingerprint=fingerprint,
        evidence=list(report.evidence),
        discrepancies=list(report.discrepancies),
    )


def candidate_model(candidate: Candidate) -> CandidateModel:
    factorization = candidate.verdict.factorization
    return CandidateModel(
        coords=list(candidate.coords),
        x=ElementModel.from_element(candidate.x),
        norm=str(factorization),
        norm_value=format_rational(factorization.value()),
        notes=list(candidate.verdict.notes),
    )


# Serialization


def to_json(report: BaseModel) -> str:
    """Deterministic JSON: sorted keys, two-space indentation, trailing newline."""
    data = report.model_dump(mode="json", by_alias=True)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report: BaseModel) -> str:
    """Flat 'key: value' lines; polynomials and elements shown by their text form."""
    data = report.model_dump(mode="json", by_alias=True, exclude={"config"})
    lines: list[str] = []
    _flatten(data, "", lines)
    return "\n".join(lines) + "\n"


def _flatten(value: Any, prefix: str, lines: list[str]) -> None:
    if isinstance(value, dict):
        if "text" in value and ("coefficients" in value):
            lines.append(f"{prefix}: {value['text']}")
            return
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else key, lines)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", lines)
    elif isinstance(value, list):
        lines.append(f"{prefix}: {', '.join(str(v) for v in value)}")
    elif value is not None:
        lines.append(f"{prefix}: {value}")


def render(report: BaseModel, fmt: str) -> str:
    return to_text(report) if fmt == "text" else to_json(report)
