"""
Degree-9 polynomials with Galois group H_27 or C_9 x| C_3.

Works on a p = 3 tower in e = -1 mode, where Phi(y) = tau(y) / y. For a
passing x the element omega = Phi(x^2 sigma(x)) (times a Kummer generator
theta of L/K for the semidirect group) satisfies tau(omega) = 1/omega, so
s = omega + 1/omega lies in F. With p(X) the minimal polynomial of s,
p(X^3 - 3X) has the requested Galois group.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import QQ, Poly, Rational, sqrt

from ..exceptions import (
    BuilderError,
    CriterionNotSatisfied,
    DegenerateConjugates,
    DegeneratePolynomial,
    MissingTheta,
    NotReciprocal,
    OmegaDegenerate,
    ReferenceMismatch,
    UnsupportedPrime,
)
from ..logging import add_context, get_logger
from .criterion import candidate_element, criterion_verdict
from .cyclotomic import X, CycNum, apply_aut
from .fingerprint import survey
from .models import (
    CriterionVerdict,
    EPolyReport,
    Group,
    SubfieldTag,
    ThetaCert,
    Tower,
)
from .phinorm import beta, phi
from .tower import conjugate_polynomial, membership, require

logger = get_logger(__name__)

_CHEBYSHEV = Poly(X**3 - 3 * X, X, domain=QQ)


@dataclass(frozen=True)
class PublishedCubic:
    """A trace cubic printed in the literature, with the inputs that produce it."""
    p: int
    r: int
    group: Group
    # x = u * delta + v + w * zeta_p
    x_coords: tuple[int, int, int]
    coefficients: tuple[Rational, Rational, Rational]

    def cubic(self) -> Poly:
        c2, c1, c0 = self.coefficients
        return Poly([1, c2, c1, c0], X, domain=QQ)


PUBLISHED_CUBICS = (
    PublishedCubic(
        p=3,
        r=19,
        group=Group.H27,
        x_coords=(1, 1, 1),
        coefficients=(Rational(-81, 49), Rational(-111, 343), Rational(1489, 2401)),
    ),
    PublishedCubic(
        p=3,
        r=7,
        group=Group.C9XC3,
        x_coords=(1, 0, 1),
        coefficients=(Rational(-522, 169), Rational(-5595, 2197), Rational(6791, 15379)),
    ),
)


def _check_builder_tower(t: Tower) -> None:
    if t.p != 3:
        raise UnsupportedPrime(t.p)
    if not t.builder_mode:
        raise BuilderError(
            f"builder needs the e = -1 tower, got e = {t.e}",
            error_code="BUILDER_MODE",
            context={"e": t.e},
        )


# Kummer generators of L/K


def default_theta_value(t: Tower) -> CycNum:
    """3 delta^2 + 3 delta + 3 zeta_3 delta + zeta_3 - 4 on the (3, 7) tower."""
    d, z = t.delta, t.zeta_p()
    return 3 * d * d + 3 * d + 3 * z * d + z - 4


def verify_theta(t: Tower, theta: CycNum) -> ThetaCert:
    """Check sigma(theta) = zeta_p theta and theta^p in K; failures land in the notes."""
    if t.p != 3:
        raise UnsupportedPrime(t.p)
    if theta.is_zero():
        raise ValueError("theta must be nonzero")
    a = theta**t.p
    notes = []
    if not membership(t, theta, SubfieldTag.L):
        notes.append("theta is not in L")
    if apply_aut(t.sigma_bar, theta) != t.zeta_p() * theta:
        notes.append("sigma(theta) != zeta_p * theta")
    if not membership(t, a, SubfieldTag.K):
        notes.append("theta^p is not in K")
    if membership(t, theta, SubfieldTag.K):
        notes.append("theta lies in K")
    return ThetaCert(theta=theta, a=a, ok=not notes, notes=tuple(notes))


def lagrange_resolvent(t: Tower, y: CycNum) -> CycNum:
    """sum_i zeta_p^(-i) sigma^i(y); sigma acts on it by zeta_p."""
    result = CycNum.zero(t.m)
    for i in range(t.p):
        result = result + CycNum.zeta(t.m, -i * t.r) * apply_aut(t.sigma_bar**i, y)
    return result


def find_theta(t: Tower, attempts: int = 8) -> ThetaCert:
    """First nonzero resolvent among y = delta, delta^2, ..."""
    y = t.delta
    for _ in range(attempts):
        theta = lagrange_resolvent(t, y)
        if not theta.is_zero():
            return verify_theta(t, theta)
        y = y * t.delta
    raise MissingTheta(f"no nonzero resolvent among the first {attempts} powers of delta")


def default_theta(t: Tower) -> ThetaCert:
    if (t.p, t.r) == (3, 7):
        return verify_theta(t, default_theta_value(t))
    return find_theta(t)


# Pipeline


def build_omega(
    t: Tower,
    x: CycNum,
    group: Group,
    theta: ThetaCert | None = None,
    override: bool = False,
    verdict: CriterionVerdict | None = None,
) -> CycNum:
    """omega = Phi(x^2 sigma(x)) for H_27, Phi(x^2 sigma(x) theta) for C_9 x| C_3.

    Raises:
        CriterionNotSatisfied: x fails the ideal criterion and override is off
        MissingTheta: the semidirect group was asked for without a verified theta
        NotReciprocal: tau(omega) * omega != 1
        OmegaDegenerate: omega + 1/omega is rational
    """
    _check_builder_tower(t)
    require(t, x, SubfieldTag.L, "build_omega")
    if not override:
        verdict = verdict or criterion_verdict(t, x)
        if not verdict.passes:
            raise CriterionNotSatisfied(str(x))

    y = beta(t, x)
    if group is Group.C9XC3:
        if theta is None or not theta.ok:
            reason = "no theta supplied" if theta is None else "; ".join(theta.notes)
            raise MissingTheta(reason)
        y = y * theta.theta
    if y.is_zero():
        raise OmegaDegenerate("x^2 sigma(x) vanishes")

    omega = phi(t, y)
    if omega * apply_aut(t.tau_bar, omega) != CycNum.one(t.m):
        raise NotReciprocal()
    if (omega + omega.inv()).is_rational():
        raise OmegaDegenerate("omega + 1/omega is rational")
    return omega


def trace_cubic(t: Tower, omega: CycNum) -> Poly:
    """Minimal polynomial over Q of omega + 1/omega, from its sigma-conjugates."""
    _check_builder_tower(t)
    inverse = omega.inv()
    if apply_aut(t.tau_bar, omega) != inverse:
        raise NotReciprocal()
    s = omega + inverse
    require(t, s, SubfieldTag.F, "trace_cubic")
    try:
        cubic = conjugate_polynomial([apply_aut(t.sigma_bar**i, s) for i in range(t.p)], "omega + 1/omega")
    except DegenerateConjugates as exc:
        raise DegeneratePolynomial("omega + 1/omega has repeated conjugates") from exc
    return cubic


def compose_e_poly(cubic: Poly) -> Poly:
    """cubic(X^3 - 3X), expanded exactly."""
    if cubic.degree() != 3 or cubic.LC() != 1:
        raise DegeneratePolynomial(f"expected a monic cubic, got degree {cubic.degree()}")
    return cubic.compose(_CHEBYSHEV)


def published_reference(t: Tower, x: CycNum, group: Group) -> PublishedCubic | None:
    for reference in PUBLISHED_CUBICS:
        if (reference.p, reference.r, reference.group) != (t.p, t.r, group):
            continue
        if candidate_element(t, *reference.x_coords) == x:
            return reference
    return None


def is_cyclic_cubic(cubic: Poly) -> bool:
    """True when the discriminant is a nonzero rational square, i.e. the splitting field is C_3."""
    disc = Rational(cubic.discriminant())
    return disc != 0 and sqrt(disc).is_Rational is True


def reference_discrepancies(cubic: Poly, reference: Poly) -> list[str]:
    """Coefficients of cubic differing from reference, both values spelled out."""
    names = ("X^3", "X^2", "X", "constant")
    built = cubic.all_coeffs()
    published = reference.all_coeffs()
    return [
        f"{name}: built {b}, published {r}"
        for name, b, r in zip(names, built, published)
        if Rational(b) != Rational(r)
    ]


def build(
    t: Tower,
    x: CycNum,
    group: Group,
    theta: ThetaCert | None = None,
    override: bool = False,
    fingerprint_budget: int = 0,
    fingerprint_start: int = 3,
    min_clean: int = 50,
) -> EPolyReport:
    """Run the whole pipeline from x to the degree-9 polynomial.

    When x is one of the published inputs the trace cubic is compared with the
    printed one. A differing constant term is only reported; any other
    difference is an error.

    Raises:
        CriterionNotSatisfied: x fails the ideal criterion and override is off
        ReferenceMismatch: the X^2 or X coefficient disagrees with the published cubic
    """
    _check_builder_tower(t)
    log = add_context(logger, p=t.p, r=t.r, command="build")

    verdict = criterion_verdict(t, x)
    if not verdict.passes and not override:
        raise CriterionNotSatisfied(str(x))
    if group is Group.C9XC3 and theta is None:
        theta = default_theta(t)

    omega = build_omega(t, x, group, theta, override=True)
    cubic = trace_cubic(t, omega)
    e_poly = compose_e_poly(cubic)
    log.info(f"Built {group.value} polynomial of degree {e_poly.degree()}")

    evidence = []
    if not verdict.passes:
        evidence.append("ideal criterion not satisfied; build forced by override")

    discrepancies: list[str] = []
    reference = published_reference(t, x, group)
    if reference is not None:
        discrepancies = reference_discrepancies(cubic, reference.cubic())
        if any(not d.startswith("constant:") for d in discrepancies):
            raise ReferenceMismatch(str(x), discrepancies, is_cyclic_cubic(reference.cubic()))
        if discrepancies:
            log.warning(f"Trace cubic differs from the published one: {discrepancies}")

    fingerprint = None
    if fingerprint_budget > 0:
        fingerprint = survey(e_poly, fingerprint_budget, fingerprint_start, min_clean)

    return EPolyReport(
        group=group,
        x=x,
        omega=omega,
        trace_cubic=cubic,
        e_poly=e_poly,
        verdict=verdict,
        fingerprint=fingerprint,
        theta=theta if group is Group.C9XC3 else None,
        evidence=evidence,
        discrepancies=discrepancies,
    )
