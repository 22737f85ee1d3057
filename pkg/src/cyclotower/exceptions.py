"""
Custom exceptions for cyclotower.

Every failure carries a stable error code, a context dictionary and the exit
code the CLI terminates with, so errors render as structured objects.
"""

from typing import Any


class CyclotowerError(Exception):
    """Base exception with structured error details."""

    exit_code = 1

    def __init__(
        self,
        detail: str,
        error_code: str = "INTERNAL_ERROR",
        context: dict[str, Any] | None = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code
        self.context = context or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to a response dictionary."""
        response: dict[str, Any] = {
            "error": self.detail,
            "error_code": self.error_code,
        }

        if self.context:
            response["details"] = self.context

        return response


# Field arithmetic


class ConductorMismatch(CyclotowerError):
    def __init__(self, left: int, right: int):
        super().__init__(
            f"Conductor mismatch: {left} != {right}",
            error_code="CONDUCTOR_MISMATCH",
            context={"left": left, "right": right},
        )


class CycDivisionByZero(CyclotowerError):
    def __init__(self, conductor: int):
        super().__init__(
            "Division by zero in the cyclotomic field",
            error_code="DIVISION_BY_ZERO",
            context={"conductor": conductor},
        )


# Tower construction


class TowerError(CyclotowerError):
    exit_code = 2


class NotDivisible(TowerError):
    def __init__(self, r: int, k: int):
        super().__init__(
            f"{k} does not divide {r} - 1",
            error_code="NOT_DIVISIBLE",
            context={"r": r, "k": k},
        )


class CongruenceViolation(TowerError):
    def __init__(self, p: int, r: int, reason: str):
        super().__init__(
            f"Invalid tower (p={p}, r={r}): {reason}",
            error_code="CONGRUENCE_VIOLATION",
            context={"p": p, "r": r, "reason": reason},
        )


class BadGenerator(TowerError):
    def __init__(self, name: str, value: int, reason: str):
        super().__init__(
            f"Bad generator {name}={value}: {reason}",
            error_code="BAD_GENERATOR",
            context={"name": name, "value": value, "reason": reason},
        )


class DegenerateConjugates(CyclotowerError):
    def __init__(self, what: str):
        super().__init__(
            f"Repeated conjugates of {what}",
            error_code="DEGENERATE_CONJUGATES",
            context={"element": what},
        )


class NotInSubfield(CyclotowerError):
    """Raised when an element is expected in a subfield of the tower but is not."""

    def __init__(self, subfield: str, operation: str):
        super().__init__(
            f"{operation}: element is not in {subfield}",
            error_code=f"NOT_IN_{subfield.upper()}",
            context={"subfield": subfield, "operation": operation},
        )


# Criterion


class FactorizationIncomplete(CyclotowerError):
    exit_code = 4

    def __init__(self, n: int, residual: int, bound: int | None):
        super().__init__(
            f"Could not completely factor {n}: composite residual {residual}",
            error_code="FACTORIZATION_INCOMPLETE",
            context={"n": str(n), "residual": str(residual), "bound": bound},
        )


class WrongPrimeClass(CyclotowerError):
    def __init__(self, q: int, prime_class: str):
        super().__init__(
            f"Prime {q} is {prime_class}, expected split_completely_L",
            error_code="WRONG_PRIME_CLASS",
            context={"q": q, "class": prime_class},
        )


class NonIntegralInput(CyclotowerError):
    def __init__(self, what: str):
        super().__init__(
            f"{what} must have integer coefficients",
            error_code="NON_INTEGRAL_INPUT",
            context={"element": what},
        )


class NoRoots(CyclotowerError):
    def __init__(self, p: int, q: int):
        super().__init__(
            f"Cyclotomic polynomial of order {p} has no roots mod {q}",
            error_code="NO_ROOTS",
            context={"p": p, "q": q},
        )


class InsufficientPrimes(CyclotowerError):
    exit_code = 8

    def __init__(self, wanted: int, found: int, cap: int):
        super().__init__(
            f"Found only {found} of {wanted} usable primes below {cap}",
            error_code="INSUFFICIENT_PRIMES",
            context={"wanted": wanted, "found": found, "cap": cap},
        )


# Builder


class BuilderError(CyclotowerError):
    exit_code = 6


class UnsupportedPrime(BuilderError):
    def __init__(self, p: int):
        super().__init__(
            "builder supports p = 3 only",
            error_code="UNSUPPORTED_PRIME",
            context={"p": p},
        )


class CriterionNotSatisfied(CyclotowerError):
    exit_code = 5

    def __init__(self, x: str):
        super().__init__(
            "Ideal criterion not satisfied; pass --override-ideal-test to build anyway",
            error_code="CRITERION_NOT_SATISFIED",
            context={"x": x},
        )


class MissingTheta(BuilderError):
    def __init__(self, reason: str):
        super().__init__(
            f"A verified Kummer generator theta is required: {reason}",
            error_code="MISSING_THETA",
            context={"reason": reason},
        )


class OmegaDegenerate(BuilderError):
    def __init__(self, reason: str):
        super().__init__(
            f"Degenerate omega: {reason}",
            error_code="OMEGA_DEGENERATE",
            context={"reason": reason},
        )


class NotReciprocal(BuilderError):
    def __init__(self) -> None:
        super().__init__(
            "tau(omega) != 1/omega",
            error_code="NOT_RECIPROCAL",
        )


class ReferenceMismatch(BuilderError):
    def __init__(self, x: str, discrepancies: list[str], reference_is_cyclic: bool):
        super().__init__(
            f"Trace cubic disagrees with the published one beyond the constant term: {'; '.join(discrepancies)}",
            error_code="REFERENCE_MISMATCH",
            context={
                "x": x,
                "discrepancies": discrepancies,
                "reference_is_cyclic": reference_is_cyclic,
            },
        )


class DegeneratePolynomial(BuilderError):
    def __init__(self, reason: str):
        super().__init__(
            f"Degenerate trace polynomial: {reason}",
            error_code="DEGENERATE",
            context={"reason": reason},
        )


# Fingerprint


class BadPrime(CyclotowerError):
    def __init__(self, q: int):
        super().__init__(
            f"Prime {q} divides a coefficient denominator",
            error_code="BAD_PRIME",
            context={"q": q},
        )


class FingerprintRefuted(CyclotowerError):
    exit_code = 7

    def __init__(self, claimed: str):
        super().__init__(
            f"Frobenius statistics refute the claimed group {claimed}",
            error_code="FINGERPRINT_REFUTED",
            context={"claimed": claimed},
        )


# Input


class ElementParseError(CyclotowerError):
    exit_code = 3

    def __init__(self, text: str, reason: str):
        super().__init__(
            f"Cannot parse {text!r}: {reason}",
            error_code="PARSE_ERROR",
            context={"input": text, "reason": reason},
        )
