"""
Text grammars for field elements and rational polynomials.

Elements are polynomial expressions in the names zp (zeta_p), zr (zeta_r)
and d (the Gaussian period) with rational coefficients, written with
+ - * / ^ and parentheses, e.g. "3*d^2 + 3*d + 3*zp*d + zp - 4".
Polynomials are expressions in X, or a JSON array of coefficients in
ascending degree.
"""

from __future__ import annotations

import json
import re

from sympy import QQ, Poly, Rational, Symbol
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from ..domain.cyclotomic import X, CycNum
from ..domain.models import Tower
from ..exceptions import ElementParseError

_ELEMENT_NAMES = {"zp": Symbol("zp"), "zr": Symbol("zr"), "d": Symbol("d")}
_POLY_NAMES = {"X": X, "x": X}

_ALLOWED_CHARS = re.compile(r"^[\s0-9+\-*/^().A-Za-z]*$")
_IDENTIFIER = re.compile(r"[A-Za-z_]+")

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


def _parse(text: str, names: dict[str, Symbol]) -> object:
    if not text.strip():
        raise ElementParseError(text, "empty expression")
    if not _ALLOWED_CHARS.match(text):
        raise ElementParseError(text, "unexpected character")
    unknown = sorted(set(_IDENTIFIER.findall(text)) - set(names))
    if unknown:
        raise ElementParseError(text, f"unknown name {unknown[0]!r}; expected one of {sorted(names)}")
    try:
        return parse_expr(text, local_dict=dict(names), transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, NameError) as exc:
        raise ElementParseError(text, "malformed expression") from exc


def parse_element(t: Tower, text: str) -> CycNum:
    """Evaluate an element expression in Q(zeta_m) of the tower."""
    expr = _parse(text, _ELEMENT_NAMES)
    gens = tuple(_ELEMENT_NAMES.values())
    try:
        poly = Poly(expr, *gens, domain=QQ)
    except BasePolynomialError as exc:
        raise ElementParseError(text, "not a polynomial in zp, zr, d") from exc

    values = (t.zeta_p(), t.zeta_r(), t.delta)
    result = CycNum.zero(t.m)
    for exponents, coeff in poly.terms():
        term = CycNum.from_rational(t.m, Rational(coeff))
        for value, k in zip(values, exponents):
            if k:
                term = term * value**k
        result = result + term
    return result


def parse_polynomial(text: str) -> Poly:
    """Parse a polynomial in X, or a JSON coefficient array (ascending degree)."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            raw = json.loads(stripped)
            coeffs = [Rational(str(c)) for c in raw]
        except (ValueError, TypeError) as exc:
            raise ElementParseError(text, "malformed coefficient array") from exc
        if not coeffs:
            raise ElementParseError(text, "empty coefficient array")
        return Poly(list(reversed(coeffs)), X, domain=QQ)

    expr = _parse(stripped, _POLY_NAMES)
    try:
        return Poly(expr, X, domain=QQ)
    except BasePolynomialError as exc:
        raise ElementParseError(text, "not a polynomial in X") from exc
