"""
Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are stored as their canonical remainder modulo the cyclotomic
polynomial Phi_m, so two elements are equal exactly when their coefficient
vectors in the power basis {1, zeta_m, ..., zeta_m^(phi(m)-1)} agree.
Galois automorphisms are the maps zeta_m -> zeta_m^k with gcd(k, m) = 1.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Union

from sympy import QQ, Poly, Rational, Symbol, cyclotomic_poly, totient

from ..exceptions import BadGenerator, ConductorMismatch, CycDivisionByZero

# Variable of every univariate rational polynomial handed to callers
X = Symbol("X")
# Internal variable standing for zeta_m
Z = Symbol("z")

# Exact rationals are sympy Rationals; univariate polynomials are sympy Polys in X over QQ
BigRat = Rational
RatPoly = Poly

Scalar = Union[int, Rational]


def cyclotomic_polynomial(m: int) -> Poly:
    """Return Phi_m as a monic polynomial in X of degree phi(m)."""
    if m < 1:
        raise ValueError(f"Conductor must be positive: {m}")
    return Poly(cyclotomic_poly(m, X), X, domain=QQ)


@lru_cache(maxsize=None)
def _modulus(m: int) -> Poly:
    return Poly(cyclotomic_poly(m, Z), Z, domain=QQ)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return int(totient(m))


def _as_rational(value: Scalar) -> Rational:
    return Rational(value)


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_m) in canonical reduced form."""

    conductor: int
    rep: Poly

    # Construction

    @classmethod
    def reduce(cls, m: int, raw: Sequence[Scalar]) -> CycNum:
        """Reduce sum(raw[i] * zeta_m^i) modulo Phi_m; raw may have any length."""
        if not raw:
            return cls.zero(m)
        poly = Poly(list(reversed([_as_rational(c) for c in raw])), Z, domain=QQ)
        return cls(m, poly.rem(_modulus(m)))

    @classmethod
    def zero(cls, m: int) -> CycNum:
        return cls(m, Poly(0, Z, domain=QQ))

    @classmethod
    def one(cls, m: int) -> CycNum:
        return cls.from_rational(m, 1)

    @classmethod
    def from_rational(cls, m: int, value: Scalar) -> CycNum:
        return cls(m, Poly(_as_rational(value), Z, domain=QQ))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycNum:
        """zeta_m^k for any integer k."""
        raw: list[Scalar] = [0] * m
        raw[k % m] = 1
        return cls.reduce(m, raw)

    # Inspection

    @property
    def degree(self) -> int:
        """phi(m), the length of the coefficient vector."""
        return euler_phi(self.conductor)

    @property
    def coeffs(self) -> tuple[Rational, ...]:
        """Coefficients in the power basis, lowest power first, length phi(m)."""
        values = [Rational(c) for c in reversed(self.rep.all_coeffs())]
        values += [Rational(0)] * (self.degree - len(values))
        return tuple(values[: self.degree])

    def is_zero(self) -> bool:
        return self.rep.is_zero

    def is_rational(self) -> bool:
        return self.rep.degree() <= 0

    def rational_value(self) -> Rational:
        """The value of a rational element; ValueError otherwise."""
        if not self.is_rational():
            raise ValueError("Element is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """True when every power-basis coefficient is an integer."""
        return all(c.q == 1 for c in self.coeffs)

    def denominator(self) -> int:
        """Least common multiple of the coefficient denominators."""
        return lcm(*(int(c.q) for c in self.coeffs))

    # Arithmetic

    def _coerce(self, other: CycNum | Scalar) -> CycNum:
        if isinstance(other, CycNum):
            if other.conductor != self.conductor:
                raise ConductorMismatch(self.conductor, other.conductor)
            return other
        return CycNum.from_rational(self.conductor, other)

    def __add__(self, other: CycNum | Scalar) -> CycNum:
        return CycNum(self.conductor, self.rep + self._coerce(other).rep)

    __radd__ = __add__

    def __sub__(self, other: CycNum | Scalar) -> CycNum:
        return CycNum(self.conductor, self.rep - self._coerce(other).rep)

    def __rsub__(self, other: CycNum | Scalar) -> CycNum:
        return self._coerce(other) - self

    def __neg__(self) -> CycNum:
        return CycNum(self.conductor, -self.rep)

    def __mul__(self, other: CycNum | Scalar) -> CycNum:
        product = self.rep * self._coerce(other).rep
        return CycNum(self.conductor, product.rem(_modulus(self.conductor)))

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        """Multiplicative inverse via the extended gcd with Phi_m."""
        if self.is_zero():
            raise CycDivisionByZero(self.conductor)
        if self.is_rational():
            return CycNum.from_rational(self.conductor, 1 / self.rational_value())
        return CycNum(self.conductor, self.rep.invert(_modulus(self.conductor)))

    def __truediv__(self, other: CycNum | Scalar) -> CycNum:
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other: CycNum | Scalar) -> CycNum:
        return self._coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> CycNum:
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = CycNum.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # Reduction at a degree-one place

    def residue(self, root: int, modulus: int) -> int:
        """Image under zeta_m -> root in Z/modulus; denominators must be units."""
        value = 0
        for c in reversed(self.coeffs):
            numerator = int(c.p) % modulus
            inverse = pow(int(c.q), -1, modulus) if c.q != 1 else 1
            value = (value * root + numerator * inverse) % modulus
        return value

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class CycAut:
    """The automorphism zeta_m -> zeta_m^k of Q(zeta_m)."""

    conductor: int
    exponent: int

    def __post_init__(self) -> None:
        k = self.exponent % self.conductor
        if gcd(k, self.conductor) != 1:
            raise BadGenerator("k", self.exponent, f"not a unit mod {self.conductor}")
        object.__setattr__(self, "exponent", k)

    def __call__(self, a: CycNum) -> CycNum:
        return apply_aut(self, a)

    def __mul__(self, other: CycAut) -> CycAut:
        """Composition; exponents multiply modulo m."""
        if other.conductor != self.conductor:
            raise ConductorMismatch(self.conductor, other.conductor)
        return CycAut(self.conductor, self.exponent * other.exponent)

    def __pow__(self, n: int) -> CycAut:
        return CycAut(self.conductor, pow(self.exponent, n, self.conductor))

    def order(self) -> int:
        k, n = self.exponent, 1
        while k != 1:
            k = k * self.exponent % self.conductor
            n += 1
        return n

    @classmethod
    def identity(cls, m: int) -> CycAut:
        return cls(m, 1)


def reduce(m: int, raw: Sequence[Scalar]) -> CycNum:
    return CycNum.reduce(m, raw)


def apply_aut(s: CycAut, a: CycNum) -> CycNum:
    """Image of a under zeta_m -> zeta_m^k."""
    if s.conductor != a.conductor:
        raise ConductorMismatch(s.conductor, a.conductor)
    if s.exponent == 1 or a.is_rational():
        return a
    m = a.conductor
    raw: list[Scalar] = [0] * m
    for i, c in enumerate(a.coeffs):
        if c:
            raw[i * s.exponent % m] += c
    return CycNum.reduce(m, raw)


def is_fixed_by(a: CycNum, gens: Iterable[CycAut]) -> bool:
    return all(apply_aut(s, a) == a for s in gens)


def product(values: Iterable[CycNum], m: int) -> CycNum:
    result = CycNum.one(m)
    for value in values:
        result = result * value
    return result


def units(m: int) -> list[int]:
    return [k for k in range(1, m + 1) if gcd(k, m) == 1]


def full_norm(a: CycNum) -> CycNum:
    """Product of all Galois conjugates of a; lands in Q."""
    m = a.conductor
    return product((apply_aut(CycAut(m, k), a) for k in units(m)), m)
