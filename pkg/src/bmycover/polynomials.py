"""Exact univariate polynomials in the characteristic p, and their quotients.

Every invariant in this package is either a plain integer (p fixed) or a
polynomial in p with integer coefficients, so a single scalar protocol covers
both modes: ``int`` and :class:`IntPolynomial` mix freely under ``+``, ``-``
and ``*``.  Coefficients are Python ints and therefore arbitrary precision;
nothing in this module (or anywhere downstream of it) touches floating point.

Rational functions are content-normalized only: the integer gcd of all
coefficients of numerator and denominator together is 1, and the denominator
has a positive leading coefficient.  Polynomial gcds are never computed.
Equality is decided by cross-multiplication, which stays exact even when the
two sides carry a common polynomial factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class ZeroDenominator(ZeroDivisionError):
    """A rational function was constructed with denominator zero."""


class PoleAtPoint(ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


class NotDivisible(ArithmeticError):
    """Exact division was requested but the quotient is not integral."""


def _trim(coeffs) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    """Dense polynomial with int coefficients, stored lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1; any
    other instance has a nonzero leading coefficient.  Instances are
    immutable and hash consistently with ints when they are constant, so
    constant polynomials and plain integers compare and hash alike.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = tuple(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {c!r}")
        self.coeffs = _trim(coeffs)

    @classmethod
    def constant(cls, value: int) -> "IntPolynomial":
        return cls((value,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("nonnegative integer exponent required")
        result = IntPolynomial((1,))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.degree <= 0 and self.leading_coefficient() == other
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.leading_coefficient())
        return hash(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def exact_div(self, divisor: int) -> "IntPolynomial":
        """Divide every coefficient by ``divisor``, requiring exactness."""
        if divisor == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        out = []
        for c in self.coeffs:
            quot, rem = divmod(c, divisor)
            if rem:
                raise NotDivisible(f"{divisor} does not divide coefficient {c} of {self}")
            out.append(quot)
        return IntPolynomial(out)

    def _term(self, k: int, c: int) -> str:
        if k == 0:
            return str(abs(c))
        mag = "" if abs(c) == 1 else str(abs(c))
        var = "p" if k == 1 else f"p^{k}"
        return mag + var

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if not parts:
                sign = "-" if c < 0 else ""
            else:
                sign = " - " if c < 0 else " + "
            parts.append(sign + self._term(k, c))
        return "".join(parts)

    def __repr__(self):
        return f"IntPolynomial({self.coeffs!r})"


#: The indeterminate itself, so ``P*P + P + 1`` spells p^2+p+1.
P = IntPolynomial((0, 1))

_ZERO = IntPolynomial()
_ONE = IntPolynomial((1,))


Scalar = Union[int, IntPolynomial]


def as_polynomial(value: Scalar) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial((value,))
    raise TypeError(f"int or IntPolynomial required, got {value!r}")


def evaluate(value: Scalar, x):
    """Evaluate a scalar at x; plain ints are constants."""
    if isinstance(value, IntPolynomial):
        return value(x)
    return value


def exact_scalar_div(value: Scalar, divisor: int) -> Scalar:
    if isinstance(value, IntPolynomial):
        return value.exact_div(divisor)
    quot, rem = divmod(value, divisor)
    if rem:
        raise NotDivisible(f"{divisor} does not divide {value}")
    return quot


def scalar_is_even(value: Scalar) -> bool:
    if isinstance(value, IntPolynomial):
        return all(c % 2 == 0 for c in value.coeffs)
    return value % 2 == 0


@dataclass(frozen=True)
class Infinity:
    """Signed infinite limit value."""

    sign: int

    def __repr__(self):
        return "+infinity" if self.sign > 0 else "-infinity"


POSITIVE_INFINITY = Infinity(1)
NEGATIVE_INFINITY = Infinity(-1)


class RationalFunction:
    """Quotient of two IntPolynomials in canonical content-reduced form.

    Normalization divides out the integer content shared by all coefficients
    of the numerator and denominator and makes the denominator's leading
    coefficient positive; a zero numerator becomes 0/1.  Construction is
    idempotent: renormalizing a normalized instance changes nothing.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_polynomial(num)
        den = as_polynomial(den)
        if den.is_zero():
            raise ZeroDenominator(f"({num})/(0)")
        if num.is_zero():
            num, den = _ZERO, _ONE
        else:
            content = math.gcd(*(abs(c) for c in num.coeffs + den.coeffs))
            if den.leading_coefficient() < 0:
                content = -content
            num = num.exact_div(content)
            den = den.exact_div(content)
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return self.num * other.denominator == self.den * other.numerator
        return NotImplemented

    __hash__ = None

    def __call__(self, x) -> Fraction:
        """Exact value at x; raises PoleAtPoint on a vanishing denominator."""
        d = self.den(x)
        if d == 0:
            raise PoleAtPoint(f"denominator {self.den} vanishes at {x}")
        return Fraction(self.num(x), d)

    def limit_at_infinity(self):
        """Exact limit for x -> +infinity.

        Returns a Fraction when the limit is finite (including 0) and a
        signed Infinity when the numerator degree dominates.
        """
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero() or dn < dd:
            return Fraction(0)
        if dn == dd:
            return Fraction(self.num.leading_coefficient(), self.den.leading_coefficient())
        sign = 1 if self.num.leading_coefficient() * self.den.leading_coefficient() > 0 else -1
        return Infinity(sign)

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self.num.coeffs!r}, {self.den.coeffs!r})"
