"""Divisor classes on the blowup of the plane at all rational points.

Every class this construction touches is symmetric across the exceptional
divisors, so a class is stored compressed: a hyperplane multiple h, one
shared exceptional multiple e, and the number of blown-up points.  The
intersection form is the standard blowup form (hyperplane squares to 1,
each exceptional divisor to -1, mixed products vanish), which on compressed
classes reads  a.h*b.h - N*a.e*b.e.

Coefficients are scalars in the sense of :mod:`bmycover.polynomials`, so the
same code produces numeric intersection numbers at a fixed characteristic
and polynomial ones when p stays symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .polynomials import NotDivisible, Scalar, exact_scalar_div


class MismatchedBasis(ValueError):
    """Classes living on blowups at different point counts were combined."""


@dataclass(frozen=True)
class DivisorClass:
    """h times the hyperplane class plus e times every exceptional divisor."""

    h: Scalar
    e: Scalar
    n_exceptional: Scalar

    def _check_basis(self, other: "DivisorClass"):
        if self.n_exceptional != other.n_exceptional:
            raise MismatchedBasis(
                f"exceptional counts differ: {self.n_exceptional} vs {other.n_exceptional}"
            )

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check_basis(other)
        return DivisorClass(self.h + other.h, self.e + other.e, self.n_exceptional)

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check_basis(other)
        return DivisorClass(self.h - other.h, self.e - other.e, self.n_exceptional)

    def __neg__(self):
        return DivisorClass(-self.h, -self.e, self.n_exceptional)

    def __rmul__(self, scalar):
        return DivisorClass(scalar * self.h, scalar * self.e, self.n_exceptional)

    def is_zero(self) -> bool:
        return self.h == 0 and self.e == 0


def exceptional_count(p: Scalar) -> Scalar:
    """Number of blown-up points, p^2+p+1; polynomial when p is symbolic."""
    return p * p + p + 1


def zero_class(p: Scalar) -> DivisorClass:
    return DivisorClass(0, 0, exceptional_count(p))


def canonical_class(p: Scalar) -> DivisorClass:
    """Canonical class of the blowup: -3 hyperplanes plus all exceptionals."""
    return DivisorClass(-3, 1, exceptional_count(p))


def strict_transform_class(p: Scalar) -> DivisorClass:
    """Class of the strict transform of the union of all rational lines.

    Each of the p^2+p+1 lines passes through p+1 of the blown-up points,
    so the union drops multiplicity p+1 at every exceptional divisor.
    """
    n = exceptional_count(p)
    return DivisorClass(n, -(p + 1), n)


def hyperplane_multiple(count: Scalar, p: Scalar) -> DivisorClass:
    """Pullback of ``count`` general lines, missing every blown-up point."""
    return DivisorClass(count, 0, exceptional_count(p))


def intersect(a: DivisorClass, b: DivisorClass) -> Scalar:
    a._check_basis(b)
    return a.h * b.h - a.n_exceptional * (a.e * b.e)


def linear_combination(terms: Iterable[tuple[Scalar, DivisorClass]]) -> DivisorClass:
    """Sum of scalar multiples; the basis must agree across all terms."""
    terms = list(terms)
    if not terms:
        raise ValueError("at least one term required")
    result = None
    for scalar, cls in terms:
        piece = scalar * cls
        result = piece if result is None else result + piece
    return result


def divide_exact(cls: DivisorClass, divisor: int) -> DivisorClass:
    """Componentwise exact division; NotDivisible flags a failed quotient."""
    try:
        return DivisorClass(
            exact_scalar_div(cls.h, divisor),
            exact_scalar_div(cls.e, divisor),
            cls.n_exceptional,
        )
    except NotDivisible:
        raise NotDivisible(
            f"{divisor} does not divide the class (h={cls.h}, e={cls.e})"
        ) from None
