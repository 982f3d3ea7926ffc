"""Canonical JSON encoding of exact values.

Exact integers become decimal strings, polynomials become ascending arrays
of decimal strings, rationals become {"num", "den"} pairs with a clearly
non-authoritative six-place "approx" string computed by integer rounding.
Keys are emitted sorted with fixed separators, so parsing an emitted
document and re-serializing it reproduces the bytes exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .invariants import BignessCertificate, InvariantReport, SweepRow
from .picard import DivisorClass
from .polynomials import IntPolynomial, RationalFunction, Scalar


def decimal_approx(value: Fraction, places: int = 6) -> str:
    """Fixed-point decimal string, half-to-even, no floating point involved."""
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    scaled = num * 10**places
    quot, rem = divmod(scaled, den)
    if 2 * rem > den or (2 * rem == den and quot % 2):
        quot += 1
    whole, frac = divmod(quot, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def scalar_json(value: Scalar) -> Union[str, list[str]]:
    if isinstance(value, IntPolynomial):
        return [str(c) for c in value.coeffs]
    return str(value)


def fraction_json(value: Fraction) -> dict[str, str]:
    return {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "approx": decimal_approx(value),
    }


def rational_function_json(value: RationalFunction) -> dict[str, list[str]]:
    return {
        "num": [str(c) for c in value.num.coeffs],
        "den": [str(c) for c in value.den.coeffs],
    }


def ratio_json(value) -> dict:
    if isinstance(value, Fraction):
        return fraction_json(value)
    return rational_function_json(value)


def divisor_class_json(cls: DivisorClass) -> dict:
    return {
        "h": scalar_json(cls.h),
        "e": scalar_json(cls.e),
        "exceptional_count": scalar_json(cls.n_exceptional),
    }


def bigness_json(cert: BignessCertificate) -> dict:
    return {
        "margin": str(cert.margin),
        "passed": cert.passed,
        "combinatorial_lower_bound": str(cert.combinatorial_lower_bound),
        "reduced_set_size": cert.reduced_set_size,
    }


def report_json(report: InvariantReport) -> dict:
    symbolic = isinstance(report.p, IntPolynomial)
    payload: dict[str, Any] = {
        "q": report.q,
        "n": report.n,
        "p": scalar_json(report.p),
        "symbolic": symbolic,
        "base_canonical_square": scalar_json(report.base_canonical_square),
        "divisor_sum": divisor_class_json(report.divisor_sum),
        "canonical_square": scalar_json(report.canonical_square),
        "euler_characteristic": scalar_json(report.euler_characteristic),
        "ratio": ratio_json(report.ratio),
        "bigness": bigness_json(report.bigness),
        "certificates": dict(sorted(report.certificates.items())),
    }
    if symbolic:
        payload["valid_at"] = f"admissible characteristics only (prime p = -1 mod {report.q})"
    if report.exceeds_nine is not None:
        payload["exceeds_nine"] = report.exceeds_nine
    return payload


def sweep_row_json(row: SweepRow) -> dict:
    return {
        "p": row.p,
        "canonical_square": str(row.canonical_square),
        "euler_characteristic": str(row.euler_characteristic),
        "ratio": fraction_json(row.ratio),
        "exceeds_nine": row.exceeds_nine,
        "bigness_margin": str(row.bigness_margin),
    }


def canonical_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
