"""Exact invariants of abelian covers of finite-plane blowups.

Builds branch data over the blowup of the projective plane at all rational
points of an admissible prime characteristic, computes the cover's canonical
square and Euler characteristic exactly (numerically or as polynomials in
the characteristic), and certifies the side conditions, including the
characteristics at which the ratio of the two exceeds 9.
"""

from .groups import (
    FSet,
    GroupElement,
    MultiplicityMap,
    canonical_f_set,
    enumerate_group,
    independence_check,
    load_f_set,
    pairing,
    random_f_set,
    solve_multiplicities,
)
from .invariants import (
    BuildingData,
    InvariantReport,
    assemble,
    bigness_certificate,
    chern_ratio,
    check_cover_condition,
    compute_report,
    cover_canonical_square,
    cover_euler_characteristic,
    growth_estimates,
    limit_chern_ratio,
    reference_ratio_comparison,
    search_primes,
    sum_divisors,
    sum_line_bundle_products,
)
from .picard import DivisorClass, canonical_class, intersect, strict_transform_class
from .plane import enumerate_lines, enumerate_points, incidence_stats
from .polynomials import P, IntPolynomial, RationalFunction

__version__ = "0.1.0"

__all__ = [
    "BuildingData",
    "DivisorClass",
    "FSet",
    "GroupElement",
    "IntPolynomial",
    "InvariantReport",
    "MultiplicityMap",
    "P",
    "RationalFunction",
    "assemble",
    "bigness_certificate",
    "canonical_class",
    "canonical_f_set",
    "chern_ratio",
    "check_cover_condition",
    "compute_report",
    "cover_canonical_square",
    "cover_euler_characteristic",
    "enumerate_group",
    "enumerate_lines",
    "enumerate_points",
    "growth_estimates",
    "incidence_stats",
    "independence_check",
    "intersect",
    "limit_chern_ratio",
    "load_f_set",
    "pairing",
    "random_f_set",
    "reference_ratio_comparison",
    "search_primes",
    "solve_multiplicities",
    "strict_transform_class",
    "sum_divisors",
    "sum_line_bundle_products",
    "__version__",
]
