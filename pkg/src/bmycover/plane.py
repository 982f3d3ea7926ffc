"""The projective plane over a prime field: rational points, lines, incidence.

Over F_p the plane has p^2+p+1 points and the same number of lines, every
line carries p+1 of the points and every point lies on p+1 of the lines.
The construction downstream only consumes these closed-form counts; the
enumeration here exists to certify them by brute force, pairing every point
against every line.  The exhaustive scan is therefore capped (quadratically
many pairings) and never runs at search-scale characteristics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .primes import is_prime


class NotPrime(ValueError):
    """The plane order must be a prime number."""


class ExhaustiveCapExceeded(ValueError):
    """Exhaustive incidence verification was requested beyond its cap."""


DEFAULT_EXHAUSTIVE_CAP = 101


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Point with coordinates normalized so the first nonzero entry is 1."""

    coords: tuple[int, int, int]


@dataclass(frozen=True, order=True)
class ProjLine:
    """Line given by dual coordinates, normalized like a point."""

    coeffs: tuple[int, int, int]


def _require_prime(p: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def normalize_triple(p: int, triple) -> tuple[int, int, int]:
    """Scale so the first nonzero residue becomes 1; the representative is unique."""
    t = tuple(c % p for c in triple)
    if len(t) != 3 or all(c == 0 for c in t):
        raise ValueError(f"not a projective triple: {triple!r}")
    lead = next(c for c in t if c != 0)
    inv = pow(lead, p - 2, p)
    return tuple((c * inv) % p for c in t)


def _normalized_triples(p: int) -> list[tuple[int, int, int]]:
    out = [(0, 0, 1)]
    out += [(0, 1, a) for a in range(p)]
    out += [(1, a, b) for a in range(p) for b in range(p)]
    return out


def enumerate_points(p: int) -> list[ProjPoint]:
    """All p^2+p+1 rational points, each in normalized form, ascending."""
    _require_prime(p)
    return [ProjPoint(t) for t in _normalized_triples(p)]


def enumerate_lines(p: int) -> list[ProjLine]:
    """All rational lines via duality; same count and normalization as points."""
    _require_prime(p)
    return [ProjLine(t) for t in _normalized_triples(p)]


def is_incident(point: ProjPoint, line: ProjLine, p: int) -> bool:
    return sum(a * b for a, b in zip(point.coords, line.coeffs)) % p == 0


@dataclass(frozen=True)
class IncidenceStats:
    points: int
    lines: int
    points_per_line: int
    lines_per_point: int


def _incidence_matrix(p: int) -> np.ndarray:
    pts = np.array([pt.coords for pt in enumerate_points(p)], dtype=np.int64)
    lns = np.array([ln.coeffs for ln in enumerate_lines(p)], dtype=np.int64)
    return (pts @ lns.T) % p == 0


def incidence_stats(p: int, max_exhaustive: int = DEFAULT_EXHAUSTIVE_CAP) -> IncidenceStats:
    """Pair every point against every line and verify the uniform counts.

    The counts are established by the scan itself, not assumed from the
    closed forms; a nonuniform row or column would raise.
    """
    _require_prime(p)
    if p > max_exhaustive:
        raise ExhaustiveCapExceeded(
            f"exhaustive incidence scan capped at p <= {max_exhaustive}, got {p}"
        )
    m = _incidence_matrix(p)
    per_line = np.unique(m.sum(axis=0))
    per_point = np.unique(m.sum(axis=1))
    if per_line.size != 1 or per_point.size != 1:
        raise ArithmeticError(f"nonuniform incidence counts at p={p}")
    return IncidenceStats(
        points=m.shape[0],
        lines=m.shape[1],
        points_per_line=int(per_line[0]),
        lines_per_point=int(per_point[0]),
    )


def verify_pairwise_uniqueness(p: int, max_exhaustive: int = 31) -> bool:
    """Check every point pair shares one line and every line pair one point.

    Cubic in the plane size, so capped lower than the incidence scan.  The
    line statement is what makes the blown-up line configuration a union of
    pairwise disjoint curves: two configuration lines always meet at a
    rational point, which gets separated by the blowup.
    """
    _require_prime(p)
    if p > max_exhaustive:
        raise ExhaustiveCapExceeded(
            f"pairwise uniqueness scan capped at p <= {max_exhaustive}, got {p}"
        )
    m = _incidence_matrix(p).astype(np.int64)
    common_lines = m @ m.T
    common_points = m.T @ m
    k = m.shape[0]
    off_diag = ~np.eye(k, dtype=bool)
    return bool(
        np.all(common_lines[off_diag] == 1) and np.all(common_points[off_diag] == 1)
    )
