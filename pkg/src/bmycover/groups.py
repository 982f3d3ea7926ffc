"""The exponent-q abelian group (Z/qZ)^n, its characters, and transversals.

Group elements double as character indices: the character attached to gamma
pairs with sigma through the dot product of coordinate vectors, reduced to
the residue range {0, ..., q-1}.  The integer-lifted pairing is additive
only modulo q, never over the integers, and no caller may assume otherwise.

An F-set is a subset of the group containing zero, the unit vectors, the sum
of the first two units, and exactly one representative of every scalar orbit
{k*sigma : k = 1..q-1}.  The multiplicity solver picks weights in
{0, ..., q-1} supported on the F-set, equal to 1 on the first unit, whose
weighted element sum vanishes; these weights later size the branch divisors
so that the character sums divide exactly by q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .primes import is_prime


class ParameterMismatch(ValueError):
    """Elements from different groups were combined."""


class BadParameters(ValueError):
    """Group parameters outside the supported range (q prime >= 3, n >= 3)."""


class BadFSet(ValueError):
    """A candidate F-set violates at least one defining invariant."""


class SolverPostconditionFailed(RuntimeError):
    """The multiplicity solver produced weights whose element sum is nonzero."""


@dataclass(frozen=True, order=True)
class GroupElement:
    """Coordinate vector with entries reduced into {0, ..., q-1}."""

    q: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise BadParameters(f"group exponent must be at least 2, got {self.q}")
        object.__setattr__(self, "coords", tuple(c % self.q for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check_match(self, other: "GroupElement"):
        if self.q != other.q or self.n != other.n:
            raise ParameterMismatch(
                f"mismatched groups: (q={self.q}, n={self.n}) vs (q={other.q}, n={other.n})"
            )

    def __add__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check_match(other)
        return GroupElement(self.q, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.q, tuple(k * c for c in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def zero_element(q: int, n: int) -> GroupElement:
    return GroupElement(q, (0,) * n)


def unit_element(q: int, n: int, index: int) -> GroupElement:
    """The standard generator with a 1 in the given zero-based slot."""
    if not 0 <= index < n:
        raise BadParameters(f"unit index {index} out of range for n={n}")
    return GroupElement(q, tuple(1 if i == index else 0 for i in range(n)))


def enumerate_group(q: int, n: int) -> Iterator[GroupElement]:
    """All q^n elements in lexicographic order, starting at zero."""
    for coords in product(range(q), repeat=n):
        yield GroupElement(q, coords)


def pairing(gamma: GroupElement, sigma: GroupElement) -> int:
    """Character pairing, lifted to the representative in {0, ..., q-1}.

    Additive in each slot modulo q only; the integer lifts do not add.
    """
    gamma._check_match(sigma)
    return sum(a * b for a, b in zip(gamma.coords, sigma.coords)) % gamma.q


def required_elements(q: int, n: int) -> frozenset[GroupElement]:
    """Zero, every unit vector, and the sum of the first two units."""
    units = [unit_element(q, n, i) for i in range(n)]
    return frozenset([zero_element(q, n), units[0] + units[1], *units])


def _require_group_parameters(q: int, n: int):
    if not is_prime(q) or q < 3:
        raise BadParameters(f"q must be an odd prime >= 3, got {q}")
    if n < 3:
        raise BadParameters(f"n must be at least 3, got {n}")


@dataclass(frozen=True)
class FSet:
    """Scalar-orbit transversal together with the forced elements."""

    q: int
    n: int
    elems: frozenset[GroupElement]

    @property
    def expected_size(self) -> int:
        return 1 + (self.q**self.n - 1) // (self.q - 1)

    def violations(self) -> list[str]:
        """Every broken invariant, phrased for an error report."""
        out = []
        for el in self.elems:
            if el.q != self.q or el.n != self.n:
                out.append(f"element {el} does not live in (Z/{self.q})^{self.n}")
        if out:
            return out
        missing = sorted(required_elements(self.q, self.n) - self.elems)
        for el in missing:
            out.append(f"required element {el} is missing")
        for el in sorted(self.elems):
            if el.is_zero():
                continue
            for k in range(2, self.q):
                other = k * el
                if other in self.elems and el < other:
                    out.append(f"elements {el} and {other} = {k}*{el} share a scalar orbit")
        covered = set()
        for el in self.elems:
            for k in range(1, self.q):
                covered.add(k * el)
        covered.add(zero_element(self.q, self.n))
        uncovered = [g for g in enumerate_group(self.q, self.n) if g not in covered]
        for g in uncovered[:5]:
            out.append(f"element {g} is not a scalar multiple of any member")
        if len(uncovered) > 5:
            out.append(f"... and {len(uncovered) - 5} more uncovered elements")
        if len(self.elems) != self.expected_size:
            out.append(f"size {len(self.elems)} differs from expected {self.expected_size}")
        return out

    def validate(self):
        bad = self.violations()
        if bad:
            raise BadFSet("invalid F-set:\n  " + "\n  ".join(bad))

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elems)

    def reduced_elements(self) -> frozenset[GroupElement]:
        """Members that are neither forced nor zero (weight 1 in the solver)."""
        return self.elems - required_elements(self.q, self.n)


def canonical_f_set(q: int, n: int) -> FSet:
    """Greedy transversal in lexicographic order.

    Scanning the group in lexicographic order and keeping each element whose
    orbit is still unrepresented automatically keeps zero, the units, and
    the sum of the first two units, so the forced elements need no special
    handling.
    """
    _require_group_parameters(q, n)
    chosen: set[GroupElement] = set()
    for sigma in enumerate_group(q, n):
        if sigma.is_zero():
            chosen.add(sigma)
            continue
        if all(k * sigma not in chosen for k in range(1, q)):
            chosen.add(sigma)
    f = FSet(q, n, frozenset(chosen))
    f.validate()
    return f


def random_f_set(q: int, n: int, rng: random.Random) -> FSet:
    """Uniformly random representative per orbit, keeping the forced ones."""
    _require_group_parameters(q, n)
    forced = required_elements(q, n)
    chosen = {zero_element(q, n)}
    seen: set[GroupElement] = set()
    for sigma in enumerate_group(q, n):
        if sigma.is_zero() or sigma in seen:
            continue
        orbit = [k * sigma for k in range(1, q)]
        seen.update(orbit)
        forced_members = [el for el in orbit if el in forced]
        chosen.add(forced_members[0] if forced_members else rng.choice(sorted(orbit)))
    f = FSet(q, n, frozenset(chosen))
    f.validate()
    return f


def load_f_set(path, q: int, n: int) -> FSet:
    """Parse one element per line as comma-separated residues, then validate.

    The error report lists every violated invariant, not just the first.
    """
    _require_group_parameters(q, n)
    problems = []
    elems = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [piece.strip() for piece in line.split(",")]
            try:
                coords = tuple(int(piece) for piece in parts)
            except ValueError:
                problems.append(f"line {lineno}: non-integer entry in {line!r}")
                continue
            if len(coords) != n:
                problems.append(f"line {lineno}: expected {n} residues, got {len(coords)}")
                continue
            elems.append(GroupElement(q, coords))
    f = FSet(q, n, frozenset(elems))
    problems.extend(f.violations())
    if problems:
        raise BadFSet("invalid F-set file:\n  " + "\n  ".join(problems))
    return f


def format_f_set(f: FSet) -> str:
    return "\n".join(",".join(str(c) for c in el.coords) for el in f.sorted_elements()) + "\n"


@dataclass(frozen=True)
class MultiplicityMap:
    """Weights in {0, ..., q-1} on the F-set; zero off it."""

    q: int
    n: int
    values: Mapping[GroupElement, int]

    def __post_init__(self):
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    def of(self, sigma: GroupElement) -> int:
        return self.values.get(sigma, 0)

    def items(self):
        return self.values.items()

    def weighted_element_sum(self) -> GroupElement:
        total = zero_element(self.q, self.n)
        for sigma, m in self.values.items():
            total = total + m * sigma
        return total


def boundary_multiplicities(partial_sum: tuple[int, ...], q: int) -> dict[int, int]:
    """Forced-element weights balancing a given reduced coordinate sum.

    Index 0 holds the weight of the sum of the first two units; index i >= 1
    holds the weight of the (i+1)-st unit vector.  The first unit always
    carries weight 1 and is not listed.
    """
    a = [c % q for c in partial_sum]
    out = {0: (-a[0] - 1) % q, 1: (-a[1] + a[0] + 1) % q}
    for i in range(2, len(a)):
        out[i] = (-a[i]) % q
    return out


def solve_multiplicities(f: FSet) -> MultiplicityMap:
    """Weights with unit value on the first generator and vanishing sum.

    Every non-forced member gets weight 1; the forced elements then absorb
    the accumulated coordinate sum.  The vanishing of the weighted element
    sum is re-verified by direct summation before returning.
    """
    f.validate()
    q, n = f.q, f.n
    units = [unit_element(q, n, i) for i in range(n)]
    reduced = f.reduced_elements()
    values: dict[GroupElement, int] = {sigma: 1 for sigma in reduced}
    values[zero_element(q, n)] = 0
    values[units[0]] = 1

    acc = zero_element(q, n)
    for sigma in reduced:
        acc = acc + sigma
    forced = boundary_multiplicities(acc.coords, q)
    values[units[0] + units[1]] = forced[0]
    values[units[1]] = forced[1]
    for i in range(2, n):
        values[units[i]] = forced[i]

    result = MultiplicityMap(q, n, values)
    if not result.weighted_element_sum().is_zero():
        raise SolverPostconditionFailed(
            f"weighted sum {result.weighted_element_sum()} is nonzero for q={q}, n={n}"
        )
    if result.of(units[0]) != 1:
        raise SolverPostconditionFailed("first unit weight is not 1")
    return result


def independence_check(elements: Iterable[GroupElement]) -> tuple[bool, list[tuple[GroupElement, GroupElement]]]:
    """No two distinct nonzero members may be scalar multiples of each other.

    For prime exponent this is exactly pairwise independence.  Returns the
    verdict together with every violating pair.
    """
    nonzero = sorted({el for el in elements if not el.is_zero()})
    violations = []
    for a, b in combinations(nonzero, 2):
        if any(k * a == b for k in range(2, a.q)):
            violations.append((a, b))
    return not violations, violations
