"""Compressed divisor classes against full-basis lattice computations."""

import pytest
from hypothesis import given, strategies as st

from bmycover.picard import (
    DivisorClass,
    MismatchedBasis,
    canonical_class,
    divide_exact,
    exceptional_count,
    hyperplane_multiple,
    intersect,
    linear_combination,
    strict_transform_class,
    zero_class,
)
from bmycover.plane import enumerate_lines, enumerate_points, is_incident
from bmycover.polynomials import NotDivisible, P, evaluate

small_ints = st.integers(min_value=-9, max_value=9)


def full_basis_intersection(a, b):
    """Independent oracle: h*h' minus the dot product of exceptional parts."""
    assert len(a) == len(b)
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


class TestClasses:
    def test_canonical_class_values(self):
        assert canonical_class(5) == DivisorClass(-3, 1, 31)
        assert canonical_class(2) == DivisorClass(-3, 1, 7)
        symbolic = canonical_class(P)
        assert symbolic.h == -3 and symbolic.e == 1
        assert symbolic.n_exceptional == P * P + P + 1

    def test_strict_transform_values(self):
        assert strict_transform_class(2) == DivisorClass(7, -3, 7)
        assert strict_transform_class(5) == DivisorClass(31, -6, 31)
        symbolic = strict_transform_class(P)
        assert symbolic.h == P * P + P + 1
        assert symbolic.e == -(P + 1)

    def test_intersections(self):
        k5 = canonical_class(5)
        assert intersect(k5, k5) == 9 - 31 == -22
        h = hyperplane_multiple(1, 5)
        assert intersect(h, h) == 1
        c2 = strict_transform_class(2)
        assert intersect(c2, c2) == 49 - 7 * 9 == -14

    def test_strict_transform_square_against_full_basis_oracle(self):
        # The compressed class drops one unit of multiplicity at each of the
        # p+1 incident points per line; rebuild that in the full basis and
        # sum all pairwise products of the individual strict transforms.
        p = 2
        points = enumerate_points(p)
        lines = enumerate_lines(p)
        vectors = []
        for line in lines:
            exceptional = [-1 if is_incident(pt, line, p) else 0 for pt in points]
            vectors.append([1] + exceptional)
        total = sum(
            full_basis_intersection(a, b) for a in vectors for b in vectors
        )
        assert total == -14
        assert intersect(strict_transform_class(2), strict_transform_class(2)) == total
        assert all(full_basis_intersection(v, v) == -2 for v in vectors)

    def test_linear_combination(self):
        combo = linear_combination([(1, canonical_class(2)), (1, strict_transform_class(2))])
        assert combo == DivisorClass(4, -2, 7)
        assert linear_combination([(0, strict_transform_class(2))]) == zero_class(2)
        assert linear_combination([(3, hyperplane_multiple(1, 5))]) == DivisorClass(3, 0, 31)

    def test_divide_exact(self):
        assert divide_exact(DivisorClass(6, -3, 31), 3) == DivisorClass(2, -1, 31)
        with pytest.raises(NotDivisible):
            divide_exact(DivisorClass(7, -3, 31), 3)

    def test_mismatched_basis_rejected(self):
        with pytest.raises(MismatchedBasis):
            intersect(canonical_class(2), canonical_class(3))
        with pytest.raises(MismatchedBasis):
            canonical_class(2) + canonical_class(5)
        with pytest.raises(MismatchedBasis):
            intersect(canonical_class(5), canonical_class(P))


class TestBilinearity:
    @given(small_ints, small_ints, small_ints, small_ints, small_ints, small_ints)
    def test_symmetry(self, h1, e1, h2, e2, h3, e3):
        n = 13
        a = DivisorClass(h1, e1, n)
        b = DivisorClass(h2, e2, n)
        assert intersect(a, b) == intersect(b, a)

    @given(small_ints, small_ints, small_ints, small_ints, small_ints, small_ints, small_ints, small_ints)
    def test_linearity_in_first_argument(self, h1, e1, h2, e2, h3, e3, s, t):
        n = 13
        a = DivisorClass(h1, e1, n)
        b = DivisorClass(h2, e2, n)
        c = DivisorClass(h3, e3, n)
        lhs = intersect(linear_combination([(s, a), (t, b)]), c)
        assert lhs == s * intersect(a, c) + t * intersect(b, c)


@pytest.mark.parametrize("p0", [2, 3, 5, 11, 23])
def test_symbolic_numeric_coherence(p0):
    pairs = [
        (canonical_class(P), canonical_class(p0)),
        (strict_transform_class(P), strict_transform_class(p0)),
        (hyperplane_multiple(4, P), hyperplane_multiple(4, p0)),
    ]
    for (sym_a, num_a) in pairs:
        for (sym_b, num_b) in pairs:
            assert evaluate(intersect(sym_a, sym_b), p0) == intersect(num_a, num_b)
    assert evaluate(exceptional_count(P), p0) == exceptional_count(p0)
