from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbound.linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    complement_extending,
    contains,
    intersect,
    invert,
    kernel_basis,
    rat,
    rat_str,
    rref,
    solve,
    span,
    vec,
)


def M(rows):
    return Matrix.from_rows(rows)


class TestRref:
    def test_proportional_rows(self):
        _, rank, pivots = rref(M([[1, 2], [2, 4]]))
        assert rank == 1
        assert pivots == [1]

    def test_identity(self):
        r, rank, pivots = rref(Matrix.identity(2))
        assert rank == 2
        assert pivots == [1, 2]
        assert r == Matrix.identity(2)

    def test_single_nonzero_entry(self):
        _, rank, pivots = rref(M([[0, 1], [0, 0]]))
        assert rank == 1
        assert pivots == [2]


class TestKernel:
    def test_e12_on_k2(self):
        ker = kernel_basis(M([[0, 1], [0, 0]]))
        assert ker == span([[1, 0]])

    def test_identity_kernel_is_zero(self):
        assert kernel_basis(Matrix.identity(3)).dim == 0

    def test_zero_matrix_kernel_is_full(self):
        assert kernel_basis(Matrix.zeros(3, 3)) == Subspace.full(3)


class TestSubspaceOps:
    def test_span_collapses_dependent_vectors(self):
        assert span([(1, 0), (2, 0)]).dim == 1

    def test_intersect_planes(self):
        a = span([(1, 0, 0), (0, 1, 0)])
        b = span([(0, 1, 0), (0, 0, 1)])
        assert intersect(a, b) == span([(0, 1, 0)])

    def test_full_space_contains_everything(self):
        assert contains(Subspace.full(3), span([(1, 2, 3)]))

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            intersect(span([(1, 0)]), span([(1, 0, 0)]))


class TestComplementExtending:
    def test_pivot_greedy_in_k3(self):
        ambient = Subspace.full(3)
        inner = span([(1, 0, 0)])
        must = span([(0, 1, 0)])
        c = complement_extending(ambient, inner, must)
        assert c == span([(0, 1, 0), (0, 0, 1)])
        assert intersect(c, inner).dim == 0

    def test_diagonal_inner(self):
        c = complement_extending(Subspace.full(2), span([(1, 1)]), Subspace.zero(2))
        assert c == span([(1, 0)])

    def test_overlapping_must_contain_rejected(self):
        with pytest.raises(ValueError, match="meets inner"):
            complement_extending(Subspace.full(2), span([(1, 0)]), span([(1, 0)]))

    def test_inner_outside_ambient_rejected(self):
        with pytest.raises(ValueError, match="inner"):
            complement_extending(span([(1, 0, 0)]), span([(0, 1, 0)]), Subspace.zero(3))


def test_rat_str_round_trip():
    assert rat_str(rat("-3/2")) == "-3/2"
    assert rat_str(rat(7)) == "7"
    assert rat("7") == Fraction(7)


def test_solve_and_invert():
    m = M([[2, 1], [1, 1]])
    x = solve(m, vec([3, 2]))
    assert m.apply(x) == vec([3, 2])
    assert invert(m) @ m == Matrix.identity(2)


def test_solve_inconsistent():
    assert solve(M([[1, 1], [1, 1]]), vec([0, 1])) is None


small_rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(
        st.lists(st.lists(small_rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
    return Matrix.from_rows(entries)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    _, rank, _ = rref(m)
    assert rank + kernel_basis(m).dim == m.cols


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_idempotent(m):
    r, _, _ = rref(m)
    r2, _, _ = rref(r)
    assert r == r2


@given(matrices(max_dim=3), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_span_is_canonical_under_row_shuffling(m, rnd):
    rows = list(m.entries)
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    assert span(rows, m.cols) == span(shuffled, m.cols)


@given(st.integers(2, 4), st.data())
@settings(max_examples=40, deadline=None)
def test_complement_properties(n, data):
    ambient = Subspace.full(n)
    k = data.draw(st.integers(0, n - 1))
    inner_rows = data.draw(
        st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=k, max_size=k)
    )
    inner = span(inner_rows, n)
    c = complement_extending(ambient, inner, Subspace.zero(n))
    assert c.dim + inner.dim == n
    assert intersect(c, inner).dim == 0
