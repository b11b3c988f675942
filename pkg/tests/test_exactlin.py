from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nearfrob import _kernels_py
from nearfrob import exactlin as el
from nearfrob.exactlin import SparseMatrix, SubspaceBasis

F = Fraction


def test_rref_small():
    m = SparseMatrix.from_dense([[2, 4, 6], [1, 1, 1]])
    red, piv = el.rref(m)
    assert piv == [0, 1]
    assert red.to_dense() == [[1, 0, -1], [0, 1, 2]]


def test_rref_keeps_zero_rows():
    red, piv = el.rref(SparseMatrix.from_dense([[1, 1], [2, 2], [0, 0]]))
    assert piv == [0]
    assert red.rows == 3 and red.to_dense()[1:] == [[0, 0], [0, 0]]


def test_kernel_and_solve():
    m = SparseMatrix.from_dense([[1, 1]])
    assert el.kernel_basis(m).vectors == ((F(1), F(-1)),)
    assert el.solve(SparseMatrix.from_dense([[1, 2], [3, 4]]), [5, 6]) == (F(-4), F(9, 2))
    assert el.solve(SparseMatrix.from_dense([[1, 1], [1, 1]]), [1, 2]) is None


def test_empty_and_zero_cases():
    assert el.rank(SparseMatrix(0, 3, {})) == 0
    assert el.kernel_basis(SparseMatrix(0, 2, {})).dim == 2
    assert SubspaceBasis.full(3).dim == 3
    assert SubspaceBasis.zero(3).dim == 0


def test_dimension_errors():
    with pytest.raises(el.DimensionError):
        SparseMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(el.DimensionError):
        el.subspace_membership(SubspaceBasis.zero(2), [1, 2, 3])


def test_subspace_ops():
    a = SubspaceBasis.span(3, [[1, 0, 0], [0, 1, 0]])
    b = SubspaceBasis.span(3, [[0, 1, 0], [0, 0, 1]])
    assert el.subspace_intersection(a, b) == SubspaceBasis.span(3, [[0, 1, 0]])
    assert el.subspace_sum(a, b) == SubspaceBasis.full(3)
    assert el.coordinates(a, [2, 3, 0]) == (F(2), F(3))
    assert el.coordinates(a, [0, 0, 1]) is None


def test_fmt():
    assert el.fmt(F(3)) == "3"
    assert el.fmt(F(-2, 4)) == "-1/2"


# -- properties ------------------------------------------------------------

fracs = st.builds(F, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(fracs, min_size=c, max_size=c), min_size=r, max_size=r))
    return SparseMatrix.from_dense(rows, c)


@given(matrices())
def test_kernel_is_annihilated_and_rank_nullity(m):
    ker = el.kernel_basis(m)
    for v in ker.vectors:
        assert not any(m.matvec(v))
    assert el.rank(m) + ker.dim == m.cols


@given(matrices())
def test_span_is_canonical(m):
    rows = m.to_dense()
    a = SubspaceBasis.span(m.cols, rows)
    b = SubspaceBasis.span(m.cols, list(reversed(rows)) + [[2 * x for x in rows[0]]])
    assert a == b


@given(matrices(max_cols=80))
def test_sparse_and_dense_kernels_agree(m):
    rows = m.row_dicts()
    red_s, piv_s = _kernels_py.rref_sparse(_kernels_py.integer_rows(rows), m.cols)
    dense = [[r.get(j, F(0)) for j in range(m.cols)] for r in rows if r]
    red_d, piv_d = _kernels_py.rref_dense(dense, m.cols)
    assert list(piv_s) == list(piv_d)
    assert [{j: x for j, x in enumerate(r) if x} for r in red_d] == red_s


@given(matrices(max_cols=80))
def test_backends_agree(m):
    kern = pytest.importorskip("nearfrob._kernels")
    rows = m.row_dicts()
    assert kern.rref_sparse(kern.integer_rows(rows), m.cols) == \
        _kernels_py.rref_sparse(_kernels_py.integer_rows(rows), m.cols)
    dense = [[r.get(j, F(0)) for j in range(m.cols)] for r in rows if r]
    assert kern.rref_dense(dense, m.cols) == _kernels_py.rref_dense(dense, m.cols)


@given(matrices(), st.lists(fracs, min_size=7, max_size=7))
def test_solve_solves(m, x0):
    b = m.matvec(x0[:m.cols])
    x = el.solve(m, b)
    assert x is not None and m.matvec(x) == b


@given(matrices())
def test_incremental_span_matches_batch(m):
    span = el.IncrementalSpan(m.cols)
    for r in m.row_dicts():
        span.add(r)
    assert span.freeze() == SubspaceBasis.span(m.cols, m.to_dense())
    for r in m.row_dicts():
        assert r in span
