from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from periplectic.exactla import (NotInSpan, SparseMatrix, SparseVector,
                                 mat_mul, rank, solve_in_span)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=8)


def dense(rows):
    m = len(rows)
    n = len(rows[0]) if rows else 0
    return SparseMatrix(m, n, {(i, j): Fraction(v)
                               for i, row in enumerate(rows)
                               for j, v in enumerate(row) if v})


def dense_mul(a, b):
    """Schoolbook oracle, independent of the sparse path."""
    A, B = a.to_dense(), b.to_dense()
    return [[sum(A[i][k] * B[k][j] for k in range(a.ncols))
             for j in range(b.ncols)] for i in range(a.nrows)]


def dense_rank(mat):
    """Plain Gaussian elimination over Fraction, the dumb way."""
    rows = [list(map(Fraction, r)) for r in mat.to_dense()]
    rk = 0
    for col in range(mat.ncols):
        piv = next((r for r in range(rk, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = 1 / rows[rk][col]
        rows[rk] = [inv * v for v in rows[rk]]
        for r in range(len(rows)):
            if r != rk and rows[r][col]:
                c = rows[r][col]
                rows[r] = [v - c * w for v, w in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def test_mat_mul_identity():
    eye = SparseMatrix.identity(3)
    assert mat_mul(eye, eye) == eye


def test_mat_mul_zero_annihilates():
    a = dense([[1, 2], [3, Fraction(1, 2)]])
    z = SparseMatrix(2, 2)
    assert mat_mul(a, z) == z
    assert mat_mul(z, a) == z


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(SparseMatrix(2, 3), SparseMatrix(2, 3))


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_mat_mul_matches_schoolbook(arows, brows):
    a, b = dense(arows), dense(brows)
    assert mat_mul(a, b).to_dense() == dense_mul(a, b)


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_mat_mul_associative(ar, br, cr):
    a, b, c = dense(ar), dense(br), dense(cr)
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_rank_zero_matrix():
    assert rank(SparseMatrix(4, 6)) == 0


def test_rank_identity():
    assert rank(SparseMatrix.identity(5)) == 5


def test_rank_stacked_copies_of_one_row():
    row = {(i, 0): Fraction(2) for i in range(7)}
    row.update({(i, 2): Fraction(-1, 3) for i in range(7)})
    assert rank(SparseMatrix(7, 3, row)) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=8),
                min_size=1, max_size=8).filter(
                    lambda rs: len({len(r) for r in rs}) == 1))
@settings(max_examples=60, deadline=None)
def test_rank_matches_dense_elimination(rows):
    m = dense(rows)
    assert rank(m) == dense_rank(m)


def test_solve_in_span_standard_basis():
    e1 = SparseVector(2, {0: Fraction(1)})
    e2 = SparseVector(2, {1: Fraction(1)})
    target = SparseVector(2, {0: Fraction(3), 1: Fraction(-1, 2)})
    assert solve_in_span([e1, e2], target) == [Fraction(3), Fraction(-1, 2)]


def test_solve_in_span_not_in_span():
    e1 = SparseVector(2, {0: Fraction(1)})
    with pytest.raises(NotInSpan):
        solve_in_span([e1], SparseVector(2, {1: Fraction(1)}))


def test_solve_square_of_crossing_lands_on_identity():
    # the three 2-strand diagram images at n=3 are independent, so the
    # coefficients of a squared crossing are pinned to the identity slot
    from periplectic.brauer import BrauerDiagram, enumerate_diagrams, psi_image, ADElement

    def flat(op):
        dim = op.spec.dim
        return SparseVector(dim * dim,
                            {i * dim + j: v
                             for (i, j), v in op.matrix.entries.items()})

    diagrams = sorted(enumerate_diagrams(2),
                      key=lambda g: g != BrauerDiagram.identity(2))
    assert diagrams[0] == BrauerDiagram.identity(2)
    basis = [flat(psi_image(ADElement.from_diagram(g), 3)) for g in diagrams]
    s1 = psi_image(ADElement.from_diagram(BrauerDiagram.s_generator(2, 1)), 3)
    coeffs = solve_in_span(basis, flat(s1.compose(s1)))
    assert coeffs == [Fraction(1), Fraction(0), Fraction(0)]


@given(st.lists(st.lists(rationals, min_size=5, max_size=5), min_size=1, max_size=4),
       st.lists(rationals, min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_solve_then_recombine(rows, weights):
    basis = [SparseVector(5, {j: v for j, v in enumerate(r) if v}) for r in rows]
    target = SparseVector(5)
    for w, v in zip(weights, basis):
        target = target.add(v, w)
    coeffs = solve_in_span(basis, target)
    back = SparseVector(5)
    for c, v in zip(coeffs, basis):
        back = back.add(v, c)
    assert back == target


def test_no_stored_zeros():
    v = SparseVector(3, {0: Fraction(0), 1: Fraction(2)})
    assert 0 not in v.entries
    m = SparseMatrix(2, 2, {(0, 0): Fraction(0), (1, 1): Fraction(1)})
    assert (0, 0) not in m.entries
