from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from grtkv.rationalg import QMatrix, kernel_basis, rank, rref, row_space_rref


def test_rref_examples():
    m, piv = rref(QMatrix.from_rows([[1, 2], [2, 4]]))
    assert m.to_rows() == [[1, 2], [0, 0]] and piv == [0]
    eye = QMatrix.identity(3)
    assert rref(eye) == (eye, [0, 1, 2])
    z = QMatrix(2, 3)
    assert rref(z) == (z, [])


def test_rref_fractions():
    m, piv = rref(QMatrix.from_rows([[2, 1, 0], [4, 3, 1]]))
    assert piv == [0, 1]
    assert m.to_rows() == [[1, 0, Fraction(-1, 2)], [0, 1, 1]]


def test_kernel_examples():
    assert kernel_basis(QMatrix.from_rows([[1, 1]])) == [[-1, 1]]
    assert kernel_basis(QMatrix.identity(4)) == []
    assert len(kernel_basis(QMatrix(1, 2))) == 2


def test_entries_are_reduced_fractions():
    m = QMatrix.from_rows([[Fraction(2, 4), 3]])
    assert m[0, 0] == Fraction(1, 2) and m[0, 0].denominator == 2


matrices = st.integers(1, 5).flatmap(lambda c: st.lists(
    st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=5))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_and_rank(rows):
    m = QMatrix.from_rows(rows)
    ker = kernel_basis(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert rank(m) + len(ker) == m.cols
    r, piv = rref(m)
    assert rref(r) == (r, piv)
    assert piv == sorted(piv)


@settings(max_examples=30, deadline=None)
@given(matrices)
def test_row_space_is_canonical(rows):
    cols = len(rows[0])
    a = row_space_rref(rows, cols)
    b = row_space_rref(list(reversed(rows)) + [[2 * x for x in rows[0]]], cols)
    assert a == b
