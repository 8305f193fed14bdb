from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from algder import QMatrix, UniPoly, char_poly, kernel, rational_root_split, rref
from algder.errors import NonSquareMatrixError
from algder.linalg import rank, uni_gcdex

small = st.builds(Fraction, st.integers(-5, 5), st.sampled_from([1, 1, 2, 3]))


@st.composite
def matrices(draw, min_n=1, max_n=5, square=True):
    r = draw(st.integers(min_n, max_n))
    c = r if square else draw(st.integers(min_n, max_n))
    return QMatrix(r, c, draw(st.lists(small, min_size=r * c, max_size=r * c)))


def _sympy_matrix(m):
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(e.numerator, e.denominator) for e in m.entries])


def test_rref_examples():
    red, piv = rref(QMatrix.from_rows([[2, 4], [1, 2]]))
    assert red == QMatrix.from_rows([[1, 2], [0, 0]]) and piv == [0]
    ident = QMatrix.identity(3)
    assert rref(ident) == (ident, [0, 1, 2])
    red, piv = rref(QMatrix.from_rows([[0, 1], [1, 0]]))
    assert red == QMatrix.identity(2) and piv == [0, 1]


def test_char_poly_examples():
    assert char_poly(QMatrix.from_rows([[0, 0], [1, 0]])) == UniPoly([0, 0, 1])
    assert char_poly(QMatrix.from_rows([[1, 0], [0, 2]])) == UniPoly([2, -3, 1])
    assert char_poly(QMatrix.from_rows([[5]])) == UniPoly([-5, 1])


def test_char_poly_non_square():
    with pytest.raises(NonSquareMatrixError):
        char_poly(QMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_rational_root_split_examples():
    s = rational_root_split(UniPoly([2, -3, 1]))
    assert s.roots == {1: 1, 2: 1} and s.residual == UniPoly([1])
    s = rational_root_split(UniPoly([0, 0, 0, 1]))
    assert s.roots == {0: 3} and s.residual == UniPoly([1])
    s = rational_root_split(UniPoly([1, 0, 1]))
    assert s.roots == {} and s.residual == UniPoly([1, 0, 1])


def test_rational_root_split_fractional_and_repeated():
    p = (UniPoly.linear(Fraction(1, 2)) ** 3) * UniPoly.linear(-3) * UniPoly([-2, 0, 1])
    s = rational_root_split(p)
    assert s.roots == {Fraction(1, 2): 3, Fraction(-3): 1}
    assert s.residual == UniPoly([-2, 0, 1])
    assert s.reconstruct() == p


@given(st.lists(st.integers(-4, 4), min_size=0, max_size=5), st.lists(small, min_size=0, max_size=3))
@settings(max_examples=80)
def test_rational_root_split_reconstructs(roots, extra):
    p = UniPoly([1])
    for r in roots:
        p = p * UniPoly.linear(r)
    p = p * UniPoly(list(extra) + [1])
    s = rational_root_split(p)
    assert s.reconstruct() == p
    for r in roots:
        assert r in s.roots


@given(matrices(square=False))
@settings(max_examples=80)
def test_rref_echelon_axioms_and_row_space(m):
    red, piv = rref(m)
    # pivots strictly increase, each pivot column is a unit vector
    assert piv == sorted(set(piv))
    for i, c in enumerate(piv):
        assert red.col(c) == [Fraction(int(k == i)) for k in range(m.rows)]
        assert all(red[i, j] == 0 for j in range(c))
    for i in range(len(piv), m.rows):
        assert not any(red.row(i))
    # same row space: stacking either matrix under the other adds no rank
    stacked = QMatrix(2 * m.rows, m.cols, m.entries + red.entries)
    assert rank(stacked) == rank(m) == rank(red) == len(piv)
    assert piv == list(_sympy_matrix(m).rref()[1])


@given(matrices(square=False))
@settings(max_examples=50)
def test_kernel_vectors_are_annihilated(m):
    ker = kernel(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert not any(m.apply(v))


@given(matrices())
@settings(max_examples=60)
def test_char_poly_matches_sympy(m):
    X = sympy.Symbol("X")
    oracle = sympy.Poly(_sympy_matrix(m).charpoly(X).as_expr(), X).all_coeffs()[::-1]
    assert char_poly(m) == UniPoly([Fraction(int(c.p), int(c.q)) for c in oracle])


@given(matrices())
@settings(max_examples=40)
def test_cayley_hamilton(m):
    assert char_poly(m)(m).is_zero()


@given(st.integers(1, 5).flatmap(lambda n: st.lists(small, min_size=n * n, max_size=n * n)))
@settings(max_examples=60)
def test_char_poly_triangular(entries):
    n = int(len(entries) ** 0.5)
    m = QMatrix(n, n, [e if j >= i else 0 for k, e in enumerate(entries) for i, j in [divmod(k, n)]])
    expected = UniPoly([1])
    for i in range(n):
        expected = expected * UniPoly.linear(m[i, i])
    assert char_poly(m) == expected


def test_char_poly_needs_row_swaps():
    m = QMatrix.from_rows([[1, 2, 0, 0], [0, 3, 0, 1], [0, 0, 0, 2], [4, 0, 1, 0]])
    assert char_poly(m)(m).is_zero()


def test_gcdex_bezout():
    a = UniPoly.linear(1) ** 2
    b = UniPoly.linear(2) * UniPoly.linear(3)
    s, t, g = uni_gcdex(a, b)
    assert g == UniPoly([1])
    assert s * a + t * b == g


def test_unipoly_division():
    a = UniPoly([1, 2, 3, 4])
    b = UniPoly([1, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree
