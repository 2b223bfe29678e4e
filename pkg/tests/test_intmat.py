import numpy as np
import pytest
import sympy as sp
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings
from hypothesis import strategies as st

from extquot import intmat
from extquot.intmat import smith_normal_form


def _check_snf(a, snf):
    a = np.array(a, dtype=object)
    U = np.array(snf.U, dtype=object)
    V = np.array(snf.V, dtype=object)
    D = np.array(snf.D, dtype=object)
    assert (U.dot(a).dot(V) == D).all()
    assert abs(intmat.det(snf.U)) == 1
    assert abs(intmat.det(snf.V)) == 1
    off = D.copy()
    for i in range(min(D.shape)):
        off[i, i] = 0
    assert not off.any()
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    for d, e in zip(diag, diag[1:]):
        assert (e == 0) if d == 0 else (e % d == 0)


def test_zero_matrix():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.diagonal == (0, 0)
    assert snf.U == intmat.identity(2) and snf.V == intmat.identity(2)


def test_two_by_two():
    # d1 = gcd of entries = 2, d1 * d2 = |det| = 8
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal == (2, 4)
    _check_snf([[2, 4], [6, 8]], snf)


def test_swap_minus_identity():
    snf = smith_normal_form([[-1, 1], [1, -1]])
    assert snf.diagonal == (1, 0)


def test_rectangular():
    a = [[2, 0, 4], [0, 6, 0]]
    snf = smith_normal_form(a)
    _check_snf(a, snf)
    assert snf.diagonal == (2, 6)


def test_empty_rows():
    snf = smith_normal_form([])
    assert snf.diagonal == ()


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n),
                           min_size=m, max_size=m)
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_exact(a):
    snf = smith_normal_form(a)
    _check_snf(a, snf)
    # invariant factors agree with sympy's (independent implementation)
    ref = sympy_snf(sp.Matrix(a), domain=sp.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(snf.diagonal) == ref_diag


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(a):
    assert intmat.det(tuple(map(tuple, a))) == int(sp.Matrix(a).det())


def test_inverse():
    a = ((2, 1), (1, 1))
    inv = intmat.inverse(a)
    assert intmat.matmul(a, inv) == intmat.identity(2)
    with pytest.raises(ValueError):
        intmat.inverse(((2, 0), (0, 1)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_charpoly_matches_sympy(a):
    x = sp.symbols("x")
    ref = sp.Poly(sp.Matrix(a).charpoly(x).as_expr(), x).all_coeffs()
    got = intmat.charpoly_batch(np.array([a]))[0]
    assert [int(c) for c in got] == [int(c) for c in ref]


def test_charpoly_overflow_fallback():
    big = np.array([[[2**27, 1], [0, 1]]])
    got = intmat.charpoly_batch(big)[0]
    # (x - 2^27)(x - 1)
    assert list(got) == [1, -(2**27 + 1), 2**27]


def test_as_int_matrix_rejects_floats():
    with pytest.raises(TypeError):
        intmat.as_int_matrix([[1.5]])
