from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from toric_exc import intlinalg


def small_matrix(max_rows=5, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_matrix())
def test_snf_transforms_and_diagonal(A):
    D, U, V = intlinalg.smith_normal_form(A)
    assert intlinalg.matmul(intlinalg.matmul(U, A), V) == D
    assert abs(intlinalg.det(U)) == 1 and abs(intlinalg.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(A), len(A[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


@given(small_matrix())
def test_invariant_factors_match_sympy(A):
    ours = intlinalg.invariant_factors(A)
    s = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    theirs = sorted(abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0)
    assert sorted(ours) == theirs


@given(small_matrix(6, 6, -2, 2))
def test_sparse_factors_match_dense(A):
    rows = [{j: x for j, x in enumerate(row) if x} for row in A]
    assert sorted(intlinalg.sparse_invariant_factors(rows, len(A[0]))) == sorted(intlinalg.invariant_factors(A))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(A):
    assert intlinalg.det(A) == int(sympy.Matrix(A).det())


def test_inverse_exact():
    A = [[2, 1], [7, 4]]
    assert intlinalg.unimodular_inverse(A) == [[4, -1], [-7, 2]]
    inv = intlinalg.inverse([[2, 0], [0, 3]])
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]


def test_unimodular_inverse_rejects_det_two():
    with pytest.raises(ValueError):
        intlinalg.unimodular_inverse([[2, 0], [0, 1]])


@given(st.integers(2, 4).flatmap(lambda s: st.lists(st.lists(st.integers(-4, 4), min_size=s, max_size=s),
                                                    min_size=s - 1, max_size=s - 1)))
def test_nullvector(A):
    v = intlinalg.integer_nullvector(A)
    M = sympy.Matrix(A)
    if M.rank() < len(A):
        assert v is None
    else:
        assert v is not None and any(v)
        assert intlinalg.matvec(A, v) == [0] * len(A)
        assert sympy.igcd(*v) == 1
