from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, strategies as st

from sheaflab import exact

small_ints = st.integers(-4, 4)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)))


def test_rref_known():
    R, piv = exact.rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert exact.is_zero(R - exact.identity(2))


def test_rank_and_nullspace_of_boundary_row():
    A = [[-1, 0, 0, 1, 0, 0]]
    assert exact.rank(A) == 1
    N = exact.nullspace(A)
    assert N.shape == (6, 5)
    assert exact.is_zero(exact.matmul(exact.as_exact(A), N))


def test_empty_shapes():
    assert exact.rank(np.zeros((0, 3))) == 0
    assert exact.nullspace(np.zeros((0, 3))).shape == (3, 3)
    assert exact.matmul(exact.zeros((2, 0)), exact.zeros((0, 4))).shape == (2, 4)


def test_float_conversion_is_exact():
    assert exact.to_fraction(0.1) == Fraction(3602879701896397, 36028797018963968)
    assert exact.to_fraction("1/3") == Fraction(1, 3)


@given(int_matrices())
def test_rank_matches_sympy(rows):
    assert exact.rank(rows) == sympy.Matrix(rows).rank()


@given(int_matrices())
def test_nullspace_dimension_and_kernel(rows):
    N = exact.nullspace(rows)
    A = exact.as_exact(rows)
    assert N.shape[1] == A.shape[1] - exact.rank(A)
    assert exact.is_zero(exact.matmul(A, N))
    assert exact.rank(N.T) == N.shape[1]
