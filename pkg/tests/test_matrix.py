"""
Tests for exact matrices and row reduction.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DimensionMismatchError
from src.linalg.matrix import Matrix, RowReducer, inverse, rank, rref, solve

small_ints = st.integers(min_value=-3, max_value=3)
square_3 = st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3)
wide = st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=5)


class TestMatrix:
    """Test cases for Matrix construction and arithmetic."""

    def test_from_rows_and_columns_agree(self):
        m = Matrix.from_rows([[1, 2], [3, 4], [5, 6]])
        assert m.shape == (3, 2)
        assert Matrix.from_columns([[1, 3, 5], [2, 4, 6]]) == m
        assert m.column(1) == (Fraction(2), Fraction(4), Fraction(6))

    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatchError):
            Matrix.from_rows([[1, 2], [3]])

    def test_empty_shapes(self):
        assert Matrix.from_rows([], cols=3).shape == (0, 3)
        assert Matrix.from_columns([], rows=2).shape == (2, 0)

    def test_product_and_apply(self):
        a = Matrix.from_rows([[1, 2], [0, 1]])
        b = Matrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b) == Matrix.from_rows([[2, 1], [1, 0]])
        assert a.apply([Fraction(1), Fraction(1)]) == (Fraction(3), Fraction(1))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Matrix.identity(2) @ Matrix.identity(3)
        with pytest.raises(DimensionMismatchError):
            Matrix.identity(2) + Matrix.zeros(2, 3)

    def test_block_diagonal(self):
        m = Matrix.block_diagonal(Matrix.scalar(1, 2), Matrix.identity(2))
        assert m == Matrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_power_and_trace(self):
        nilpotent = Matrix.from_rows([[0, 1], [0, 0]])
        assert nilpotent.power(2).is_zero()
        assert nilpotent.power(0) == Matrix.identity(2)
        assert Matrix.from_rows([[1, 5], [7, 3]]).trace() == 4

    def test_symmetry(self):
        assert Matrix.from_rows([[1, 2], [2, 1]]).is_symmetric()
        assert not Matrix.from_rows([[1, 2], [3, 1]]).is_symmetric()


class TestRowReduction:
    """Test cases for RowReducer, rref, rank, solve and inverse."""

    def test_rref_is_canonical(self):
        m = Matrix.from_rows([[2, 4, 2], [1, 2, 3], [3, 6, 5]])
        reduced, pivots = rref(m)
        assert pivots == (0, 2)
        assert reduced == Matrix.from_rows([[1, 2, 0], [0, 0, 1]])

    def test_add_reports_growth(self):
        reducer = RowReducer(3)
        assert reducer.add_dense([1, 1, 0])
        assert not reducer.add_dense([2, 2, 0])
        assert reducer.add_dense([0, 0, 5])
        assert reducer.rank == 2
        assert reducer.contains([3, 3, 1])
        assert not reducer.contains([1, 0, 0])

    def test_solve(self):
        m = Matrix.from_rows([[1, 1], [1, -1]])
        assert solve(m, [Fraction(3), Fraction(1)]) == (Fraction(2), Fraction(1))

    def test_solve_inconsistent(self):
        m = Matrix.from_rows([[1, 1], [2, 2]])
        assert solve(m, [Fraction(1), Fraction(3)]) is None

    def test_inverse(self):
        m = Matrix.from_rows([[2, 1], [1, 1]])
        assert inverse(m) @ m == Matrix.identity(2)

    def test_singular_inverse(self):
        with pytest.raises(DimensionMismatchError):
            inverse(Matrix.from_rows([[1, 2], [2, 4]]))

    @given(wide)
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, rows):
        m = Matrix.from_rows(rows)
        reducer = RowReducer(m.cols).extend(m.sparse_rows())
        nullspace = reducer.nullspace()
        assert reducer.rank + len(nullspace) == m.cols
        for v in nullspace:
            assert not any(m.apply(v))

    @given(square_3)
    @settings(max_examples=60, deadline=None)
    def test_inverse_when_full_rank(self, rows):
        m = Matrix.from_rows(rows)
        if rank(m) == 3:
            assert m @ inverse(m) == Matrix.identity(3)
        else:
            with pytest.raises(DimensionMismatchError):
                inverse(m)

    @given(square_3, st.lists(small_ints, min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_solve_solutions_are_exact(self, rows, rhs):
        m = Matrix.from_rows(rows)
        target = [Fraction(x) for x in rhs]
        solution = solve(m, target)
        if solution is not None:
            assert m.apply(solution) == tuple(target)
