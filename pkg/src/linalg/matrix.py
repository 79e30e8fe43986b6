"""
Dense rational matrices and exact row reduction.

Row reduction is incremental and sparse: rows are dictionaries from column to
nonzero coefficient, and the reducer keeps its rows in reduced row-echelon
form after every insertion. Large, sparse homogeneous systems (centroid
equations, joint kernels) are fed to it row by row without ever being
materialised as dense matrices.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.errors import DimensionMismatchError
from src.linalg.rational import ONE, ZERO, ScalarLike, Vector, as_scalar

logger = logging.getLogger(__name__)

SparseRow = Dict[int, Fraction]


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with rational entries, stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Matrix of shape {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], cols: Optional[int] = None) -> "Matrix":
        """Build a matrix from nested rows; ``cols`` is required when there are no rows."""
        rows = list(rows)
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise DimensionMismatchError(f"Expected {cols} columns, got {width}")
        entries: List[Fraction] = []
        for r, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatchError(f"Row {r} has {len(row)} entries, expected {width}")
            entries.extend(as_scalar(x) for x in row)
        return cls(len(rows), width, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]], rows: Optional[int] = None) -> "Matrix":
        columns = list(columns)
        height = len(columns[0]) if columns else (rows or 0)
        return cls.from_rows(columns, cols=height).transpose() if columns else cls.zeros(height, 0)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[SparseRow], cols: int) -> "Matrix":
        entries = [ZERO] * (len(rows) * cols)
        for r, row in enumerate(rows):
            for c, value in row.items():
                entries[r * cols + c] = value
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if r == c else ZERO for r in range(n) for c in range(n)))

    @classmethod
    def scalar(cls, n: int, value: ScalarLike) -> "Matrix":
        v = as_scalar(value)
        return cls(n, n, tuple(v if r == c else ZERO for r in range(n) for c in range(n)))

    @classmethod
    def block_diagonal(cls, *blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        entries = [ZERO] * (rows * cols)
        r0 = c0 = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    entries[(r0 + r) * cols + c0 + c] = b.entries[r * b.cols + c]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, tuple(entries))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        r, c = index
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> Vector:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def to_rows(self) -> List[Vector]:
        return [self.row(r) for r in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[r * self.cols + c] for c in range(self.cols) for r in range(self.rows)),
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product ``self · v``."""
        if len(v) != self.cols:
            raise DimensionMismatchError(f"Cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        support = [(c, x) for c, x in enumerate(v) if x]
        out = []
        for r in range(self.rows):
            base = r * self.cols
            out.append(sum((self.entries[base + c] * x for c, x in support), ZERO))
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        other_rows = [[(c, x) for c, x in enumerate(other.row(k)) if x] for k in range(other.rows)]
        entries = [ZERO] * (self.rows * other.cols)
        for r in range(self.rows):
            base = r * other.cols
            for k in range(self.cols):
                a = self.entries[r * self.cols + k]
                if not a:
                    continue
                for c, x in other_rows[k]:
                    entries[base + c] += a * x
        return Matrix(self.rows, other.cols, tuple(entries))

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: ScalarLike) -> "Matrix":
        s = as_scalar(c)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("Only square matrices have powers")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[r, c] == self[c, r] for r in range(self.rows) for c in range(r + 1, self.cols)
        )

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError("Trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), tuple(self[r, c] for r in rows for c in cols))

    def sparse_rows(self) -> List[SparseRow]:
        return [{c: x for c, x in enumerate(self.row(r)) if x} for r in range(self.rows)]


class RowReducer:
    """Incremental reduced row-echelon form over the rationals.

    Every stored row has a leading 1 in its pivot column and zeros in every
    other pivot column, so reducing an incoming row needs one subtraction per
    pivot column in its support.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivot_rows: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    @property
    def is_full(self) -> bool:
        return self.rank == self.ncols

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(sorted(self._pivot_rows))

    def reduce(self, row: SparseRow) -> SparseRow:
        """Return the residue of ``row`` modulo the stored span."""
        residue = {c: x for c, x in row.items() if x}
        for col in [c for c in residue if c in self._pivot_rows]:
            coefficient = residue.get(col)
            if not coefficient:
                continue
            for c, x in self._pivot_rows[col].items():
                value = residue.get(c, ZERO) - coefficient * x
                if value:
                    residue[c] = value
                else:
                    residue.pop(c, None)
        return residue

    def add(self, row: SparseRow) -> bool:
        """Insert a row; return True when it enlarged the span."""
        if self.is_full:
            return False
        residue = self.reduce(row)
        if not residue:
            return False

        pivot = min(residue)
        inverse = ONE / residue[pivot]
        if inverse != ONE:
            residue = {c: x * inverse for c, x in residue.items()}

        for other in self._pivot_rows.values():
            coefficient = other.get(pivot)
            if coefficient:
                for c, x in residue.items():
                    value = other.get(c, ZERO) - coefficient * x
                    if value:
                        other[c] = value
                    else:
                        other.pop(c, None)

        self._pivot_rows[pivot] = residue
        return True

    def add_dense(self, v: Sequence[Fraction]) -> bool:
        return self.add({c: x for c, x in enumerate(v) if x})

    def extend(self, rows: Iterable[SparseRow]) -> "RowReducer":
        for row in rows:
            if self.is_full:
                break
            self.add(row)
        return self

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not self.reduce({c: x for c, x in enumerate(v) if x})

    def rref_rows(self) -> List[SparseRow]:
        return [dict(self._pivot_rows[p]) for p in sorted(self._pivot_rows)]

    def to_matrix(self) -> Matrix:
        return Matrix.from_sparse_rows(self.rref_rows(), self.ncols)

    def nullspace(self) -> List[Vector]:
        """Basis of the solution space of the homogeneous system of stored rows."""
        pivots = set(self._pivot_rows)
        basis = []
        for free in range(self.ncols):
            if free in pivots:
                continue
            v = [ZERO] * self.ncols
            v[free] = ONE
            for p, row in self._pivot_rows.items():
                x = row.get(free)
                if x:
                    v[p] = -x
            basis.append(tuple(v))
        return basis


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Canonical reduced row-echelon form of ``m`` and its pivot columns.

    Zero rows are dropped; the rank is the number of pivots.
    """
    reducer = RowReducer(m.cols).extend(m.sparse_rows())
    return reducer.to_matrix(), reducer.pivots


def rank(m: Matrix) -> int:
    return RowReducer(m.cols).extend(m.sparse_rows()).rank


def solve(m: Matrix, rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One exact solution of ``m · x = rhs``, or None when inconsistent.

    Free variables are set to zero.
    """
    if len(rhs) != m.rows:
        raise DimensionMismatchError(f"Right-hand side of length {len(rhs)} for {m.rows} equations")
    augmented = []
    for r in range(m.rows):
        row = {c: x for c, x in enumerate(m.row(r)) if x}
        if rhs[r]:
            row[m.cols] = as_scalar(rhs[r])
        augmented.append(row)
    reducer = RowReducer(m.cols + 1).extend(augmented)
    if m.cols in reducer.pivots:
        return None
    solution = [ZERO] * m.cols
    for row in reducer.rref_rows():
        pivot = min(row)
        solution[pivot] = row.get(m.cols, ZERO)
    return tuple(solution)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a nonsingular square matrix."""
    if not m.is_square:
        raise DimensionMismatchError(f"Cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    augmented = []
    for r in range(n):
        row = {c: x for c, x in enumerate(m.row(r)) if x}
        row[n + r] = ONE
        augmented.append(row)
    reducer = RowReducer(2 * n).extend(augmented)
    if reducer.pivots[:n] != tuple(range(n)) or reducer.rank != n:
        raise DimensionMismatchError("Matrix is singular")
    rows = reducer.rref_rows()
    return Matrix(n, n, tuple(rows[r].get(n + c, ZERO) for r in range(n) for c in range(n)))
