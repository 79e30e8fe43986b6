"""
Subspaces of a coordinate space, held in canonical RREF.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from src.errors import DimensionMismatchError
from src.linalg.matrix import Matrix, RowReducer
from src.linalg.rational import ZERO, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient_dim.

    ``basis`` is the canonical reduced row-echelon matrix of the subspace, one
    basis vector per row, so two equal subspaces compare equal structurally.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatchError(
                f"Basis has {self.basis.cols} columns for ambient dimension {self.ambient_dim}"
            )

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Fraction]]) -> "Subspace":
        reducer = RowReducer(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {ambient_dim}")
            if reducer.is_full:
                break
            reducer.add_dense(v)
        return cls.from_reducer(reducer)

    @classmethod
    def from_reducer(cls, reducer: RowReducer) -> "Subspace":
        return cls(reducer.ncols, reducer.to_matrix())

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given indices."""
        wanted = sorted(set(indices))
        rows = [[1 if c == i else 0 for c in range(ambient_dim)] for i in wanted]
        return cls(ambient_dim, Matrix.from_rows(rows, cols=ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def vectors(self) -> List[Vector]:
        return self.basis.to_rows()

    @property
    def pivots(self) -> Tuple[int, ...]:
        result = []
        for v in self.vectors:
            result.append(next(c for c, x in enumerate(v) if x))
        return tuple(result)

    def complement_indices(self) -> Tuple[int, ...]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        pivots = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in pivots)

    def _reducer(self) -> RowReducer:
        return RowReducer(self.ambient_dim).extend(self.basis.sparse_rows())

    def contains(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return not any(self.residue(v))

    def residue(self, v: Sequence[Fraction]) -> Vector:
        """Reduce ``v`` modulo the subspace; the result is supported on non-pivot columns."""
        out = list(v)
        for row, pivot in zip(self.vectors, self.pivots):
            c = out[pivot]
            if c:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of a member vector in the RREF basis (its pivot entries)."""
        if not self.contains(v):
            raise DimensionMismatchError("Vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains(v) for v in other.vectors)

    def orthogonal_complement(self, gram: Matrix) -> "Subspace":
        """{x : B(v, x) = 0 for every basis vector v}, for B given by ``gram``."""
        if gram.shape != (self.ambient_dim, self.ambient_dim):
            raise DimensionMismatchError(f"Gram of shape {gram.shape} for ambient dimension {self.ambient_dim}")
        if self.is_zero:
            return Subspace.full(self.ambient_dim)
        return kernel(self.basis @ gram)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"Ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    """All v with m·v = 0, in canonical form."""
    reducer = RowReducer(m.cols).extend(m.sparse_rows())
    return Subspace.span(m.cols, reducer.nullspace())


def kernel_of_rows(ncols: int, rows: Iterable[dict]) -> Subspace:
    """Kernel of a sparse homogeneous system fed row by row."""
    reducer = RowReducer(ncols).extend(rows)
    logger.debug(f"Sparse system of {ncols} unknowns has rank {reducer.rank}")
    return Subspace.span(ncols, reducer.nullspace())


def image(m: Matrix) -> Subspace:
    """Column span of ``m``."""
    return Subspace.span(m.rows, (m.column(c) for c in range(m.cols)))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.ambient_dim, a.vectors + b.vectors)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, as the joint kernel of both annihilators."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.is_zero or b.is_zero:
        return Subspace.zero(n)
    annihilators = [kernel(s.basis).vectors for s in (a, b)]
    rows = [v for vs in annihilators for v in vs]
    if not rows:
        return Subspace.full(n)
    return kernel(Matrix.from_rows(rows, cols=n))


def subspace_contains(a: Subspace, v: Sequence[Fraction]) -> bool:
    return a.contains(v)


def preimage(projection: Matrix, target: Subspace) -> Subspace:
    """{v : projection·v ∈ target} for a linear map into target's ambient space."""
    if projection.rows != target.ambient_dim:
        raise DimensionMismatchError(f"Projection into {projection.rows} coordinates, target in {target.ambient_dim}")
    annihilator = kernel(target.basis).vectors if not target.is_zero else [
        tuple(Fraction(1) if c == r else ZERO for c in range(target.ambient_dim))
        for r in range(target.ambient_dim)
    ]
    if not annihilator:
        return Subspace.full(projection.cols)
    return kernel(Matrix.from_rows(annihilator, cols=target.ambient_dim) @ projection)


def coordinate_projection(ideal: Subspace) -> Matrix:
    """Linear map g → g/ideal in the complement coordinates of ``ideal``.

    Row r sends v to the coefficient of e_{c_r} in the residue of v modulo
    the ideal, where c_r are the non-pivot columns.
    """
    n = ideal.ambient_dim
    complement = ideal.complement_indices()
    columns = [ideal.residue(tuple(Fraction(1) if k == c else ZERO for k in range(n))) for c in range(n)]
    return Matrix.from_rows(
        [[columns[c][q] for c in range(n)] for q in complement], cols=n
    )
