"""
Sparse structure tensors and bilinear tables.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from src.errors import DimensionMismatchError
from src.linalg.rational import ZERO, ScalarLike, Vector, as_scalar, zero_vector

SparseVector = Dict[int, Fraction]
Entry = Tuple[int, int, int, Fraction]


def to_sparse(v: Sequence[Fraction]) -> SparseVector:
    return {k: x for k, x in enumerate(v) if x}


def to_dense(v: SparseVector, n: int) -> Vector:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return tuple(out)


def axpy(target: SparseVector, c: Fraction, v: SparseVector) -> None:
    """target += c·v, in place, dropping zeros."""
    for k, x in v.items():
        value = target.get(k, ZERO) + c * x
        if value:
            target[k] = value
        else:
            target.pop(k, None)


@dataclass(frozen=True)
class StructureTensor:
    """Structure constants c^k_ij of a skew-symmetric bracket.

    Only entries with i < j are stored, sorted, with nonzero coefficients;
    the opposite orientation is produced by antisymmetry.
    """

    dim: int
    entries: Tuple[Entry, ...]

    def __post_init__(self) -> None:
        for i, j, k, c in self.entries:
            if not (0 <= i < j < self.dim and 0 <= k < self.dim):
                raise DimensionMismatchError(f"Structure constant ({i}, {j}, {k}) invalid in dimension {self.dim}")
            if not c:
                raise DimensionMismatchError(f"Zero structure constant stored at ({i}, {j}, {k})")

    @classmethod
    def zero(cls, dim: int) -> "StructureTensor":
        return cls(dim, ())

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[Tuple[int, int, int, ScalarLike]]) -> "StructureTensor":
        """Normalise arbitrary (i, j, k, c) entries: i > j flips the sign, repeats add up."""
        acc: Dict[Tuple[int, int, int], Fraction] = {}
        for i, j, k, c in entries:
            value = as_scalar(c)
            if i == j:
                if value:
                    raise DimensionMismatchError(f"Diagonal bracket entry ({i}, {j}, {k}) must vanish")
                continue
            if i > j:
                i, j, value = j, i, -value
            acc[(i, j, k)] = acc.get((i, j, k), ZERO) + value
        return cls(dim, tuple((i, j, k, c) for (i, j, k), c in sorted(acc.items()) if c))

    @classmethod
    def from_bracket_function(
        cls, dim: int, bracket: Callable[[int, int], Sequence[Fraction]]
    ) -> "StructureTensor":
        """Tabulate [e_i, e_j] for i < j from a callable returning coordinate vectors."""
        entries: List[Entry] = []
        for i in range(dim):
            for j in range(i + 1, dim):
                for k, c in enumerate(bracket(i, j)):
                    if c:
                        entries.append((i, j, k, Fraction(c)))
        return cls(dim, tuple(entries))

    @cached_property
    def _table(self) -> Dict[Tuple[int, int], SparseVector]:
        table: Dict[Tuple[int, int], SparseVector] = {}
        for i, j, k, c in self.entries:
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c
        return table

    def basis_bracket(self, i: int, j: int) -> SparseVector:
        """[e_i, e_j] as a sparse vector; callers must not mutate it."""
        return self._table.get((i, j), {})

    def basis_bracket_dense(self, i: int, j: int) -> Vector:
        return to_dense(self.basis_bracket(i, j), self.dim)

    def bracket_sparse(self, u: SparseVector, w: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for a, x in u.items():
            for b, y in w.items():
                column = self._table.get((a, b))
                if column:
                    axpy(out, x * y, column)
        return out

    def evaluate(self, v: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionMismatchError(
                f"Bracket of vectors of length {len(v)} and {len(w)} in dimension {self.dim}"
            )
        return to_dense(self.bracket_sparse(to_sparse(v), to_sparse(w)), self.dim)

    @property
    def is_abelian(self) -> bool:
        return not self.entries

    def shifted(self, offset: int, dim: int) -> "StructureTensor":
        """Embed into a larger space, moving basis index i to i + offset."""
        return StructureTensor(dim, tuple((i + offset, j + offset, k + offset, c) for i, j, k, c in self.entries))

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"Cannot add structure tensors of dims {self.dim} and {other.dim}")
        return StructureTensor.from_entries(self.dim, self.entries + other.entries)


@dataclass(frozen=True)
class BilinearTable:
    """A bilinear map U×U → W tabulated on basis pairs.

    ``values[i][j]`` is the image of (e_i, e_j) as a vector of length
    ``target_dim``.
    """

    source_dim: int
    target_dim: int
    values: Tuple[Tuple[Vector, ...], ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.source_dim or any(len(row) != self.source_dim for row in self.values):
            raise DimensionMismatchError(f"Bilinear table must be {self.source_dim}x{self.source_dim}")
        if any(len(v) != self.target_dim for row in self.values for v in row):
            raise DimensionMismatchError(f"Bilinear table values must have length {self.target_dim}")

    @classmethod
    def zero(cls, source_dim: int, target_dim: int) -> "BilinearTable":
        empty = zero_vector(target_dim)
        return cls(source_dim, target_dim, tuple(tuple(empty for _ in range(source_dim)) for _ in range(source_dim)))

    @classmethod
    def from_function(
        cls, source_dim: int, target_dim: int, f: Callable[[int, int], Sequence[Fraction]]
    ) -> "BilinearTable":
        return cls(
            source_dim,
            target_dim,
            tuple(tuple(tuple(f(i, j)) for j in range(source_dim)) for i in range(source_dim)),
        )

    def __call__(self, i: int, j: int) -> Vector:
        return self.values[i][j]

    def evaluate(self, v: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.target_dim
        for i, x in enumerate(v):
            if not x:
                continue
            for j, y in enumerate(w):
                if not y:
                    continue
                for k, c in enumerate(self.values[i][j]):
                    if c:
                        out[k] += x * y * c
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(c for row in self.values for v in row for c in v)

    def antisymmetry_defect(self) -> Tuple[int, int, Vector]:
        """First (i, j) with values[i][j] + values[j][i] != 0, or (-1, -1, ()) if none."""
        for i in range(self.source_dim):
            for j in range(i, self.source_dim):
                s = tuple(a + b for a, b in zip(self.values[i][j], self.values[j][i]))
                if any(s):
                    return i, j, s
        return -1, -1, ()

    def is_antisymmetric(self) -> bool:
        return self.antisymmetry_defect()[0] < 0
