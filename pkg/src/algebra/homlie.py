"""
Hom-Lie algebras, quadratic Hom-Lie algebras and bracket-level operations.

Vectors are coordinate tuples in the standard basis e_0 .. e_{n-1}.
Matrices act on column vectors: column j of the twist is T(e_j).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

from src.algebra.report import CheckResult
from src.algebra.tensor import SparseVector, StructureTensor, axpy, to_dense, to_sparse
from src.errors import AxiomError, DimensionMismatchError, NotAnIdealError
from src.linalg.matrix import Matrix, RowReducer, rank
from src.linalg.rational import ZERO, Vector, unit_vector
from src.linalg.subspace import Subspace, coordinate_projection, kernel_of_rows, subspace_contains

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomLieAlgebra:
    """A vector space with a skew bracket and a twist map T."""

    dim: int
    bracket: StructureTensor
    twist: Matrix
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.bracket.dim != self.dim:
            raise DimensionMismatchError(f"Bracket of dimension {self.bracket.dim} for algebra of dimension {self.dim}")
        if self.twist.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Twist of shape {self.twist.shape} for algebra of dimension {self.dim}")
        if self.labels is not None and len(self.labels) != self.dim:
            raise DimensionMismatchError(f"{len(self.labels)} labels for algebra of dimension {self.dim}")

    @cached_property
    def twist_columns(self) -> Tuple[SparseVector, ...]:
        """T(e_j) as sparse vectors."""
        return tuple(to_sparse(self.twist.column(j)) for j in range(self.dim))

    def apply_twist(self, v: Sequence[Fraction]) -> Vector:
        return self.twist.apply(v)

    def with_twist(self, twist: Matrix) -> "HomLieAlgebra":
        return HomLieAlgebra(self.dim, self.bracket, twist, self.labels)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"


@dataclass(frozen=True)
class QuadraticHomLieAlgebra:
    """A Hom-Lie algebra with a metric given by its Gram matrix.

    With ``strict`` (the default) the Gram matrix must be symmetric and
    nondegenerate; parsers pass ``strict=False`` so that ``check_metric`` can
    report a bad metric instead of refusing it.
    """

    algebra: HomLieAlgebra
    gram: Matrix
    strict: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        n = self.algebra.dim
        if self.gram.shape != (n, n):
            raise DimensionMismatchError(f"Gram of shape {self.gram.shape} for algebra of dimension {n}")
        if not self.strict:
            return
        if not self.gram.is_symmetric():
            raise AxiomError("Gram matrix is not symmetric", check="metric.symmetric")
        if rank(self.gram) != n:
            raise AxiomError("Gram matrix is degenerate", check="metric.nondegenerate")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def bracket(self) -> StructureTensor:
        return self.algebra.bracket

    @property
    def twist(self) -> Matrix:
        return self.algebra.twist

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self.algebra.labels

    def form(self, v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
        """B(v, w)."""
        gw = self.gram.apply(w)
        return sum((a * b for a, b in zip(v, gw) if a), ZERO)


AnyAlgebra = Union[HomLieAlgebra, QuadraticHomLieAlgebra]


def underlying(g: AnyAlgebra) -> HomLieAlgebra:
    return g.algebra if isinstance(g, QuadraticHomLieAlgebra) else g


def _check_vector(g: HomLieAlgebra, v: Sequence[Fraction]) -> None:
    if len(v) != g.dim:
        raise DimensionMismatchError(f"Vector of length {len(v)} for algebra of dimension {g.dim}")


def bracket_eval(g: AnyAlgebra, v: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
    """[v, w] by bilinear extension of the structure constants."""
    g = underlying(g)
    _check_vector(g, v)
    _check_vector(g, w)
    return g.bracket.evaluate(v, w)


def adjoint(g: AnyAlgebra, v: Sequence[Fraction]) -> Matrix:
    """Matrix of y ↦ [v, y]."""
    g = underlying(g)
    _check_vector(g, v)
    sv = to_sparse(v)
    columns = [to_dense(g.bracket.bracket_sparse(sv, {j: Fraction(1)}), g.dim) for j in range(g.dim)]
    return Matrix.from_columns(columns, rows=g.dim)


def basis_adjoints(g: AnyAlgebra) -> List[Matrix]:
    g = underlying(g)
    return [adjoint(g, unit_vector(g.dim, i)) for i in range(g.dim)]


def killing(g: AnyAlgebra) -> Matrix:
    """Trace form K(e_i, e_j) = tr(ad e_i ∘ ad e_j)."""
    g = underlying(g)
    n = g.dim
    ads = basis_adjoints(g)
    entries = []
    for i in range(n):
        for j in range(n):
            a, b = ads[i], ads[j]
            entries.append(sum((a[r, s] * b[s, r] for r in range(n) for s in range(n) if a[r, s]), ZERO))
    return Matrix(n, n, tuple(entries))


def derived_subalgebra(g: AnyAlgebra) -> Subspace:
    """Span of all [e_i, e_j]."""
    g = underlying(g)
    reducer = RowReducer(g.dim)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if reducer.is_full:
                break
            reducer.add(g.bracket.basis_bracket(i, j))
    return Subspace.from_reducer(reducer)


def center(g: AnyAlgebra) -> Subspace:
    """{v : [v, e_j] = 0 for every j}, as a joint kernel."""
    g = underlying(g)
    n = g.dim

    def rows():
        for j in range(n):
            per_k: dict = {}
            for i in range(n):
                for k, c in g.bracket.basis_bracket(i, j).items():
                    per_k.setdefault(k, {})[i] = c
            yield from per_k.values()

    return kernel_of_rows(n, rows())


def _escape(g: HomLieAlgebra, s: Subspace, v: Sequence[Fraction]) -> Optional[Tuple[Tuple[int, ...], Vector]]:
    """First image of ``v`` (under T, then ad e_i) that leaves ``s``."""
    tv = g.apply_twist(v)
    if not subspace_contains(s, tv):
        return (), tv
    sv = to_sparse(v)
    for i in range(g.dim):
        w = to_dense(g.bracket.bracket_sparse({i: Fraction(1)}, sv), g.dim)
        if not subspace_contains(s, w):
            return (i,), w
    return None


def ideal_closure(g: AnyAlgebra, seed: Subspace) -> Subspace:
    """Smallest subspace containing ``seed`` closed under T and ad e_i."""
    g = underlying(g)
    if seed.ambient_dim != g.dim:
        raise DimensionMismatchError(f"Seed in ambient dimension {seed.ambient_dim}, algebra of dimension {g.dim}")
    reducer = RowReducer(g.dim)
    pending: List[SparseVector] = []
    for v in seed.basis.sparse_rows():
        if reducer.add(v):
            pending.append(v)
    sweeps = 0
    while pending and not reducer.is_full:
        v = pending.pop()
        sweeps += 1
        candidates: List[SparseVector] = []
        tv: SparseVector = {}
        for j, x in v.items():
            axpy(tv, x, g.twist_columns[j])
        candidates.append(tv)
        for i in range(g.dim):
            candidates.append(g.bracket.bracket_sparse({i: Fraction(1)}, v))
        for w in candidates:
            if w and reducer.add(w):
                pending.append(w)
    logger.debug(f"Ideal closure reached dimension {reducer.rank} after {sweeps} steps")
    return Subspace.from_reducer(reducer)


def is_ideal(g: AnyAlgebra, s: Subspace) -> CheckResult:
    """True iff ``s`` is closed under T and under bracketing with g.

    The witness names the escaping basis vector of ``s`` (its row index),
    the basis element it was bracketed with (absent for the twist) and the
    escaping vector.
    """
    g = underlying(g)
    for r, b in enumerate(s.vectors):
        escape = _escape(g, s, b)
        if escape is not None:
            via, w = escape
            note = "twist" if not via else "bracket"
            return CheckResult.fail("ideal", (r,) + via, w, note)
    return CheckResult.ok("ideal")


def quotient(g: AnyAlgebra, ideal: Subspace) -> Tuple[HomLieAlgebra, Matrix]:
    """Induced algebra on g/ideal in the complement coordinates of the ideal."""
    g = underlying(g)
    check = is_ideal(g, ideal)
    if not check:
        raise NotAnIdealError("Cannot form a quotient by a subspace that is not an ideal", witness=check.witness)
    projection = coordinate_projection(ideal)
    complement = ideal.complement_indices()
    m = len(complement)

    def induced_bracket(p: int, q: int) -> Vector:
        return projection.apply(g.bracket.basis_bracket_dense(complement[p], complement[q]))

    bracket = StructureTensor.from_bracket_function(m, induced_bracket)
    twist = Matrix.from_columns([projection.apply(g.twist.column(c)) for c in complement], rows=m)
    labels = tuple(g.label(c) for c in complement) if g.labels else None
    logger.debug(f"Quotient of dimension {m} by ideal of dimension {ideal.dim}")
    return HomLieAlgebra(m, bracket, twist, labels), projection


def restrict_algebra(g: AnyAlgebra, v: Subspace) -> HomLieAlgebra:
    """The structure induced on a T-stable subalgebra, in its RREF basis coordinates."""
    g = underlying(g)
    basis = v.vectors
    n = len(basis)
    images = []
    for b in basis:
        tb = g.apply_twist(b)
        if not v.contains(tb):
            raise NotAnIdealError("Subspace is not stable under the twist", witness=tb)
        images.append(v.coordinates(tb))

    def restricted_bracket(p: int, q: int) -> Vector:
        w = g.bracket.evaluate(basis[p], basis[q])
        if not v.contains(w):
            raise NotAnIdealError("Subspace is not closed under the bracket", witness=w)
        return v.coordinates(w)

    bracket = StructureTensor.from_bracket_function(n, restricted_bracket)
    twist = Matrix.from_columns(images, rows=n) if n else Matrix.zeros(0, 0)
    return HomLieAlgebra(n, bracket, twist)


def restrict(q: QuadraticHomLieAlgebra, v: Subspace) -> QuadraticHomLieAlgebra:
    """Restriction to a T-stable subalgebra on which the metric stays nondegenerate."""
    algebra = restrict_algebra(q.algebra, v)
    gram = v.basis @ q.gram @ v.basis.transpose()
    return QuadraticHomLieAlgebra(algebra, gram)


def direct_sum_algebras(a: AnyAlgebra, b: AnyAlgebra) -> HomLieAlgebra:
    a, b = underlying(a), underlying(b)
    n = a.dim + b.dim
    bracket = a.bracket.shifted(0, n) + b.bracket.shifted(a.dim, n)
    labels = None
    if a.labels or b.labels:
        labels = tuple(a.label(i) for i in range(a.dim)) + tuple(b.label(i) for i in range(b.dim))
    return HomLieAlgebra(n, bracket, Matrix.block_diagonal(a.twist, b.twist), labels)


def direct_sum(a: QuadraticHomLieAlgebra, b: QuadraticHomLieAlgebra) -> QuadraticHomLieAlgebra:
    """Block-diagonal bracket, twist and metric."""
    return QuadraticHomLieAlgebra(direct_sum_algebras(a, b), Matrix.block_diagonal(a.gram, b.gram))


def is_derivation(g: AnyAlgebra, d: Matrix) -> CheckResult:
    """D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j] on all basis pairs."""
    g = underlying(g)
    if d.shape != (g.dim, g.dim):
        raise DimensionMismatchError(f"Map of shape {d.shape} on algebra of dimension {g.dim}")
    columns = [to_sparse(d.column(j)) for j in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs: SparseVector = {}
            for k, c in g.bracket.basis_bracket(i, j).items():
                axpy(lhs, c, columns[k])
            axpy(lhs, Fraction(-1), g.bracket.bracket_sparse(columns[i], {j: Fraction(1)}))
            axpy(lhs, Fraction(-1), g.bracket.bracket_sparse({i: Fraction(1)}, columns[j]))
            if lhs:
                return CheckResult.fail("derivation", (i, j), to_dense(lhs, g.dim))
    return CheckResult.ok("derivation")


def is_skew_adjoint(gram: Matrix, f: Matrix) -> CheckResult:
    """B(f x, y) = -B(x, f y), i.e. fᵀ·gram + gram·f = 0."""
    if f.shape != gram.shape:
        raise DimensionMismatchError(f"Map of shape {f.shape} against gram of shape {gram.shape}")
    s = f.transpose() @ gram + gram @ f
    for i in range(s.rows):
        for j in range(s.cols):
            if s[i, j]:
                return CheckResult.fail("skew_adjoint", (i, j), (s[i, j],))
    return CheckResult.ok("skew_adjoint")


def induced_lie_algebra(q: AnyAlgebra) -> AnyAlgebra:
    """The same space with bracket [x, y]' = T[x, y], twist and metric unchanged."""
    g = underlying(q)

    def twisted(i: int, j: int) -> Vector:
        out: SparseVector = {}
        for k, c in g.bracket.basis_bracket(i, j).items():
            axpy(out, c, g.twist_columns[k])
        return to_dense(out, g.dim)

    lie = HomLieAlgebra(g.dim, StructureTensor.from_bracket_function(g.dim, twisted), g.twist, g.labels)
    if isinstance(q, QuadraticHomLieAlgebra):
        return QuadraticHomLieAlgebra(lie, q.gram, strict=q.strict)
    return lie
