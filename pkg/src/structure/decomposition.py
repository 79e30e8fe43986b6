"""
Decomposition of a quadratic Hom-Lie algebra g = s ⊕ h ⊕ I^⊥.

I is the maximal ideal over Ker(T) + Im(T), I^⊥ its orthogonal, h a
complement of I^⊥ inside I and s an isotropic complement of I paired with
I^⊥ by the metric. The frame (rows s, h, then a basis α of I^⊥ dual to s)
rewrites g in coordinates where every block map of the double extension can
be read off directly.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from src.algebra.homlie import HomLieAlgebra, QuadraticHomLieAlgebra
from src.algebra.tensor import BilinearTable, StructureTensor, to_sparse
from src.algebra.verify import check_centroid, check_classical_jacobi, nilpotency_index
from src.errors import StructureError
from src.extension.builder import build
from src.extension.data import DoubleExtensionData
from src.linalg.matrix import Matrix, RowReducer, inverse, rank
from src.linalg.rational import Vector
from src.linalg.subspace import Subspace, kernel
from src.monitoring.logger_config import log_operation
from src.structure.maximal_ideal import maximal_ideal

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DecompositionData:
    """Every block map of g in the frame (s, h, I^⊥).

    Maps valued in I^⊥ are stored after applying ξ, i.e. in the dual
    coordinates of s*. ``sigma`` is kept on I^⊥ itself (α coordinates).
    """

    maximal_ideal: Subspace
    iso_radical: Subspace
    h_space: Subspace
    s_space: Subspace
    frame: Matrix
    xi: Matrix
    bracket_s: StructureTensor
    bracket_h: StructureTensor
    theta: Matrix
    gram_h: Matrix
    phi: Matrix
    varphi: Matrix
    rho: Tuple[Matrix, ...]
    tau: Tuple[Matrix, ...]
    sigma: Tuple[Matrix, ...]
    gamma: BilinearTable
    lambda_: BilinearTable
    mu: BilinearTable
    L: Matrix

    @property
    def s_dim(self) -> int:
        return self.bracket_s.dim

    @property
    def h_dim(self) -> int:
        return self.bracket_h.dim

    def to_extension(self) -> DoubleExtensionData:
        """The extension data that rebuilds g in frame coordinates."""
        s = self.s_dim
        mu_entries = [
            (i, j, k, c)
            for i in range(s) for j in range(i + 1, s)
            for k, c in enumerate(self.mu(i, j)) if c
        ]
        return DoubleExtensionData(
            s_dim=s,
            h_dim=self.h_dim,
            bracket_s=self.bracket_s,
            bracket_h=self.bracket_h,
            theta=self.theta,
            gram_h=self.gram_h,
            phi=self.phi,
            varphi=self.varphi,
            rho=self.rho,
            tau=self.tau,
            mu=StructureTensor.from_entries(s, mu_entries),
        )


def assembled(q: QuadraticHomLieAlgebra, frame: Matrix) -> QuadraticHomLieAlgebra:
    """q rewritten in the basis given by the rows of ``frame``.

    Coordinates of v in the new basis are inverse(frameᵀ)·v.
    """
    n = q.dim
    if frame.shape != (n, n):
        raise StructureError(f"Frame of shape {frame.shape} for algebra of dimension {n}")
    if rank(frame) != n:
        raise StructureError("Frame rows are not a basis")
    to_frame = inverse(frame.transpose())
    rows = frame.to_rows()
    sparse_rows = [to_sparse(r) for r in rows]

    def new_bracket(a: int, b: int) -> Vector:
        value = q.bracket.bracket_sparse(sparse_rows[a], sparse_rows[b])
        dense = [Fraction(0)] * n
        for k, c in value.items():
            dense[k] = c
        return to_frame.apply(dense)

    bracket = StructureTensor.from_bracket_function(n, new_bracket)
    twist = Matrix.from_columns([to_frame.apply(q.twist.apply(r)) for r in rows], rows=n) if n else Matrix.zeros(0, 0)
    gram = frame @ q.gram @ frame.transpose()
    return QuadraticHomLieAlgebra(HomLieAlgebra(n, bracket, twist), gram, strict=q.strict)


def _extend(seed: Sequence[Vector], candidates: Sequence[Vector], n: int) -> List[Vector]:
    """Candidates that enlarge span(seed), taken greedily in order."""
    reducer = RowReducer(n)
    for v in seed:
        reducer.add_dense(v)
    return [v for v in candidates if reducer.add_dense(v)]


def decomposition_frame(q: QuadraticHomLieAlgebra, ideal: Subspace) -> Tuple[Matrix, int, int]:
    """Frame rows (s, h, α) with s isotropic, B(s_i, α_k) = δ_ik and h ⊥ s ⊕ α."""
    n = q.dim
    gram = q.gram
    iso_radical = ideal.orthogonal_complement(gram)
    if not ideal.contains_subspace(iso_radical):
        raise StructureError("algebra is decomposable: the orthogonal of the maximal ideal is not inside it")

    h_rows = _extend(iso_radical.vectors, ideal.vectors, n)
    h_perp = kernel(Matrix.from_rows(h_rows, cols=n) @ gram) if h_rows else Subspace.full(n)
    s0_rows = _extend(iso_radical.vectors, h_perp.vectors, n)
    m, d = len(s0_rows), len(h_rows)
    if m != iso_radical.dim or 2 * m + d != n:
        raise StructureError(f"Inconsistent block dimensions s={m}, h={d}, I^perp={iso_radical.dim}")

    if d and rank(Matrix.from_rows(h_rows, cols=n) @ gram @ Matrix.from_rows(h_rows, cols=n).transpose()) != d:
        raise StructureError("metric is degenerate on h")

    s0 = Matrix.from_rows(s0_rows, cols=n)
    alpha0 = iso_radical.basis
    pairing = s0 @ gram @ alpha0.transpose()
    if rank(pairing) != m:
        raise StructureError("s does not pair nondegenerately with I^perp")
    alpha = inverse(pairing).transpose() @ alpha0
    s_gram = s0 @ gram @ s0.transpose()
    s = s0 - (s_gram @ alpha).scale(HALF)

    frame = Matrix.from_rows(s.to_rows() + h_rows + alpha.to_rows(), cols=n)
    return frame, m, d


def _block(v: Sequence[Fraction], start: int, stop: int) -> Vector:
    return tuple(v[start:stop])


def _columns_matrix(columns: List[Vector], rows: int) -> Matrix:
    if not columns:
        return Matrix.zeros(rows, 0)
    return Matrix.from_columns(columns, rows=rows)


def extract_blocks(a: QuadraticHomLieAlgebra, m: int, d: int) -> Dict[str, Any]:
    """Read every block map off the assembled algebra ``a``."""
    n = a.dim
    S, H, A = 0, m, m + d
    xi = a.gram.submatrix(range(S, H), range(A, n))

    def bracket(p: int, r: int) -> Vector:
        return a.bracket.basis_bracket_dense(p, r)

    def dual(v: Vector) -> Vector:
        return xi.apply(_block(v, A, n))

    twist_cols = [a.twist.column(c) for c in range(n)]
    return {
        "xi": xi,
        "bracket_s": StructureTensor.from_bracket_function(m, lambda i, j: _block(bracket(i, j), S, H)),
        "lambda_": BilinearTable.from_function(m, d, lambda i, j: _block(bracket(i, j), H, A)),
        "mu": BilinearTable.from_function(m, m, lambda i, j: dual(bracket(i, j))),
        "rho": tuple(
            _columns_matrix([_block(bracket(i, H + u), H, A) for u in range(d)], d) for i in range(m)
        ),
        "tau": tuple(
            _columns_matrix([dual(bracket(i, H + u)) for u in range(d)], m) for i in range(m)
        ),
        "sigma": tuple(
            _columns_matrix([_block(bracket(i, A + k), A, n) for k in range(m)], m) for i in range(m)
        ),
        "bracket_h": StructureTensor.from_bracket_function(d, lambda u, v: _block(bracket(H + u, H + v), H, A)),
        "gamma": BilinearTable.from_function(d, m, lambda u, v: dual(bracket(H + u, H + v))),
        "phi": _columns_matrix([_block(twist_cols[j], H, A) for j in range(m)], d),
        "varphi": _columns_matrix([dual(twist_cols[j]) for j in range(m)], m),
        "theta": _columns_matrix([_block(twist_cols[H + u], H, A) for u in range(d)], d),
        "L": _columns_matrix([dual(twist_cols[H + u]) for u in range(d)], m),
        "gram_h": a.gram.submatrix(range(H, A), range(H, A)),
    }


@log_operation("decompose")
def decompose(q: QuadraticHomLieAlgebra) -> DecompositionData:
    """Split q along its maximal ideal and read off the double-extension data."""
    if not check_centroid(q):
        raise StructureError("twist is not in the centroid")
    if nilpotency_index(q.twist) is None:
        raise StructureError("twist is not nilpotent")
    if check_classical_jacobi(q):
        logger.warning("Decomposing an algebra that satisfies the classical Jacobi identity")

    ideal = maximal_ideal(q)
    frame, m, d = decomposition_frame(q, ideal)
    blocks = extract_blocks(assembled(q, frame), m, d)
    rows = frame.to_rows()
    data = DecompositionData(
        maximal_ideal=ideal,
        iso_radical=ideal.orthogonal_complement(q.gram),
        h_space=Subspace.span(q.dim, rows[m:m + d]),
        s_space=Subspace.span(q.dim, rows[:m]),
        frame=frame,
        **blocks,
    )
    logger.info(f"Decomposed algebra of dimension {q.dim} into s={m}, h={d}, I^perp={m}")
    return data


@dataclass(frozen=True)
class RoundTripResult:
    """Comparison of g in frame coordinates with the algebra rebuilt from its data."""

    decomposition: DecompositionData
    original: QuadraticHomLieAlgebra
    rebuilt: QuadraticHomLieAlgebra
    bracket_match: bool
    twist_match: bool
    gram_match: bool
    isometry: bool

    @property
    def exact_match(self) -> bool:
        return self.bracket_match and self.twist_match and self.gram_match and self.isometry

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exact_match": self.exact_match,
            "bracket_match": self.bracket_match,
            "twist_match": self.twist_match,
            "gram_match": self.gram_match,
            "isometry": self.isometry,
            "dim": self.original.dim,
            "s_dim": self.decomposition.s_dim,
            "h_dim": self.decomposition.h_dim,
        }


def roundtrip(q: QuadraticHomLieAlgebra) -> RoundTripResult:
    """Decompose, rebuild and compare exactly in the assembled coordinates."""
    data = decompose(q)
    original = assembled(q, data.frame)
    rebuilt = build(data.to_extension())
    result = RoundTripResult(
        decomposition=data,
        original=original,
        rebuilt=rebuilt,
        bracket_match=original.bracket == rebuilt.bracket,
        twist_match=original.twist == rebuilt.twist,
        gram_match=original.gram == rebuilt.gram,
        isometry=data.frame @ q.gram @ data.frame.transpose() == rebuilt.gram,
    )
    logger.info(f"Round trip on dimension {q.dim}: exact_match={result.exact_match}")
    return result
