"""
Centroid computation and the simplicity certificate for Lie algebras.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List

from src.algebra.homlie import AnyAlgebra, killing, underlying
from src.algebra.report import CheckResult
from src.algebra.verify import check_classical_jacobi
from src.linalg.matrix import Matrix, rank
from src.linalg.subspace import Subspace, kernel_of_rows

logger = logging.getLogger(__name__)


def centroid_space(g: AnyAlgebra) -> Subspace:
    """All C with C[x, y] = [Cx, y] = [x, Cy], as vectors in F^(n·n).

    The unknown C[a][b] sits at coordinate a·n + b. By skew-symmetry both
    conditions reduce to C∘ad(e_i) = ad(e_i)∘C for every i.
    """
    g = underlying(g)
    n = g.dim
    bracket = g.bracket

    def rows() -> Iterator[Dict[int, Fraction]]:
        for i in range(n):
            # ad(e_i)[t][s] is the coefficient of e_t in [e_i, e_s]
            columns = [bracket.basis_bracket(i, s) for s in range(n)]
            by_row: List[Dict[int, Fraction]] = [dict() for _ in range(n)]
            for s, column in enumerate(columns):
                for t, c in column.items():
                    by_row[t][s] = c
            for r in range(n):
                for s in range(n):
                    row: Dict[int, Fraction] = {}
                    for t, c in columns[s].items():
                        row[r * n + t] = row.get(r * n + t, Fraction(0)) + c
                    for t, c in by_row[r].items():
                        value = row.get(t * n + s, Fraction(0)) - c
                        if value:
                            row[t * n + s] = value
                        else:
                            row.pop(t * n + s, None)
                    if row:
                        yield row

    space = kernel_of_rows(n * n, rows())
    logger.debug(f"Centroid of a {n}-dimensional algebra has dimension {space.dim}")
    return space


def centroid_element(n: int, v: Any) -> Matrix:
    """Reshape a centroid-space vector into an n×n matrix."""
    return Matrix(n, n, tuple(v))


@dataclass(frozen=True)
class SimplicityCertificate:
    """Jacobi holds, the Killing form is nondegenerate and the centroid is one-dimensional."""

    jacobi: CheckResult
    killing_rank: int
    centroid_dim: int
    dim: int

    @property
    def killing_nondegenerate(self) -> bool:
        return self.killing_rank == self.dim

    @property
    def simple(self) -> bool:
        return bool(self.jacobi) and self.killing_nondegenerate and self.centroid_dim == 1

    def __bool__(self) -> bool:
        return self.simple

    def to_dict(self) -> Dict[str, Any]:
        return {
            "simple": self.simple,
            "jacobi": self.jacobi.to_dict(),
            "killing_nondegenerate": self.killing_nondegenerate,
            "killing_rank": self.killing_rank,
            "centroid_dim": self.centroid_dim,
        }


def certify_simple(g: AnyAlgebra) -> SimplicityCertificate:
    """Certificate that a Lie algebra is simple.

    A nondegenerate Killing form makes the algebra semisimple; each simple
    summand contributes at least one dimension to the centroid, so a
    one-dimensional centroid leaves a single summand.
    """
    g = underlying(g)
    jacobi = check_classical_jacobi(g)["jacobi"]
    killing_rank = rank(killing(g)) if g.dim else 0
    centroid_dim = centroid_space(g).dim
    certificate = SimplicityCertificate(jacobi, killing_rank, centroid_dim, g.dim)
    logger.debug(f"Simplicity certificate for dimension {g.dim}: {certificate.simple}")
    return certificate
