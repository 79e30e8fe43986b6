"""
Maps determined by the extension data: L, λ, γ and the coadjoint action.
"""

from fractions import Fraction
from typing import List, Sequence

from src.algebra.homlie import HomLieAlgebra, adjoint
from src.algebra.tensor import BilinearTable, StructureTensor
from src.errors import AxiomError
from src.extension.data import DoubleExtensionData
from src.linalg.matrix import Matrix, rank, solve
from src.linalg.rational import unit_vector


def derive_L(d: DoubleExtensionData) -> Matrix:
    """L(u)(x) = B_h(u, φ(x)); in coordinates L = φᵀ·B_h, an s×h matrix."""
    return d.phi.transpose() @ d.gram_h


def derive_lambda(d: DoubleExtensionData) -> BilinearTable:
    """λ(x_i, x_j) ∈ h, the unique solution of B_h(λ(x_i, x_j), u) = -τ(x_i)(u)(x_j)."""
    if rank(d.gram_h) != d.h_dim:
        raise AxiomError("gram_h is singular; λ is not determined", check="metric.nondegenerate")

    def value(i: int, j: int) -> List[Fraction]:
        rhs = [-d.tau[i][j, a] for a in range(d.h_dim)]
        solution = solve(d.gram_h.transpose(), rhs)
        if solution is None:
            raise AxiomError("gram_h is singular; λ is not determined", check="metric.nondegenerate")
        return list(solution)

    return BilinearTable.from_function(d.s_dim, d.h_dim, value)


def derive_gamma(d: DoubleExtensionData) -> BilinearTable:
    """γ(u_a, u_b)(x_i) = B_h(ρ(x_i)(u_a), u_b)."""
    forms = [m.transpose() @ d.gram_h for m in d.rho]
    return BilinearTable.from_function(
        d.h_dim, d.s_dim, lambda a, b: [forms[i][a, b] for i in range(d.s_dim)]
    )


def coadjoint_matrices(bracket_s: StructureTensor) -> List[Matrix]:
    """ad*(x_i) on s* in dual coordinates, with ad*(x)(α) = -α∘ad(x)."""
    s = HomLieAlgebra(bracket_s.dim, bracket_s, Matrix.identity(bracket_s.dim))
    return [-adjoint(s, unit_vector(s.dim, i)).transpose() for i in range(s.dim)]


def h_adjoint(d: DoubleExtensionData, v: Sequence[Fraction]) -> Matrix:
    """ad_h(v) for a coordinate vector v of h."""
    return adjoint(d.h_algebra, v)
