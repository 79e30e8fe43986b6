"""
Input bundle of the double extension and the report on its hypotheses.

Coordinates: x_0 .. x_{s-1} span s, u_0 .. u_{h-1} span h and s* carries the
dual basis of the x_i. Maps follow the column convention, so a map A → B is
a (dim B)×(dim A) matrix whose column j is the image of the j-th basis vector.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from src.algebra.homlie import HomLieAlgebra, QuadraticHomLieAlgebra
from src.algebra.report import AlgebraReport
from src.algebra.tensor import StructureTensor
from src.errors import AxiomError
from src.linalg.matrix import Matrix


@dataclass(frozen=True)
class DoubleExtensionData:
    """(s, [,]_s, h, [,]_h, Θ, B_h, φ, ϕ, ρ, τ, μ).

    * ``theta``: h×h, ``gram_h``: h×h.
    * ``phi``: φ: s → h, an h×s matrix.
    * ``varphi``: ϕ: s → s*, an s×s matrix with varphi[i, j] = ϕ(x_j)(x_i).
    * ``rho[i]``: ρ(x_i) on h, h×h.
    * ``tau[i]``: τ(x_i): h → s*, an s×h matrix with tau[i][j, a] = τ(x_i)(u_a)(x_j).
    * ``mu``: μ(x_i, x_j) = Σ_k c α_k for the stored entries (i, j, k, c);
      antisymmetry in (i, j) holds by representation.
    """

    s_dim: int
    h_dim: int
    bracket_s: StructureTensor
    bracket_h: StructureTensor
    theta: Matrix
    gram_h: Matrix
    phi: Matrix
    varphi: Matrix
    rho: Tuple[Matrix, ...]
    tau: Tuple[Matrix, ...]
    mu: StructureTensor

    def __post_init__(self) -> None:
        s, h = self.s_dim, self.h_dim
        expected = {
            "bracket_s": (self.bracket_s.dim, s),
            "bracket_h": (self.bracket_h.dim, h),
            "mu": (self.mu.dim, s),
            "rho": (len(self.rho), s),
            "tau": (len(self.tau), s),
        }
        for name, (actual, wanted) in expected.items():
            if actual != wanted:
                raise AxiomError(f"{name} has dimension {actual}, expected {wanted}", check="shape")
        shapes = {
            "theta": (self.theta.shape, (h, h)),
            "gram_h": (self.gram_h.shape, (h, h)),
            "phi": (self.phi.shape, (h, s)),
            "varphi": (self.varphi.shape, (s, s)),
        }
        for i, m in enumerate(self.rho):
            shapes[f"rho[{i}]"] = (m.shape, (h, h))
        for i, m in enumerate(self.tau):
            shapes[f"tau[{i}]"] = (m.shape, (s, h))
        for name, (actual_shape, wanted_shape) in shapes.items():
            if actual_shape != wanted_shape:
                raise AxiomError(f"{name} has shape {actual_shape}, expected {wanted_shape}", check="shape")

    @property
    def total_dim(self) -> int:
        return 2 * self.s_dim + self.h_dim

    @property
    def s_algebra(self) -> HomLieAlgebra:
        """(s, [,]_s) with identity twist."""
        return HomLieAlgebra(self.s_dim, self.bracket_s, Matrix.identity(self.s_dim))

    @property
    def h_algebra(self) -> HomLieAlgebra:
        return HomLieAlgebra(self.h_dim, self.bracket_h, self.theta)

    @property
    def h_quadratic(self) -> QuadraticHomLieAlgebra:
        """(h, [,]_h, Θ, B_h), unchecked so that a bad metric is reported rather than raised."""
        return QuadraticHomLieAlgebra(self.h_algebra, self.gram_h, strict=False)


@dataclass(frozen=True)
class HypothesisReport(AlgebraReport):
    """Per-hypothesis results; ``theta_nilpotent`` is a warning, not a criterion."""

    theta_nilpotent: bool = field(default=True)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["warnings"] = [] if self.theta_nilpotent else ["theta_not_nilpotent"]
        return data
