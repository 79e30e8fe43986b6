"""
Fitting decomposition of a Hom-Lie algebra with centroid twist.
"""

import logging
from dataclasses import dataclass
from typing import Union

from src.algebra.homlie import (
    AnyAlgebra,
    HomLieAlgebra,
    QuadraticHomLieAlgebra,
    restrict,
    restrict_algebra,
    underlying,
)
from src.algebra.report import CheckResult
from src.algebra.verify import check_centroid, check_classical_jacobi, twist_rank_profile
from src.errors import StructureError
from src.linalg.matrix import Matrix, rank
from src.linalg.subspace import Subspace, image, kernel

logger = logging.getLogger(__name__)

Part = Union[HomLieAlgebra, QuadraticHomLieAlgebra]


@dataclass(frozen=True)
class FittingSplit:
    """g = Im(T^ell) ⊕ Ker(T^ell).

    The twist is invertible on ``lie_part`` and nilpotent on
    ``nilpotent_part``. Embedding rows are the RREF bases of the two
    subspaces in ambient coordinates.
    """

    ell: int
    lie_part: Part
    nilpotent_part: Part
    lie_space: Subspace
    nilpotent_space: Subspace
    orthogonal: bool
    lie_part_is_lie: CheckResult

    @property
    def lie_embedding(self) -> Matrix:
        return self.lie_space.basis

    @property
    def nilpotent_embedding(self) -> Matrix:
        return self.nilpotent_space.basis


def fitting_index(t: Matrix) -> int:
    """Smallest ell with rank(T^ell) = rank(T^(ell+1))."""
    return len(twist_rank_profile(t)) - 1


def fitting(q: AnyAlgebra) -> FittingSplit:
    """Split off the part on which the twist is invertible.

    Both summands are ideals because every power of a centroid element is in
    the centroid. With a metric the summands are orthogonal and each carries
    the restricted metric.
    """
    g = underlying(q)
    if not check_centroid(g):
        raise StructureError("Fitting decomposition needs a twist in the centroid")

    ell = fitting_index(g.twist)
    power = g.twist.power(ell)
    lie_space = image(power)
    nilpotent_space = kernel(power)
    if lie_space.dim + nilpotent_space.dim != g.dim:
        raise StructureError("Fitting subspaces do not span the algebra")

    if isinstance(q, QuadraticHomLieAlgebra):
        pairing = lie_space.basis @ q.gram @ nilpotent_space.basis.transpose()
        orthogonal = pairing.is_zero()
        if not orthogonal:
            raise StructureError("Fitting summands are not orthogonal; the metric is not twist-self-adjoint")
        lie_part: Part = restrict(q, lie_space)
        nilpotent_part: Part = restrict(q, nilpotent_space)
    else:
        orthogonal = True
        lie_part = restrict_algebra(g, lie_space)
        nilpotent_part = restrict_algebra(g, nilpotent_space)

    lie_twist = underlying(lie_part).twist
    if rank(lie_twist) != lie_part.dim:
        raise StructureError("Twist is not invertible on the eventual image")

    lie_part_is_lie = check_classical_jacobi(lie_part)["jacobi"]
    logger.info(
        f"Fitting split with ell={ell}: lie part of dimension {lie_part.dim}, "
        f"nilpotent part of dimension {nilpotent_part.dim}"
    )
    return FittingSplit(ell, lie_part, nilpotent_part, lie_space, nilpotent_space, orthogonal, lie_part_is_lie)
