"""
sl_2 and sl_3 with structure constants derived from matrix commutators.

Basis orders:
    sl_2: e = E12, f = E21, h = E11 - E22
    sl_3: x1 = E11 - E22, x2 = E22 - E33, x3 = E12, x4 = E13,
          x5 = E21, x6 = E23, x7 = E31, x8 = E32
"""

import logging
from fractions import Fraction
from typing import List, Tuple

from src.algebra.homlie import HomLieAlgebra
from src.algebra.tensor import StructureTensor
from src.errors import HomLieError
from src.linalg.matrix import Matrix, solve

logger = logging.getLogger(__name__)

SUPPORTED_RANKS = (2, 3)


def _unit_matrix(n: int, r: int, c: int) -> Matrix:
    entries = [Fraction(0)] * (n * n)
    entries[(r - 1) * n + (c - 1)] = Fraction(1)
    return Matrix(n, n, tuple(entries))


def sl_basis_matrices(n: int) -> Tuple[Tuple[str, ...], List[Matrix]]:
    """Labels and n×n matrices of the standard basis of sl_n."""
    E = lambda r, c: _unit_matrix(n, r, c)  # noqa: E731
    if n == 2:
        return ("e", "f", "h"), [E(1, 2), E(2, 1), E(1, 1) - E(2, 2)]
    if n == 3:
        labels = tuple(f"x{i}" for i in range(1, 9))
        return labels, [
            E(1, 1) - E(2, 2), E(2, 2) - E(3, 3),
            E(1, 2), E(1, 3), E(2, 1), E(2, 3), E(3, 1), E(3, 2),
        ]
    raise HomLieError(f"sl_{n} is not available; supported ranks are {SUPPORTED_RANKS}")


def _structure_constants(basis: List[Matrix]) -> StructureTensor:
    flattened = Matrix.from_columns([b.entries for b in basis])

    def bracket(i: int, j: int) -> Tuple[Fraction, ...]:
        commutator = basis[i] @ basis[j] - basis[j] @ basis[i]
        coefficients = solve(flattened, commutator.entries)
        if coefficients is None:
            raise HomLieError(f"Commutator of basis elements {i}, {j} leaves the span")
        return coefficients

    return StructureTensor.from_bracket_function(len(basis), bracket)


def sl(n: int) -> HomLieAlgebra:
    """sl_n as a Hom-Lie algebra with identity twist."""
    labels, basis = sl_basis_matrices(n)
    bracket = _structure_constants(basis)
    logger.debug(f"sl_{n}: {len(bracket.entries)} nonzero structure constants")
    return HomLieAlgebra(len(basis), bracket, Matrix.identity(len(basis)), labels)
