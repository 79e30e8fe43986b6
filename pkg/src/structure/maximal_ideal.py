"""
A maximal ideal containing Ker(T) + Im(T).

Starting from J = Ker(T) + Im(T), the ideal is enlarged until the quotient
is certified simple. Each step pulls back an ideal of the current quotient:
the radical of its Killing form while that is degenerate, otherwise the
kernel of p(c) for an irreducible factor p of the minimal polynomial of a
non-scalar centroid element c.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import Poly, Rational, factor_list, symbols

from src.algebra.homlie import AnyAlgebra, HomLieAlgebra, killing, quotient, underlying
from src.algebra.verify import check_centroid, check_classical_jacobi, nilpotency_index
from src.errors import StructureError
from src.linalg.matrix import Matrix, solve
from src.linalg.subspace import Subspace, image, kernel, preimage, subspace_sum
from src.monitoring.logger_config import log_operation
from src.settings import get_settings
from src.structure.simplicity import SimplicityCertificate, centroid_element, centroid_space, certify_simple

logger = logging.getLogger(__name__)

_x = symbols('x')


@dataclass(frozen=True)
class MaximalIdealResult:
    """The ideal, the simple quotient and how many enlargements it took."""

    ideal: Subspace
    seed: Subspace
    quotient: HomLieAlgebra
    projection: Matrix
    certificate: SimplicityCertificate
    enlargements: int


def minimal_polynomial(m: Matrix) -> List[Fraction]:
    """Monic minimal polynomial of ``m``, coefficients from the constant term up.

    Found as the first linear dependency among I, M, M², ... (Krylov
    sequence in the space of matrices).
    """
    n = m.rows
    powers = [Matrix.identity(n)]
    for k in range(1, n + 1):
        nxt = powers[-1] @ m
        basis = Matrix.from_columns([p.entries for p in powers], rows=n * n)
        combination = solve(basis, nxt.entries)
        if combination is not None:
            return [-c for c in combination] + [Fraction(1)]
        powers.append(nxt)
    raise StructureError("Minimal polynomial has degree above the matrix size")


def irreducible_factors(coefficients: List[Fraction]) -> List[List[Fraction]]:
    """Irreducible factors over Q of a polynomial given constant term first."""
    poly = Poly([Rational(c.numerator, c.denominator) for c in reversed(coefficients)], _x, domain='QQ')
    _, factors = factor_list(poly)
    result = []
    for factor, _multiplicity in factors:
        monic = Poly(factor, _x, domain='QQ').monic()
        coeffs = [Fraction(int(c.p), int(c.q)) for c in monic.all_coeffs()]
        result.append(list(reversed(coeffs)))
    return result


def evaluate_polynomial(coefficients: List[Fraction], m: Matrix) -> Matrix:
    """p(M) by Horner's rule."""
    n = m.rows
    result = Matrix.zeros(n, n)
    for c in reversed(coefficients):
        result = result @ m + Matrix.scalar(n, c)
    return result


def _centroid_split(quot: HomLieAlgebra) -> Optional[Subspace]:
    """A proper nonzero ideal of a semisimple quotient with centroid of dimension > 1."""
    n = quot.dim
    identity = Matrix.identity(n)
    for v in centroid_space(quot).vectors:
        c = centroid_element(n, v)
        if (c - identity.scale(c[0, 0])).is_zero():
            continue
        for factor in irreducible_factors(minimal_polynomial(c)):
            piece = kernel(evaluate_polynomial(factor, c))
            if 0 < piece.dim < n:
                logger.debug(f"Centroid factor of degree {len(factor) - 1} splits off an ideal of dimension {piece.dim}")
                return piece
    return None


def _enlarge(g: HomLieAlgebra, ideal: Subspace) -> Tuple[Optional[Subspace], HomLieAlgebra, Matrix]:
    """One enlargement step; returns (None, quotient, projection) when the quotient is already simple."""
    if ideal.is_full:
        raise StructureError("no proper simple quotient: the ideal is the whole algebra")
    quot, projection = quotient(g, ideal)
    if not check_classical_jacobi(quot):
        raise StructureError("internal inconsistency: quotient by an ideal containing Ker(T) is not a Lie algebra")

    radical = kernel(killing(quot))
    if not radical.is_zero:
        if radical.is_full:
            raise StructureError("no proper simple quotient: the Killing form of the quotient vanishes")
        logger.debug(f"Pulling back the Killing radical of dimension {radical.dim}")
        return preimage(projection, radical), quot, projection

    if centroid_space(quot).dim == 1:
        return None, quot, projection

    piece = _centroid_split(quot)
    if piece is None:
        raise StructureError("quotient centroid is a proper field extension of Q; simplicity cannot be certified")
    return preimage(projection, piece), quot, projection


def maximal_ideal_chain(q: AnyAlgebra, max_enlargements: Optional[int] = None) -> MaximalIdealResult:
    """Maximal ideal with its certified simple quotient."""
    g = underlying(q)
    if not check_centroid(g):
        raise StructureError("twist is not in the centroid")
    if nilpotency_index(g.twist) is None:
        raise StructureError("twist is not nilpotent")

    limit = max_enlargements if max_enlargements is not None else get_settings().max_enlargements
    seed = subspace_sum(kernel(g.twist), image(g.twist))
    ideal = seed
    for step in range(limit + 1):
        enlarged, quot, projection = _enlarge(g, ideal)
        if enlarged is None:
            certificate = certify_simple(quot)
            if not certificate or quot.dim <= 1:
                raise StructureError("internal inconsistency: terminal quotient failed its simplicity certificate")
            logger.info(f"Maximal ideal of dimension {ideal.dim} found after {step} enlargements")
            return MaximalIdealResult(ideal, seed, quot, projection, certificate, step)
        ideal = enlarged
    raise StructureError(f"maximal ideal not reached within {limit} enlargements")


@log_operation("maximal_ideal")
def maximal_ideal(q: AnyAlgebra, max_enlargements: Optional[int] = None) -> Subspace:
    """A proper ideal containing Ker(T) + Im(T) with simple quotient."""
    return maximal_ideal_chain(q, max_enlargements).ideal
