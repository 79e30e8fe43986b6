"""
The Killing-twisted cotangent family sl_n ⋉ sl_n*.

g = s ⊕ s* with s = sl_n, h = 0, twist T(x + α) = c·K(x, ·) and the
hyperbolic metric B(x + α, y + β) = α(y) + β(x). A cyclic 3-form μ on s
deforms the bracket by μ(x, y) ∈ s*; for μ ≠ 0 the result satisfies the
Hom-Jacobi identity but not the classical one.
"""

import logging
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from src.algebra.homlie import QuadraticHomLieAlgebra, killing
from src.algebra.tensor import StructureTensor
from src.errors import AxiomError, ParseError
from src.extension.builder import build
from src.extension.data import DoubleExtensionData
from src.linalg.matrix import Matrix
from src.linalg.rational import ScalarLike, as_scalar, parse_rational
from src.catalog.sl import sl

logger = logging.getLogger(__name__)

MuValues = Mapping[Tuple[int, int, int], ScalarLike]


def _parity(order: Tuple[int, int, int]) -> int:
    """Sign of the permutation sorting ``order``."""
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if order[a] > order[b])
    return -1 if inversions % 2 else 1


def cyclic_mu_tensor(n: int, values: Optional[MuValues] = None) -> StructureTensor:
    """Complete 1-based values μ_ijk = μ(x_i, x_j)(x_k) to a totally antisymmetric tensor.

    Any key of an orbit may be given; every key of the same orbit must agree
    up to the sign of the permutation.
    """
    orbits: Dict[Tuple[int, int, int], Fraction] = {}
    for key, raw in (values or {}).items():
        value = as_scalar(raw)
        if len(key) != 3 or any(not 1 <= i <= n for i in key):
            raise AxiomError(f"mu index {key} out of range 1..{n}", check="mu.range")
        if len(set(key)) < 3:
            if value:
                raise AxiomError(f"mu{key} has a repeated index and must vanish", check="mu.antisymmetric")
            continue
        representative = tuple(sorted(key))
        signed = value * _parity(key)
        previous = orbits.get(representative)
        if previous is not None and previous != signed:
            raise AxiomError(
                f"mu{key} = {value} conflicts with mu{representative} = {previous}", check="mu.cyclic"
            )
        orbits[representative] = signed

    entries: List[Tuple[int, int, int, Fraction]] = []
    for (a, b, c), value in orbits.items():
        if not value:
            continue
        for p in permutations((a - 1, b - 1, c - 1)):
            i, j, k = p
            if i < j:
                entries.append((i, j, k, value * _parity(p)))
    return StructureTensor.from_entries(n, entries)


def parse_mu_assignment(text: str) -> Tuple[Tuple[int, int, int], Fraction]:
    """``"i,j,k=p/q"`` to ((i, j, k), p/q)."""
    indices, sep, value = text.partition("=")
    if not sep:
        raise ParseError("malformed_mu", f"Expected 'i,j,k=p/q', got '{text}'", "mu")
    try:
        key = tuple(int(part) for part in indices.split(","))
    except ValueError:
        raise ParseError("malformed_mu", f"Invalid mu indices in '{text}'", "mu")
    if len(key) != 3:
        raise ParseError("malformed_mu", f"Expected three mu indices in '{text}'", "mu")
    return (key[0], key[1], key[2]), parse_rational(value, "mu")


def mu_from_assignments(assignments: Iterable[str]) -> Dict[Tuple[int, int, int], Fraction]:
    values: Dict[Tuple[int, int, int], Fraction] = {}
    for text in assignments:
        key, value = parse_mu_assignment(text)
        values[key] = value
    return values


def cotangent_extension_data(
    n: int, mu: Optional[MuValues] = None, scale: ScalarLike = 1
) -> DoubleExtensionData:
    """Extension data with s = sl_n, h = 0, ϕ = scale·K and the given μ."""
    s = sl(n)
    dim = s.dim
    return DoubleExtensionData(
        s_dim=dim,
        h_dim=0,
        bracket_s=s.bracket,
        bracket_h=StructureTensor.zero(0),
        theta=Matrix.zeros(0, 0),
        gram_h=Matrix.zeros(0, 0),
        phi=Matrix.zeros(0, dim),
        varphi=killing(s).scale(as_scalar(scale)),
        rho=tuple(Matrix.zeros(0, 0) for _ in range(dim)),
        tau=tuple(Matrix.zeros(dim, 0) for _ in range(dim)),
        mu=cyclic_mu_tensor(dim, mu),
    )


def killing_twisted_cotangent(
    n: int, mu: Optional[MuValues] = None, scale: ScalarLike = 1
) -> QuadraticHomLieAlgebra:
    """sl_n ⋉ sl_n* with T(x + α) = scale·K(x, ·), deformed by μ."""
    q = build(cotangent_extension_data(n, mu, scale))
    logger.info(f"Built Killing-twisted cotangent of sl_{n} (dim {q.dim}, {len(mu or {})} mu values)")
    return q
