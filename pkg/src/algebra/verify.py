"""
Exhaustive axiom checks.

Every defining identity is evaluated on all relevant basis tuples with exact
arithmetic. Checks never raise on a failed identity; they return a report
whose failed entries carry the first witness in basis order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations, islice
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from src.algebra.homlie import (
    AnyAlgebra,
    HomLieAlgebra,
    QuadraticHomLieAlgebra,
    center,
    derived_subalgebra,
    induced_lie_algebra,
    underlying,
)
from src.algebra.report import AlgebraReport, CheckResult
from src.algebra.tensor import SparseVector, axpy, to_dense
from src.linalg.matrix import Matrix, RowReducer
from src.linalg.rational import ONE, Vector, unit_vector
from src.linalg.subspace import image, kernel
from src.settings import get_settings

logger = logging.getLogger(__name__)

Item = TypeVar("Item")
Failure = Tuple[Tuple[int, ...], Optional[Vector]]
Evaluator = Callable[[Sequence[Fraction], Sequence[Fraction]], Vector]

_CHUNK = 256


def _chunks(items: Iterable[Item], size: int) -> Iterator[List[Item]]:
    it = iter(items)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _first_failure(
    items: Iterable[Item], test: Callable[[Item], Optional[Failure]], threads: Optional[int] = None
) -> Optional[Failure]:
    """Run ``test`` over ``items`` and return the first failure in item order."""
    workers = threads if threads is not None else get_settings().threads

    def scan(chunk: List[Item]) -> Optional[Failure]:
        for item in chunk:
            failure = test(item)
            if failure is not None:
                return failure
        return None

    if workers <= 1:
        for chunk in _chunks(items, _CHUNK):
            failure = scan(chunk)
            if failure is not None:
                return failure
        return None

    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves order, so the first non-empty result is the minimal witness
        for failure in pool.map(scan, _chunks(items, _CHUNK)):
            if failure is not None:
                return failure
    return None


def _result(name: str, failure: Optional[Failure], note: Optional[str] = None) -> CheckResult:
    if failure is None:
        return CheckResult.ok(name)
    indices, defect = failure
    return CheckResult.fail(name, indices, defect, note)


def _unit(i: int) -> SparseVector:
    return {i: ONE}


def check_skew(g: AnyAlgebra, evaluator: Optional[Evaluator] = None) -> AlgebraReport:
    """[e_i, e_i] = 0 and [e_i, e_j] = -[e_j, e_i] under the given evaluator."""
    g = underlying(g)
    n = g.dim
    evaluate: Evaluator = evaluator or g.bracket.evaluate
    units = [unit_vector(n, i) for i in range(n)]

    def test(pair: Tuple[int, int]) -> Optional[Failure]:
        i, j = pair
        if i == j:
            value = evaluate(units[i], units[i])
        else:
            value = tuple(a + b for a, b in zip(evaluate(units[i], units[j]), evaluate(units[j], units[i])))
        return ((i,) if i == j else (i, j), tuple(value)) if any(value) else None

    pairs = ((i, j) for i in range(n) for j in range(i, n))
    return AlgebraReport.of([_result("skew", _first_failure(pairs, test, threads=1))])


def homlie_defect(g: AnyAlgebra, i: int, j: int, k: int) -> Vector:
    """[T e_i, [e_j, e_k]] + [T e_j, [e_k, e_i]] + [T e_k, [e_i, e_j]]."""
    g = underlying(g)
    return to_dense(_cyclic_sum(g, g.twist_columns, i, j, k), g.dim)


def cyclic_defect(g: AnyAlgebra, i: int, j: int, k: int) -> Vector:
    """[e_i, [e_j, e_k]] + [e_j, [e_k, e_i]] + [e_k, [e_i, e_j]]."""
    g = underlying(g)
    units = tuple(_unit(a) for a in range(g.dim))
    return to_dense(_cyclic_sum(g, units, i, j, k), g.dim)


def _cyclic_sum(g: HomLieAlgebra, left: Sequence[SparseVector], i: int, j: int, k: int) -> SparseVector:
    out: SparseVector = {}
    bracket = g.bracket
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = bracket.basis_bracket(b, c)
        if inner and left[a]:
            axpy(out, ONE, bracket.bracket_sparse(left[a], inner))
    return out


def _jacobi_report(g: HomLieAlgebra, left: Sequence[SparseVector], name: str, threads: Optional[int]) -> AlgebraReport:
    def test(triple: Tuple[int, int, int]) -> Optional[Failure]:
        defect = _cyclic_sum(g, left, *triple)
        return (triple, to_dense(defect, g.dim)) if defect else None

    failure = _first_failure(combinations(range(g.dim), 3), test, threads)
    return AlgebraReport.of([_result(name, failure)])


def check_homlie_jacobi(g: AnyAlgebra, threads: Optional[int] = None) -> AlgebraReport:
    """The twisted Jacobi identity on all basis triples i < j < k."""
    g = underlying(g)
    return _jacobi_report(g, g.twist_columns, "homlie", threads)


def check_classical_jacobi(g: AnyAlgebra, threads: Optional[int] = None) -> AlgebraReport:
    """The untwisted Jacobi identity on all basis triples i < j < k."""
    g = underlying(g)
    return _jacobi_report(g, [_unit(a) for a in range(g.dim)], "jacobi", threads)


def check_centroid(g: AnyAlgebra, threads: Optional[int] = None) -> AlgebraReport:
    """T[e_i, e_j] = [T e_i, e_j] and T[e_i, e_j] = [e_i, T e_j] on all ordered pairs."""
    g = underlying(g)
    n = g.dim
    columns = g.twist_columns

    def twisted_bracket(i: int, j: int) -> SparseVector:
        out: SparseVector = {}
        for k, c in g.bracket.basis_bracket(i, j).items():
            axpy(out, c, columns[k])
        return out

    def left(pair: Tuple[int, int]) -> Optional[Failure]:
        i, j = pair
        defect = twisted_bracket(i, j)
        axpy(defect, -ONE, g.bracket.bracket_sparse(columns[i], _unit(j)))
        return (pair, to_dense(defect, n)) if defect else None

    def right(pair: Tuple[int, int]) -> Optional[Failure]:
        i, j = pair
        defect = twisted_bracket(i, j)
        axpy(defect, -ONE, g.bracket.bracket_sparse(_unit(i), columns[j]))
        return (pair, to_dense(defect, n)) if defect else None

    pairs = [(i, j) for i in range(n) for j in range(n)]
    return AlgebraReport.of([
        _result("centroid.left", _first_failure(pairs, left, threads)),
        _result("centroid.right", _first_failure(pairs, right, threads)),
    ])


def check_metric(q: QuadraticHomLieAlgebra, threads: Optional[int] = None) -> AlgebraReport:
    """Symmetry, nondegeneracy, invariance and self-adjointness of the twist."""
    n = q.dim
    gram = q.gram
    checks = []

    asymmetric = next(
        (((i, j), (gram[i, j] - gram[j, i],)) for i in range(n) for j in range(i + 1, n) if gram[i, j] != gram[j, i]),
        None,
    )
    checks.append(_result("metric.symmetric", asymmetric))

    null = kernel(gram)
    if null.is_zero:
        checks.append(CheckResult.ok("metric.nondegenerate"))
    else:
        checks.append(CheckResult.fail("metric.nondegenerate", (), null.vectors[0], "kernel vector of the gram"))

    # gb[(a, b)] = gram · [e_a, e_b]; B(e_i, [e_j, e_k]) is gb[(j, k)][i]
    zero = tuple(Fraction(0) for _ in range(n))
    gb = {}
    for a in range(n):
        for b in range(n):
            bracket = q.bracket.basis_bracket(a, b)
            gb[(a, b)] = gram.apply(to_dense(bracket, n)) if bracket else zero

    def invariant(triple: Tuple[int, int, int]) -> Optional[Failure]:
        i, j, k = triple
        difference = gb[(j, k)][i] - gb[(i, j)][k]
        return (triple, (difference,)) if difference else None

    triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
    checks.append(_result("metric.invariant", _first_failure(triples, invariant, threads)))

    s = q.twist.transpose() @ gram - gram @ q.twist
    asymmetric_twist = next(
        (((i, j), (s[i, j],)) for i in range(n) for j in range(n) if s[i, j]),
        None,
    )
    checks.append(_result("metric.twist_selfadjoint", asymmetric_twist))
    return AlgebraReport.of(checks)


def nilpotency_index(t: Matrix) -> Optional[int]:
    """Smallest l with T^l = 0, or None when T is not nilpotent."""
    power = Matrix.identity(t.rows)
    for ell in range(t.rows + 1):
        if power.is_zero():
            return ell
        power = power @ t
    return None


def _induced_lie_report(g: AnyAlgebra, threads: Optional[int]) -> AlgebraReport:
    lie = induced_lie_algebra(g)
    result = check_classical_jacobi(lie, threads)["jacobi"].renamed("induced_lie")
    if result and isinstance(lie, QuadraticHomLieAlgebra):
        invariant = check_metric(lie, threads)["metric.invariant"]
        if not invariant:
            result = invariant.renamed("induced_lie")
    return AlgebraReport.of([result])


def full_report(
    g: AnyAlgebra, checks: Optional[Sequence[str]] = None, threads: Optional[int] = None
) -> AlgebraReport:
    """All axiom checks plus structural facts.

    ``checks`` restricts the report (and hence ``passed``) to the named checks
    or check prefixes; facts are always computed.
    """
    algebra = underlying(g)
    n = algebra.dim
    report = check_skew(algebra).merged(
        check_homlie_jacobi(algebra, threads),
        check_centroid(algebra, threads),
    )
    if isinstance(g, QuadraticHomLieAlgebra):
        report = report.merged(check_metric(g, threads))
    report = report.merged(_induced_lie_report(g, threads))

    is_lie = bool(check_classical_jacobi(algebra, threads))
    ell = nilpotency_index(algebra.twist)
    kernel_dim = kernel(algebra.twist).dim
    facts = {
        "dim": n,
        "is_lie": is_lie,
        "is_perfect": derived_subalgebra(algebra).dim == n,
        "trivial_center": center(algebra).is_zero,
        "twist_nilpotent": ell is not None,
        "nilpotency_index": ell,
        "kernel_dim": kernel_dim,
        "image_dim": image(algebra.twist).dim,
    }
    report = report.merged(AlgebraReport.of([], **facts))
    if checks:
        report = report.restricted(checks)
    logger.info(f"Full report on algebra of dimension {n}: passed={report.passed}")
    return report


def twist_rank_profile(t: Matrix) -> List[int]:
    """Ranks of T^0, T^1, ... until they stabilise."""
    ranks = [t.rows]
    power = Matrix.identity(t.rows)
    while True:
        power = power @ t
        r = RowReducer(t.cols).extend(power.sparse_rows()).rank
        if r == ranks[-1]:
            return ranks
        ranks.append(r)
