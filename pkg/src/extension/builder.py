"""
The double extension g = s ⊕ h ⊕ s*.

Ordered coordinates: x_i → i, u_a → s + a, α_k → s + h + k. On them

    [x, y] = [x, y]_s + λ(x, y) + μ(x, y)
    [x, u] = ρ(x)(u) + τ(x)(u)
    [x, α] = ad*(x)(α)
    [u, v] = [u, v]_h + γ(u, v)
    [u, α] = [α, β] = 0

    T(x) = φ(x) + ϕ(x),  T(u) = Θ(u) + L(u),  T(α) = 0

    B(x + u + α, y + v + β) = α(y) + β(x) + B_h(u, v)
"""

import logging
from fractions import Fraction
from typing import List, Tuple

from src.algebra.homlie import HomLieAlgebra, QuadraticHomLieAlgebra
from src.algebra.report import AlgebraReport
from src.algebra.tensor import StructureTensor
from src.algebra.verify import full_report
from src.errors import HypothesisError
from src.extension.data import DoubleExtensionData
from src.extension.hypotheses import check_hypotheses
from src.extension.maps import derive_gamma, derive_L, derive_lambda
from src.linalg.matrix import Matrix
from src.monitoring.logger_config import log_operation

logger = logging.getLogger(__name__)


def extension_labels(s_dim: int, h_dim: int) -> Tuple[str, ...]:
    return (
        tuple(f"x{i + 1}" for i in range(s_dim))
        + tuple(f"u{a + 1}" for a in range(h_dim))
        + tuple(f"alpha{k + 1}" for k in range(s_dim))
    )


def _bracket(d: DoubleExtensionData) -> StructureTensor:
    s, h = d.s_dim, d.h_dim
    n = d.total_dim
    U, A = s, s + h
    lam = derive_lambda(d)
    gamma = derive_gamma(d)
    entries: List[Tuple[int, int, int, Fraction]] = []

    for i, j, k, c in d.bracket_s.entries:
        entries.append((i, j, k, c))
        # ad*(x_i)(α_k) has coefficient -c^k_ij on α_j
        entries.append((i, A + k, A + j, -c))
        entries.append((j, A + k, A + i, c))
    for i in range(s):
        for j in range(i + 1, s):
            for a, c in enumerate(lam(i, j)):
                if c:
                    entries.append((i, j, U + a, c))
    for i, j, k, c in d.mu.entries:
        entries.append((i, j, A + k, c))

    for i in range(s):
        rho, tau = d.rho[i], d.tau[i]
        for a in range(h):
            for b in range(h):
                if rho[b, a]:
                    entries.append((i, U + a, U + b, rho[b, a]))
            for j in range(s):
                if tau[j, a]:
                    entries.append((i, U + a, A + j, tau[j, a]))

    for a, b, c, value in d.bracket_h.entries:
        entries.append((U + a, U + b, U + c, value))
    for a in range(h):
        for b in range(a + 1, h):
            for i, c in enumerate(gamma(a, b)):
                if c:
                    entries.append((U + a, U + b, A + i, c))

    return StructureTensor.from_entries(n, entries)


def _twist(d: DoubleExtensionData) -> Matrix:
    s, h = d.s_dim, d.h_dim
    L = derive_L(d)
    columns = []
    for j in range(s):
        columns.append((Fraction(0),) * s + d.phi.column(j) + d.varphi.column(j))
    for a in range(h):
        columns.append((Fraction(0),) * s + d.theta.column(a) + L.column(a))
    for _ in range(s):
        columns.append((Fraction(0),) * d.total_dim)
    return Matrix.from_columns(columns, rows=d.total_dim) if columns else Matrix.zeros(0, 0)


def _gram(d: DoubleExtensionData) -> Matrix:
    s, h = d.s_dim, d.h_dim
    n = d.total_dim
    entries = [Fraction(0)] * (n * n)
    for i in range(s):
        entries[i * n + s + h + i] = Fraction(1)
        entries[(s + h + i) * n + i] = Fraction(1)
    for a in range(h):
        for b in range(h):
            entries[(s + a) * n + s + b] = d.gram_h[a, b]
    return Matrix(n, n, tuple(entries))


@log_operation("build")
def build(d: DoubleExtensionData) -> QuadraticHomLieAlgebra:
    """Assemble the double extension; refuses data that fails a hypothesis."""
    report = check_hypotheses(d)
    if not report.passed:
        names = ", ".join(c.name for c in report.failures)
        raise HypothesisError(f"Extension data fails hypotheses: {names}", report=report)

    algebra = HomLieAlgebra(d.total_dim, _bracket(d), _twist(d), extension_labels(d.s_dim, d.h_dim))
    q = QuadraticHomLieAlgebra(algebra, _gram(d))
    logger.info(f"Built double extension of dimension {q.dim} (s={d.s_dim}, h={d.h_dim})")
    return q


def build_and_certify(d: DoubleExtensionData) -> Tuple[QuadraticHomLieAlgebra, AlgebraReport]:
    """Build, then run every axiom check on the result."""
    q = build(d)
    report = full_report(q)
    if not report.passed:
        logger.error(f"Built algebra fails {', '.join(c.name for c in report.failures)}")
    return q, report
