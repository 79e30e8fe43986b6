"""
Hypotheses (A)-(G) of the double extension, checked exhaustively on basis vectors.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from src.algebra.homlie import is_skew_adjoint
from src.algebra.report import CheckResult
from src.algebra.verify import check_classical_jacobi, full_report, nilpotency_index
from src.errors import AxiomError
from src.extension.data import DoubleExtensionData, HypothesisReport
from src.extension.maps import coadjoint_matrices, derive_gamma, derive_lambda, h_adjoint
from src.linalg.matrix import Matrix
from src.linalg.rational import Vector
from src.linalg.subspace import image

logger = logging.getLogger(__name__)


def _column_defect(m: Matrix) -> Optional[Tuple[int, Vector]]:
    """First nonzero column of ``m``."""
    for c in range(m.cols):
        column = m.column(c)
        if any(column):
            return c, column
    return None


def _first(name: str, candidates: Iterable[Tuple[Tuple[int, ...], Sequence[Fraction]]], note: Optional[str] = None) -> CheckResult:
    """Fail at the first candidate whose defect vector is nonzero."""
    for indices, defect in candidates:
        if any(defect):
            return CheckResult.fail(name, indices, defect, note)
    return CheckResult.ok(name)


def _sub(v: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(v, w))


def rho_of(d: DoubleExtensionData, coefficients: Sequence[Fraction]) -> Matrix:
    """ρ(Σ c_k x_k)."""
    out = Matrix.zeros(d.h_dim, d.h_dim)
    for k, c in enumerate(coefficients):
        if c:
            out = out + d.rho[k].scale(c)
    return out


def check_varphi_symmetric(d: DoubleExtensionData, name: str = "A") -> CheckResult:
    """ϕ(x)(y) = ϕ(y)(x)."""
    n = d.s_dim
    return _first(name, (
        ((i, j), (d.varphi[i, j] - d.varphi[j, i],)) for i in range(n) for j in range(i + 1, n)
    ))


def check_theta_rho(d: DoubleExtensionData, name: str = "B") -> CheckResult:
    """Θ∘ρ(x) = ad_h(φ(x)) = ρ(x)∘Θ."""
    def candidates():
        for i in range(d.s_dim):
            ad_phi = h_adjoint(d, d.phi.column(i))
            for defect in (d.theta @ d.rho[i] - ad_phi, d.rho[i] @ d.theta - ad_phi):
                found = _column_defect(defect)
                if found is not None:
                    yield (i, found[0]), found[1]
    return _first(name, candidates())


def check_phi_equivariant(d: DoubleExtensionData, name: str = "C") -> CheckResult:
    """φ([x, y]_s) = ρ(x)(φ(y)) = -ρ(y)(φ(x))."""
    def candidates():
        for i in range(d.s_dim):
            for j in range(d.s_dim):
                lhs = d.phi.apply(d.bracket_s.basis_bracket_dense(i, j))
                yield (i, j), _sub(lhs, d.rho[i].apply(d.phi.column(j)))
                yield (i, j), _sub(lhs, tuple(-a for a in d.rho[j].apply(d.phi.column(i))))
    return _first(name, candidates())


def check_varphi_equivariant(d: DoubleExtensionData, name: str = "D") -> CheckResult:
    """ϕ([x, y]_s) = ad*(x)(ϕ(y))."""
    coad = coadjoint_matrices(d.bracket_s)

    def candidates():
        for i in range(d.s_dim):
            for j in range(d.s_dim):
                lhs = d.varphi.apply(d.bracket_s.basis_bracket_dense(i, j))
                yield (i, j), _sub(lhs, coad[i].apply(d.varphi.column(j)))
    return _first(name, candidates())


def check_rho_prime(d: DoubleExtensionData, name: str = "E") -> CheckResult:
    """ρ restricted to Im(Θ) is a representation of s by derivations of Im(Θ).

    Witness indices: (x index, Im(Θ) basis index[, second index]) with note
    naming the failing part.
    """
    for i in range(d.s_dim):
        found = _column_defect(d.rho[i] @ d.theta - d.theta @ d.rho[i])
        if found is not None:
            return CheckResult.fail(name, (i, found[0]), found[1], "rho does not commute with theta")

    im_theta = image(d.theta).vectors
    h = d.bracket_h
    for i in range(d.s_dim):
        r = d.rho[i]
        for p, v in enumerate(im_theta):
            for q, w in enumerate(im_theta):
                defect = _sub(
                    _sub(r.apply(h.evaluate(v, w)), h.evaluate(r.apply(v), w)),
                    h.evaluate(v, r.apply(w)),
                )
                if any(defect):
                    return CheckResult.fail(name, (i, p, q), defect, "not a derivation of Im(theta)")

    for i in range(d.s_dim):
        for j in range(d.s_dim):
            commutator = d.rho[i] @ d.rho[j] - d.rho[j] @ d.rho[i]
            bracket = rho_of(d, d.bracket_s.basis_bracket_dense(i, j))
            for p, v in enumerate(im_theta):
                defect = _sub(bracket.apply(v), commutator.apply(v))
                if any(defect):
                    return CheckResult.fail(name, (i, j, p), defect, "not a representation on Im(theta)")
    return CheckResult.ok(name)


def check_tau(d: DoubleExtensionData, name: str = "F") -> CheckResult:
    """τ(x)(u)(x) = 0, τ(x)∘Θ = 0 and τ(x)∘φ = 0."""
    s = d.s_dim
    for i in range(s):
        for j in range(i, s):
            defect = tuple(d.tau[i][j, a] + d.tau[j][i, a] for a in range(d.h_dim))
            if any(defect):
                return CheckResult.fail(name, (i, j), defect, "tau is not alternating")
    for i in range(s):
        found = _column_defect(d.tau[i] @ d.theta)
        if found is not None:
            return CheckResult.fail(name, (i, found[0]), found[1], "tau does not vanish on Im(theta)")
        found = _column_defect(d.tau[i] @ d.phi)
        if found is not None:
            return CheckResult.fail(name, (i, found[0]), found[1], "tau does not vanish on Im(phi)")
    return CheckResult.ok(name)


def check_mu_cyclic(d: DoubleExtensionData, name: str = "G") -> CheckResult:
    """μ(x, y)(z) = μ(y, z)(x)."""
    mu = d.mu
    zero = Fraction(0)
    n = d.s_dim
    return _first(name, (
        ((i, j, k), (mu.basis_bracket(i, j).get(k, zero) - mu.basis_bracket(j, k).get(i, zero),))
        for i in range(n) for j in range(n) for k in range(n)
    ))


def check_rho_skew(d: DoubleExtensionData) -> CheckResult:
    """ρ(x) ∈ 𝔬(B_h)."""
    for i, r in enumerate(d.rho):
        result = is_skew_adjoint(d.gram_h, r)
        if not result:
            assert result.witness is not None
            return CheckResult.fail("rho_skew", (i,) + result.witness.indices, result.witness.defect)
    return CheckResult.ok("rho_skew")


def check_h_quadratic(d: DoubleExtensionData) -> CheckResult:
    report = full_report(d.h_quadratic, checks=["skew", "homlie", "centroid", "metric"])
    for failure in report.failures:
        assert failure.witness is not None
        return CheckResult.fail(
            "h_is_quadratic_homlie", failure.witness.indices, failure.witness.defect, failure.name
        )
    return CheckResult.ok("h_is_quadratic_homlie")


def _antisymmetry(name: str, table_factory) -> CheckResult:
    try:
        table = table_factory()
    except AxiomError as e:
        return CheckResult.fail(name, (), None, str(e))
    i, j, defect = table.antisymmetry_defect()
    if i < 0:
        return CheckResult.ok(name)
    return CheckResult.fail(name, (i, j), defect)


def check_hypotheses(d: DoubleExtensionData) -> HypothesisReport:
    """Every hypothesis of the construction, each with a witness on failure."""
    checks: List[CheckResult] = [
        check_varphi_symmetric(d),
        check_theta_rho(d),
        check_phi_equivariant(d),
        check_varphi_equivariant(d),
        check_rho_prime(d),
        check_tau(d),
        check_mu_cyclic(d),
        check_rho_skew(d),
        check_classical_jacobi(d.s_algebra)["jacobi"].renamed("s_is_lie"),
        check_h_quadratic(d),
        _antisymmetry("lambda_antisymmetric", lambda: derive_lambda(d)),
        _antisymmetry("gamma_antisymmetric", lambda: derive_gamma(d)),
    ]
    theta_nilpotent = nilpotency_index(d.theta) is not None
    report = HypothesisReport(tuple(checks), {"s_dim": d.s_dim, "h_dim": d.h_dim}, theta_nilpotent)
    if not report.passed:
        logger.info(f"Extension data fails hypotheses: {', '.join(c.name for c in report.failures)}")
    if not theta_nilpotent:
        logger.warning("Theta is not nilpotent; the built algebra falls outside the decomposition theory")
    return report
