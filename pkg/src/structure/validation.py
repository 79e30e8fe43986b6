"""
Identity checks on extracted decomposition data.
"""

import logging
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from src.algebra.homlie import QuadraticHomLieAlgebra, is_derivation
from src.algebra.report import AlgebraReport, CheckResult
from src.algebra.verify import full_report, nilpotency_index
from src.extension.data import DoubleExtensionData
from src.extension.hypotheses import (
    check_phi_equivariant,
    check_rho_prime,
    check_rho_skew,
    check_theta_rho,
    check_varphi_equivariant,
    check_varphi_symmetric,
    rho_of,
)
from src.extension.maps import coadjoint_matrices, h_adjoint
from src.linalg.matrix import Matrix, rank
from src.linalg.rational import Vector
from src.structure.decomposition import DecompositionData, assembled
from src.structure.simplicity import certify_simple

logger = logging.getLogger(__name__)

Candidate = Tuple[Tuple[int, ...], Sequence[Fraction]]


def _first(name: str, candidates: Iterator[Candidate]) -> CheckResult:
    for indices, defect in candidates:
        if any(defect):
            return CheckResult.fail(name, indices, defect)
    return CheckResult.ok(name)


def _sub(v: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(v, w))


def _unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def _frame_checks(d: DecompositionData, q: QuadraticHomLieAlgebra) -> List[CheckResult]:
    n = q.dim
    m, h = d.s_dim, d.h_dim
    S, H, A = range(0, m), range(m, m + h), range(m + h, n)
    a = assembled(q, d.frame)
    checks = []

    checks.append(CheckResult.ok("frame.basis") if rank(d.frame) == n
                  else CheckResult.fail("frame.basis", (), None, "frame rows are dependent"))

    def gram_block(rows: range, cols: range) -> Iterator[Candidate]:
        for r in rows:
            for c in cols:
                yield (r, c), (a.gram[r, c],)

    checks.append(_first("frame.s_isotropic", gram_block(S, S)))
    checks.append(_first("frame.h_orthogonal", (
        cand for block in (gram_block(H, S), gram_block(H, A)) for cand in block
    )))
    checks.append(CheckResult.ok("frame.xi_bijective") if d.iso_radical.dim == m and rank(d.xi) == m
                  else CheckResult.fail("frame.xi_bijective", (), None, "xi is not invertible"))
    checks.append(CheckResult.ok("frame.iso_radical_in_ideal")
                  if d.maximal_ideal.contains_subspace(d.iso_radical)
                  else CheckResult.fail("frame.iso_radical_in_ideal", (), None, "I^perp is not inside I"))
    checks.append(_first("frame.iso_radical_in_kernel", (
        ((k,), a.twist.column(k)) for k in A
    )))
    checks.append(_first("frame.iso_radical_commutes", (
        ((p, r), a.bracket.basis_bracket_dense(p, r))
        for p in list(H) + list(A) for r in A
    )))

    def block_zeros() -> Iterator[Candidate]:
        """Components that vanish because I is an ideal containing Im(T) and I^⊥ is an ideal."""
        for i in S:
            for u in H:
                yield (i, u), tuple(a.bracket.basis_bracket_dense(i, u)[p] for p in S)
            for k in A:
                yield (i, k), tuple(a.bracket.basis_bracket_dense(i, k)[p] for p in list(S) + list(H))
        for u in H:
            for v in H:
                yield (u, v), tuple(a.bracket.basis_bracket_dense(u, v)[p] for p in S)
        for c in list(S) + list(H):
            yield (c,), tuple(a.twist[p, c] for p in S)

    checks.append(_first("frame.block_form", block_zeros()))
    return checks


def _duality_checks(d: DecompositionData) -> List[CheckResult]:
    m, h = d.s_dim, d.h_dim
    coad = coadjoint_matrices(d.bracket_s)
    checks = []

    checks.append(_first("L_from_phi", (
        ((i, u), (d.L[i, u] - sum((d.gram_h[u, b] * d.phi[b, i] for b in range(h)), Fraction(0)),))
        for i in range(m) for u in range(h)
    )))
    checks.append(_first("tau_lambda", (
        ((i, j, u), (d.tau[i][j, u] + sum((d.gram_h[b, u] * d.lambda_(i, j)[b] for b in range(h)), Fraction(0)),))
        for i in range(m) for j in range(m) for u in range(h)
    )))
    checks.append(_first("gamma_rho", (
        ((i, u, v), (sum((d.rho[i][c, u] * d.gram_h[c, v] for c in range(h)), Fraction(0)) - d.gamma(u, v)[i],))
        for i in range(m) for u in range(h) for v in range(h)
    )))
    checks.append(_first("xi_sigma", (
        ((i, k), _sub((d.xi @ d.sigma[i]).column(k), (coad[i] @ d.xi).column(k)))
        for i in range(m) for k in range(m)
    )))

    def L_of(v: Sequence[Fraction]) -> Vector:
        return d.L.apply(v)

    checks.append(_first("L_gamma", (
        ((u, v), _sub(L_of(d.bracket_h.basis_bracket_dense(u, v)), d.gamma.evaluate(d.theta.column(u), _unit(h, v))))
        for u in range(h) for v in range(h)
    )))

    def l_rho() -> Iterator[Candidate]:
        for i in range(m):
            for u in range(h):
                lhs = L_of(d.rho[i].column(u))
                yield (i, u), _sub(lhs, d.gamma.evaluate(d.phi.column(i), _unit(h, u)))
                yield (i, u), _sub(lhs, coad[i].apply(d.L.column(u)))

    checks.append(_first("L_rho", l_rho()))
    checks.append(_first("tau_theta", (
        ((i, u), (d.tau[i] @ d.theta).column(u)) for i in range(m) for u in range(h)
    )))
    checks.append(_first("tau_phi", (
        ((i, j), (d.tau[i] @ d.phi).column(j)) for i in range(m) for j in range(m)
    )))
    checks.append(_first("twist_kills_lambda", (
        ((i, j), d.theta.apply(d.lambda_(i, j)) + L_of(d.lambda_(i, j)))  # T(λ) = Θλ + Lλ, concatenated
        for i in range(m) for j in range(m)
    )))
    return checks


def _cyclic_checks(d: DecompositionData, e: DoubleExtensionData) -> List[CheckResult]:
    """Consequences of the twisted Jacobi identity on (s, s, h) and (s, h, h) triples."""
    m, h = d.s_dim, d.h_dim
    checks = []

    def rho_defects() -> Iterator[Tuple[Tuple[int, int], Matrix]]:
        for i in range(m):
            for j in range(m):
                bracket = rho_of(e, d.bracket_s.basis_bracket_dense(i, j))
                yield (i, j), bracket - (d.rho[i] @ d.rho[j] - d.rho[j] @ d.rho[i])

    defects = list(rho_defects())
    checks.append(_first("rho_bracket_on_image_theta", (
        ((i, j, u), (defect @ d.theta).column(u)) for (i, j), defect in defects for u in range(h)
    )))
    checks.append(_first("rho_bracket_mod_kernel_L", (
        ((i, j, u), (d.L @ defect).column(u)) for (i, j), defect in defects for u in range(h)
    )))

    def phi_derivations() -> Iterator[CheckResult]:
        for i in range(m):
            yield is_derivation(e.h_algebra, h_adjoint(e, d.phi.column(i)))

    failure = next((c for c in phi_derivations() if not c), None)
    checks.append(CheckResult.ok("ad_phi_derivation") if failure is None else CheckResult.fail(
        "ad_phi_derivation", failure.witness.indices, failure.witness.defect))

    def derivation_defects() -> Iterator[Tuple[Tuple[int, int, int], Vector]]:
        hb = d.bracket_h
        for i in range(m):
            r = d.rho[i]
            for u in range(h):
                for v in range(h):
                    eu, ev = _unit(h, u), _unit(h, v)
                    defect = _sub(
                        _sub(r.apply(hb.basis_bracket_dense(u, v)), hb.evaluate(r.column(u), ev)),
                        hb.evaluate(eu, r.column(v)),
                    )
                    yield (i, u, v), defect

    defects_h = list(derivation_defects())
    checks.append(_first("rho_derivation_mod_kernel_L", (
        (idx, d.L.apply(defect)) for idx, defect in defects_h
    )))
    checks.append(_first("rho_derivation_mod_kernel_theta", (
        (idx, d.theta.apply(defect)) for idx, defect in defects_h
    )))
    return checks


def _sub_algebra_checks(d: DecompositionData, e: DoubleExtensionData) -> List[CheckResult]:
    checks = []
    h_report = full_report(e.h_quadratic, checks=["skew", "homlie", "centroid", "metric"])
    if h_report.passed and nilpotency_index(d.theta) is not None:
        checks.append(CheckResult.ok("h_quadratic"))
    elif not h_report.passed:
        failure = h_report.failures[0]
        assert failure.witness is not None
        checks.append(CheckResult.fail("h_quadratic", failure.witness.indices, failure.witness.defect, failure.name))
    else:
        checks.append(CheckResult.fail("h_quadratic", (), None, "theta is not nilpotent"))

    certificate = certify_simple(e.s_algebra)
    if certificate:
        checks.append(CheckResult.ok("s_simple"))
    else:
        checks.append(CheckResult.fail(
            "s_simple", (), None,
            f"killing_rank={certificate.killing_rank}, centroid_dim={certificate.centroid_dim}, "
            f"jacobi={certificate.jacobi.passed}",
        ))
    return checks


def validate_decomposition(d: DecompositionData, q: QuadraticHomLieAlgebra) -> AlgebraReport:
    """Every identity the decomposition must satisfy, each with a witness on failure."""
    e = d.to_extension()
    mu_cyclic = _first("mu_cyclic", (
        ((i, j, k), (d.mu(i, j)[k] - d.mu(j, k)[i],))
        for i in range(d.s_dim) for j in range(d.s_dim) for k in range(d.s_dim)
    ))
    checks: List[CheckResult] = []
    checks.extend(_frame_checks(d, q))
    checks.extend([
        check_varphi_symmetric(e, "varphi_symmetric"),
        mu_cyclic,
        check_theta_rho(e, "theta_rho"),
        check_phi_equivariant(e, "phi_equivariant"),
        check_varphi_equivariant(e, "varphi_equivariant"),
        check_rho_prime(e, "rho_prime_representation"),
        check_rho_skew(e),
    ])
    checks.extend(_duality_checks(d))
    checks.extend(_cyclic_checks(d, e))
    checks.extend(_sub_algebra_checks(d, e))
    report = AlgebraReport.of(checks, s_dim=d.s_dim, h_dim=d.h_dim, ideal_dim=d.maximal_ideal.dim)
    if not report.passed:
        logger.warning(f"Decomposition fails {', '.join(c.name for c in report.failures)}")
    return report
