"""
Tests for decomposition along the maximal ideal and the rebuild round trip.
"""

from dataclasses import replace
from fractions import Fraction

import pytest

from src.algebra.homlie import killing
from src.algebra.tensor import BilinearTable
from src.algebra.verify import full_report
from src.catalog.examples import killing_twisted_cotangent
from src.catalog.generator import ExtensionDataGenerator
from src.catalog.sl import sl
from src.errors import StructureError
from src.extension.builder import build
from src.linalg.subspace import image, kernel, subspace_sum
from src.structure.decomposition import assembled, decompose, roundtrip
from src.structure.simplicity import certify_simple
from src.structure.validation import validate_decomposition

from tests.conftest import MU_234


def generated_algebra(family, seed):
    """A built sl2 instance of ``family`` with ϕ = K so that the twist is nonzero on s."""
    data = ExtensionDataGenerator(seed).generate(family, 2)
    return build(replace(data, varphi=killing(sl(2))))


class TestDecompose:
    """Test cases for decompose on the cotangent examples."""

    def test_dimensions(self, twisted_sl3, twisted_sl3_decomposition):
        d = twisted_sl3_decomposition
        assert d.s_dim == 8
        assert d.h_dim == 0
        assert d.maximal_ideal.dim == 8
        assert d.iso_radical == d.maximal_ideal
        assert d.maximal_ideal.contains_subspace(subspace_sum(kernel(twisted_sl3.twist), image(twisted_sl3.twist)))

    def test_s_is_isotropic_and_simple(self, twisted_sl3, twisted_sl3_decomposition):
        d = twisted_sl3_decomposition
        for v in d.s_space.vectors:
            for w in d.s_space.vectors:
                assert twisted_sl3.form(v, w) == 0
        assert certify_simple(d.to_extension().s_algebra).simple

    def test_twist_kills_lambda(self, twisted_sl2_decomposition):
        d = twisted_sl2_decomposition
        for i in range(d.s_dim):
            for j in range(d.s_dim):
                assert not any(d.theta.apply(d.lambda_(i, j)))

    def test_validation_passes(self, twisted_sl3, twisted_sl3_decomposition):
        report = validate_decomposition(twisted_sl3_decomposition, twisted_sl3)
        assert report.passed, [c.name for c in report.failures]
        assert report.facts == {"s_dim": 8, "h_dim": 0, "ideal_dim": 8}

    def test_tampered_mu_is_reported(self, twisted_sl2, twisted_sl2_decomposition):
        d = twisted_sl2_decomposition

        def tampered(i, j):
            value = list(d.mu(i, j))
            if (i, j) == (0, 1):
                value[2] += 1
            elif (i, j) == (1, 0):
                value[2] -= 1
            return value

        broken = replace(d, mu=BilinearTable.from_function(d.s_dim, d.s_dim, tampered))
        report = validate_decomposition(broken, twisted_sl2)
        assert not report.passed
        check = report["mu_cyclic"]
        assert not check
        assert check.witness.indices == (0, 1, 2)
        assert check.witness.defect == (Fraction(1),)

    def test_phi_blocks_are_recovered(self):
        q = generated_algebra("nonabelian", 3)
        d = decompose(q)
        assert d.h_dim == 6
        assert not d.phi.is_zero()
        assert not d.L.is_zero()
        assert not d.bracket_h.is_abelian
        assert validate_decomposition(d, q).passed

    def test_extension_rebuilds_assembled_algebra(self, twisted_sl2, twisted_sl2_decomposition):
        d = twisted_sl2_decomposition
        assert build(d.to_extension()) == assembled(twisted_sl2, d.frame)

    def test_rejects_invertible_twist(self, sl2_quadratic):
        with pytest.raises(StructureError):
            decompose(sl2_quadratic)


class TestRoundTrip:
    """Test cases for decompose followed by build."""

    def test_twisted_sl3(self, twisted_sl3):
        result = roundtrip(twisted_sl3)
        assert result.exact_match
        assert result.to_dict()["s_dim"] == 8

    def test_twisted_sl2(self, twisted_sl2):
        result = roundtrip(twisted_sl2)
        assert result.exact_match
        assert result.to_dict() == {
            "exact_match": True,
            "bracket_match": True,
            "twist_match": True,
            "gram_match": True,
            "isometry": True,
            "dim": 6,
            "s_dim": 3,
            "h_dim": 0,
        }

    def test_classical_limit(self, twisted_sl3_lie):
        assert roundtrip(twisted_sl3_lie).exact_match

    @pytest.mark.parametrize("scale", ["1/2", "-3"])
    def test_scaled_twist(self, scale):
        q = killing_twisted_cotangent(3, MU_234, scale)
        assert roundtrip(q).exact_match

    @pytest.mark.parametrize("family", ["line", "null_pair", "rotating_pair", "adjoint_module", "nonabelian"])
    @pytest.mark.parametrize("seed", [0, 1])
    def test_nonzero_h(self, family, seed):
        q = generated_algebra(family, seed)
        assert full_report(q).passed
        result = roundtrip(q)
        assert result.exact_match
        assert validate_decomposition(result.decomposition, q).passed
