"""
Tests for the simplicity certificate, the Fitting split and the maximal ideal.
"""

from fractions import Fraction

import pytest

from src.algebra.homlie import (
    QuadraticHomLieAlgebra,
    center,
    derived_subalgebra,
    direct_sum,
    direct_sum_algebras,
    underlying,
)
from src.algebra.verify import check_centroid, full_report, nilpotency_index, twist_rank_profile
from src.catalog.examples import killing_twisted_cotangent
from src.catalog.generator import ExtensionDataGenerator
from src.errors import StructureError
from src.linalg.matrix import Matrix, rank
from src.linalg.subspace import image, kernel, subspace_sum
from src.structure.fitting import fitting, fitting_index
from src.structure.maximal_ideal import (
    evaluate_polynomial,
    irreducible_factors,
    maximal_ideal,
    maximal_ideal_chain,
    minimal_polynomial,
)
from src.structure.simplicity import centroid_space, certify_simple


class TestSimplicity:
    """Test cases for the centroid and the simplicity certificate."""

    def test_sl_is_simple(self, sl2, sl3):
        for g in (sl2, sl3):
            certificate = certify_simple(g)
            assert certificate.simple
            assert certificate.killing_rank == g.dim
            assert certificate.centroid_dim == 1

    def test_sum_is_not_simple(self, sl2):
        total = direct_sum_algebras(sl2, sl2)
        assert centroid_space(total).dim == 2
        certificate = certify_simple(total)
        assert certificate.killing_nondegenerate
        assert not certificate.simple

    def test_non_lie_is_not_simple(self, twisted_sl3):
        certificate = certify_simple(twisted_sl3)
        assert not certificate.jacobi
        assert certificate.to_dict()["simple"] is False


class TestFitting:
    """Test cases for the Fitting split."""

    @pytest.fixture(scope="class")
    def mixed(self, sl2_quadratic, twisted_sl3):
        return direct_sum(sl2_quadratic, twisted_sl3)

    def test_rank_profile(self, mixed):
        assert twist_rank_profile(mixed.twist) == [19, 11, 3]
        assert fitting_index(mixed.twist) == 2

    def test_blocks(self, mixed):
        split = fitting(mixed)
        assert split.ell == 2
        assert split.lie_part.dim == 3
        assert split.nilpotent_part.dim == 16
        assert split.orthogonal
        assert split.lie_part_is_lie

    def test_twist_on_each_block(self, mixed):
        split = fitting(mixed)
        lie_twist = underlying(split.lie_part).twist
        assert rank(lie_twist) == 3
        assert underlying(split.nilpotent_part).twist.power(2).is_zero()
        assert isinstance(split.nilpotent_part, QuadraticHomLieAlgebra)
        assert full_report(split.nilpotent_part).passed

    def test_nilpotent_twist_has_no_lie_part(self, twisted_sl3):
        split = fitting(twisted_sl3)
        assert split.lie_part.dim == 0
        assert split.nilpotent_part.dim == 16

    def test_requires_centroid_twist(self, sl2):
        g = sl2.with_twist(Matrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
        with pytest.raises(StructureError):
            fitting(g)


class TestMaximalIdeal:
    """Test cases for the maximal ideal over Ker(T) + Im(T)."""

    def test_cotangent_ideal_is_the_dual(self, twisted_sl3):
        result = maximal_ideal_chain(twisted_sl3)
        assert result.ideal.dim == 8
        assert result.enlargements == 0
        assert result.quotient.dim == 8
        assert result.certificate.simple
        assert result.ideal.contains_subspace(subspace_sum(kernel(twisted_sl3.twist), image(twisted_sl3.twist)))

    def test_enlarges_through_the_centroid(self, twisted_sl2):
        q = direct_sum(twisted_sl2, twisted_sl2)
        result = maximal_ideal_chain(q)
        assert result.seed.dim == 6
        assert result.ideal.dim == 9
        assert result.enlargements == 1
        assert result.quotient.dim == 3

    def test_zero_twist_has_no_simple_quotient(self):
        q = killing_twisted_cotangent(2, scale=0)
        with pytest.raises(StructureError, match="no proper simple quotient"):
            maximal_ideal(q)

    def test_invertible_twist_is_rejected(self, sl2_quadratic):
        with pytest.raises(StructureError, match="not nilpotent"):
            maximal_ideal(sl2_quadratic)

    def test_enlargement_limit(self, twisted_sl2):
        with pytest.raises(StructureError, match="within 0 enlargements"):
            maximal_ideal_chain(direct_sum(twisted_sl2, twisted_sl2), max_enlargements=0)

    @pytest.mark.parametrize("seed", range(6))
    def test_generated_non_lie_instances(self, seed):
        generator = ExtensionDataGenerator(seed)
        keys = [tuple(sorted(generator.rng.sample(range(1, 9), 3))) for _ in range(2)]
        mu = {key: generator.scalar(allow_zero=False) for key in keys}
        q = killing_twisted_cotangent(3, mu, generator.scalar(allow_zero=False))
        report = full_report(q)
        assert report.passed
        if report.facts["is_lie"]:
            pytest.skip("mu happens to be a cocycle")
        assert derived_subalgebra(q).is_full
        assert center(q).is_zero
        assert check_centroid(q)
        assert nilpotency_index(q.twist) == 2

        result = maximal_ideal_chain(q)
        assert result.ideal.contains_subspace(subspace_sum(kernel(q.twist), image(q.twist)))
        assert certify_simple(result.quotient).simple


class TestPolynomials:
    """Test cases for the minimal polynomial helpers."""

    def test_minimal_polynomial(self):
        m = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
        assert minimal_polynomial(m) == [2, -3, 1]
        assert evaluate_polynomial(minimal_polynomial(m), m).is_zero()
        assert minimal_polynomial(Matrix.zeros(2, 2)) == [0, 1]

    def test_factors_over_q(self):
        assert sorted(irreducible_factors([Fraction(2), Fraction(-3), Fraction(1)])) == [[-2, 1], [-1, 1]]
        assert irreducible_factors([Fraction(-2), Fraction(0), Fraction(1)]) == [[-2, 0, 1]]
