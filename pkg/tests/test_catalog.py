"""
Tests for sl_n, the Killing form and the twisted cotangent family.
"""

from fractions import Fraction

import pytest

from src.algebra.homlie import adjoint, bracket_eval, is_skew_adjoint, killing
from src.algebra.verify import cyclic_defect, full_report
from src.catalog import cyclic_mu_tensor, killing_twisted_cotangent, sl
from src.catalog.examples import mu_from_assignments, parse_mu_assignment
from src.catalog.sl import sl_basis_matrices
from src.errors import AxiomError, HomLieError, ParseError
from src.linalg.matrix import rank
from src.linalg.rational import unit_vector, zero_vector

from tests.conftest import MU_234


def x(i: int) -> tuple:
    """1-based basis vector of sl3."""
    return unit_vector(8, i - 1)


class TestSl:
    """Test cases for sl2 and sl3."""

    def test_sl3_relations(self, sl3):
        assert bracket_eval(sl3, x(1), x(3)) == tuple(2 * c for c in x(3))
        assert bracket_eval(sl3, x(3), x(5)) == x(1)
        assert bracket_eval(sl3, x(1), x(2)) == zero_vector(8)

    def test_labels(self, sl2, sl3):
        assert sl2.labels == ("e", "f", "h")
        assert sl3.labels[0] == "x1" and sl3.labels[-1] == "x8"
        labels, matrices = sl_basis_matrices(3)
        assert len(labels) == len(matrices) == 8
        assert all(m.trace() == 0 for m in matrices)

    def test_unsupported_rank(self):
        with pytest.raises(HomLieError):
            sl(4)

    def test_killing_sl2(self, sl2):
        K = killing(sl2)
        assert K[2, 2] == 8
        assert K[0, 1] == K[1, 0] == 4

    def test_killing_sl3(self, sl3):
        K = killing(sl3)
        assert rank(K) == 8
        assert K.is_symmetric()
        for i in range(8):
            assert is_skew_adjoint(K, adjoint(sl3, unit_vector(8, i)))


class TestCyclicMu:
    """Test cases for completing cyclic 3-forms."""

    def test_orbit_is_completed(self):
        mu = cyclic_mu_tensor(8, MU_234)
        assert mu.basis_bracket(1, 2) == {3: Fraction(1)}
        assert mu.basis_bracket(2, 3) == {1: Fraction(1)}
        assert mu.basis_bracket(2, 1) == {3: Fraction(-1)}
        assert len(mu.entries) == 3

    def test_any_key_of_an_orbit(self):
        assert cyclic_mu_tensor(8, {(3, 2, 4): -1}) == cyclic_mu_tensor(8, MU_234)
        assert cyclic_mu_tensor(8, {(2, 3, 4): 1, (3, 4, 2): 1}) == cyclic_mu_tensor(8, MU_234)

    def test_conflict(self):
        with pytest.raises(AxiomError) as exc:
            cyclic_mu_tensor(8, {(2, 3, 4): 1, (3, 2, 4): 1})
        assert exc.value.check == "mu.cyclic"

    def test_repeated_index(self):
        with pytest.raises(AxiomError) as exc:
            cyclic_mu_tensor(8, {(2, 2, 4): 1})
        assert exc.value.check == "mu.antisymmetric"
        assert cyclic_mu_tensor(8, {(2, 2, 4): 0}).is_abelian

    def test_range(self):
        with pytest.raises(AxiomError) as exc:
            cyclic_mu_tensor(8, {(2, 3, 9): 1})
        assert exc.value.check == "mu.range"

    def test_parse_assignment(self):
        assert parse_mu_assignment("2,3,4=1/2") == ((2, 3, 4), Fraction(1, 2))
        assert mu_from_assignments(["2,3,4=1", "1,5,6=-3"]) == {(2, 3, 4): 1, (1, 5, 6): -3}

    @pytest.mark.parametrize("text", ["2,3,4", "2,3=1", "a,b,c=1", "2,3,4=x"])
    def test_malformed_assignment(self, text):
        with pytest.raises(ParseError) as exc:
            parse_mu_assignment(text)
        assert exc.value.code in ("malformed_mu", "malformed_rational")


class TestTwistedCotangent:
    """Test cases for the Killing-twisted cotangent of sl3."""

    def test_cyclic_defect(self, twisted_sl3):
        defect = cyclic_defect(twisted_sl3, 0, 1, 2)
        expected = [Fraction(0)] * 16
        expected[11] = Fraction(-3)
        assert defect == tuple(expected)

    def test_report(self, twisted_sl3):
        report = full_report(twisted_sl3)
        assert report.ok("homlie") and report.ok("centroid") and report.ok("metric")
        assert report.facts["is_lie"] is False

    def test_without_mu_is_lie(self, twisted_sl3_lie):
        assert cyclic_defect(twisted_sl3_lie, 0, 1, 2) == zero_vector(16)
        assert full_report(twisted_sl3_lie).facts["is_lie"] is True

    def test_labels_and_dimension(self, twisted_sl3):
        assert twisted_sl3.dim == 16
        assert twisted_sl3.labels[8] == "alpha1"

    def test_scale(self):
        q = killing_twisted_cotangent(2, scale=Fraction(1, 4))
        assert q.twist[5, 2] == 2
