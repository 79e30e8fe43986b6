"""
Tests for the JSON codec.
"""

import json
from dataclasses import replace

import pytest

from src.algebra.homlie import killing
from src.algebra.verify import full_report
from src.catalog.generator import ExtensionDataGenerator
from src.catalog.sl import sl
from src.errors import ParseError
from src.extension.builder import build
from src.extension.hypotheses import check_hypotheses
from src.serialization.codec import (
    algebra_to_dict,
    decomposition_to_dict,
    dump,
    format_location,
    parse_algebra,
    parse_decomposition,
    parse_extension,
    parse_report,
    serialize_algebra,
    serialize_decomposition,
    serialize_extension,
    serialize_report,
)
from src.structure.decomposition import decompose
from src.structure.validation import validate_decomposition


def algebra_document(**overrides):
    document = {
        "schema_version": "1",
        "dim": 2,
        "bracket": [[0, 1, 1, "1"]],
        "twist": [["1", "0"], ["0", "1"]],
    }
    document.update(overrides)
    return json.dumps(document)


def parse_error(text):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    return exc.value


class TestAlgebraCodec:
    """Test cases for algebra documents."""

    @pytest.mark.parametrize("seed", range(100))
    def test_random_algebras_survive(self, seed):
        algebra = ExtensionDataGenerator(seed).random_algebra()
        text = serialize_algebra(algebra)
        parsed = parse_algebra(text)
        assert parsed == algebra
        assert type(parsed) is type(algebra)
        assert parsed.labels == algebra.labels
        assert serialize_algebra(parsed) == text

    def test_catalog_algebra(self, twisted_sl3):
        document = algebra_to_dict(twisted_sl3)
        assert document["dim"] == 16
        assert [1, 2, 11, "1"] in document["bracket"]
        assert document["labels"][0] == "x1"
        assert parse_algebra(dump(document)) == twisted_sl3

    def test_canonical_layout(self, sl2):
        text = serialize_algebra(sl2)
        assert text.endswith("}\n")
        assert text == dump(json.loads(text))
        assert list(json.loads(text)) == sorted(json.loads(text))

    def test_fractions_in_lowest_terms(self):
        algebra = parse_algebra(algebra_document(twist=[["2/4", "0"], ["0", "-6/3"]]))
        assert json.loads(serialize_algebra(algebra))["twist"] == [["1/2", "0"], ["0", "-2"]]


class TestParseErrors:
    """Test cases for error codes and locations."""

    def test_bracket_order(self):
        error = parse_error(algebra_document(bracket=[[1, 0, 1, "1"]]))
        assert error.code == "bracket_order"
        assert str(error) == "bracket indices must satisfy i<j"
        assert error.location == "bracket[0]"

    def test_diagonal_bracket_entry(self):
        assert parse_error(algebra_document(bracket=[[1, 1, 0, "1"]])).code == "bracket_order"

    def test_zero_denominator(self):
        error = parse_error(algebra_document(twist=[["1/0", "0"], ["0", "1"]]))
        assert error.code == "zero_denominator"
        assert error.location == "twist[0][0]"

    def test_malformed_rational(self):
        error = parse_error(algebra_document(bracket=[[0, 1, 1, "1.5"]]))
        assert error.code == "malformed_rational"
        assert error.location == "bracket[0][3]"

    def test_index_out_of_range(self):
        error = parse_error(algebra_document(bracket=[[0, 2, 1, "1"]]))
        assert error.code == "index_out_of_range"
        assert error.location == "bracket[0][1]"

    def test_duplicate_entry(self):
        error = parse_error(algebra_document(bracket=[[0, 1, 1, "1"], [0, 1, 1, "2"]]))
        assert error.code == "duplicate_entry"
        assert error.location == "bracket[1]"

    def test_shape_mismatch(self):
        assert parse_error(algebra_document(twist=[["1", "0"]])).location == "twist"
        error = parse_error(algebra_document(twist=[["1", "0"], ["0"]]))
        assert error.code == "shape_mismatch"
        assert error.location == "twist[1]"
        assert parse_error(algebra_document(labels=["a"])).code == "shape_mismatch"

    def test_non_symmetric_metric(self):
        error = parse_error(algebra_document(metric=[["0", "1"], ["2", "0"]]))
        assert error.code == "non_symmetric_metric"
        assert error.location == "metric[0][1]"

    def test_degenerate_metric_is_accepted(self):
        algebra = parse_algebra(algebra_document(metric=[["0", "0"], ["0", "0"]]))
        assert algebra.gram.is_zero()

    def test_unknown_field(self):
        error = parse_error(algebra_document(extra=1))
        assert error.code == "unknown_field"
        assert error.location == "extra"

    def test_invalid_json(self):
        assert parse_error("{").code == "invalid_json"

    @pytest.mark.parametrize("overrides", [{"dim": "2"}, {"schema_version": "2"}, {"dim": -1}])
    def test_schema(self, overrides):
        error = parse_error(algebra_document(**overrides))
        assert error.code == "schema"
        assert error.to_dict()["error"] == "schema"

    def test_format_location(self):
        assert format_location(("bracket", 3, 1)) == "bracket[3][1]"
        assert format_location(("checks", "skew", "passed")) == "checks.skew.passed"


class TestExtensionCodec:
    """Test cases for extension documents."""

    @pytest.mark.parametrize("seed", range(10))
    def test_generated_data_survives(self, seed):
        data = ExtensionDataGenerator(seed).generate()
        text = serialize_extension(data)
        assert parse_extension(text) == data
        assert serialize_extension(parse_extension(text)) == text

    def test_matrix_count(self):
        document = json.loads(serialize_extension(ExtensionDataGenerator(1).generate("line", 2)))
        document["rho"] = document["rho"][:1]
        with pytest.raises(ParseError) as exc:
            parse_extension(json.dumps(document))
        assert exc.value.code == "shape_mismatch"
        assert exc.value.location == "rho"

    def test_tau_location(self):
        document = json.loads(serialize_extension(ExtensionDataGenerator(1).generate("line", 2)))
        document["tau"][2][1][0] = "x"
        with pytest.raises(ParseError) as exc:
            parse_extension(json.dumps(document))
        assert exc.value.location == "tau[2][1][0]"


class TestReports:
    """Test cases for report and decomposition documents."""

    def test_full_report(self, twisted_sl3):
        parsed = parse_report(serialize_report(full_report(twisted_sl3)))
        assert parsed.passed
        assert parsed.checks["homlie"].passed
        assert parsed.facts["is_lie"] is False

    def test_hypothesis_report_warnings(self):
        report = check_hypotheses(ExtensionDataGenerator(2).generate("cotangent", 2))
        assert parse_report(serialize_report(report)).warnings == []

    def test_failure_needs_witness(self):
        text = json.dumps({"passed": False, "checks": {"skew": {"passed": False}}})
        with pytest.raises(ParseError) as exc:
            parse_report(text)
        assert exc.value.code == "schema"

    def test_decomposition_document(self, twisted_sl2, twisted_sl2_decomposition):
        validation = validate_decomposition(twisted_sl2_decomposition, twisted_sl2)
        document = decomposition_to_dict(twisted_sl2_decomposition, validation)
        assert document["s_dim"] == 3 and document["h_dim"] == 0
        assert len(document["maximal_ideal"]) == 3
        assert len(document["frame"]) == 6
        assert document["validation"]["passed"] is True
        assert parse_extension(dump(document["extension"])) == twisted_sl2_decomposition.to_extension()

    def test_decomposition_has_every_block(self, twisted_sl3, twisted_sl3_decomposition):
        d = twisted_sl3_decomposition
        document = decomposition_to_dict(d, validate_decomposition(d, twisted_sl3), lie_dim=0)
        assert set(document) == {
            "schema_version", "dim", "lie_dim", "s_dim", "h_dim",
            "maximal_ideal", "iso_radical", "h_space", "s_space", "frame",
            "xi", "sigma", "gamma", "lambda", "mu", "L", "extension", "validation",
        }
        assert len(document["iso_radical"]) == d.iso_radical.dim
        assert len(document["sigma"]) == 8
        assert document["mu"]

    def test_decomposition_reparses_to_blocks(self, twisted_sl3, twisted_sl3_decomposition):
        d = twisted_sl3_decomposition
        text = serialize_decomposition(d, validate_decomposition(d, twisted_sl3))
        parsed = parse_decomposition(text)
        assert parsed == d
        assert parsed.mu == d.mu and parsed.xi == d.xi and parsed.sigma == d.sigma
        assert serialize_decomposition(parsed, validate_decomposition(parsed, twisted_sl3)) == text

    def test_nonabelian_decomposition_reparses(self):
        data = replace(ExtensionDataGenerator(3).generate("nonabelian", 2), varphi=killing(sl(2)))
        q = build(data)
        d = decompose(q)
        parsed = parse_decomposition(serialize_decomposition(d))
        assert parsed == d
        assert parsed.L == d.L and parsed.gamma == d.gamma and parsed.lambda_ == d.lambda_
        assert parsed.h_space == d.h_space and parsed.s_space == d.s_space

    def test_decomposition_dim_mismatch(self, twisted_sl2_decomposition):
        document = decomposition_to_dict(twisted_sl2_decomposition)
        document["dim"] = 7
        with pytest.raises(ParseError) as exc:
            parse_decomposition(json.dumps(document))
        assert exc.value.code == "shape_mismatch"
        assert exc.value.location == "dim"

    def test_decomposition_table_index_located(self, twisted_sl2_decomposition):
        document = decomposition_to_dict(twisted_sl2_decomposition)
        document["mu"].append([0, 0, 5, "1"])
        with pytest.raises(ParseError) as exc:
            parse_decomposition(json.dumps(document))
        assert exc.value.code == "index_out_of_range"
        assert exc.value.location == f"mu[{len(document['mu']) - 1}][2]"
