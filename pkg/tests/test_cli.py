"""
Tests for the homlie command line.
"""

import io
import json
import logging
from dataclasses import replace

import pytest

from src import cli
from src.algebra.tensor import StructureTensor
from src.catalog.examples import cotangent_extension_data
from src.catalog.sl import sl
from src.linalg.matrix import Matrix
from src.serialization.codec import parse_algebra, parse_decomposition, serialize_algebra, serialize_extension

QUIET = ["--log-level", "ERROR"]


@pytest.fixture(autouse=True)
def _restore_logging():
    yield
    logging.getLogger().handlers.clear()


def run(capsys, *args):
    code = cli.main(QUIET + [str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def last_error(err):
    return json.loads(err.strip().splitlines()[-1])


@pytest.fixture
def sl3_file(tmp_path, capsys):
    path = tmp_path / "sl3.json"
    code, _, _ = run(capsys, "example", "sl3", "--mu", "2,3,4=1", "-o", path)
    assert code == cli.EXIT_OK
    return path


@pytest.fixture
def sl2_file(tmp_path, capsys):
    path = tmp_path / "sl2.json"
    code, _, _ = run(capsys, "example", "sl2", "--scale", "1/2", "-o", path)
    assert code == cli.EXIT_OK
    return path


class TestVerify:
    """Test cases for ``homlie verify``."""

    def test_twisted_sl3(self, capsys, sl3_file):
        code, out, _ = run(capsys, "verify", sl3_file)
        assert code == cli.EXIT_OK
        report = json.loads(out)
        assert report["passed"] is True
        assert report["facts"]["is_lie"] is False
        assert report["facts"]["dim"] == 16

    def test_selected_checks(self, capsys, sl3_file):
        code, out, _ = run(capsys, "verify", sl3_file, "--checks", "skew,metric")
        assert code == cli.EXIT_OK
        assert sorted(json.loads(out)["checks"]) == [
            "metric.invariant",
            "metric.nondegenerate",
            "metric.symmetric",
            "metric.twist_selfadjoint",
            "skew",
        ]

    def test_failing_algebra(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        broken = sl(2).with_twist(Matrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
        path.write_text(serialize_algebra(broken))
        code, out, _ = run(capsys, "verify", path)
        assert code == cli.EXIT_CHECK_FAILED
        report = json.loads(out)
        assert report["checks"]["centroid.left"]["witness"]["indices"] == [0, 1]

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(serialize_algebra(sl(2))))
        code, out, _ = run(capsys, "verify", "-")
        assert code == cli.EXIT_OK
        assert json.loads(out)["facts"]["is_lie"] is True


class TestConstruct:
    """Test cases for ``homlie construct``."""

    def test_prints_algebra(self, capsys, tmp_path):
        path = tmp_path / "data.json"
        path.write_text(serialize_extension(cotangent_extension_data(2)))
        code, out, _ = run(capsys, "construct", path)
        assert code == cli.EXIT_OK
        assert parse_algebra(out).dim == 6

    def test_writes_algebra_and_reports(self, capsys, tmp_path):
        path = tmp_path / "data.json"
        target = tmp_path / "algebra.json"
        path.write_text(serialize_extension(cotangent_extension_data(2)))
        code, out, _ = run(capsys, "construct", path, "-o", target)
        assert code == cli.EXIT_OK
        document = json.loads(out)
        assert document["hypotheses"]["passed"] is True
        assert document["certification"]["passed"] is True
        assert parse_algebra(target.read_text()).dim == 6

    def test_rejects_non_cyclic_mu(self, capsys, tmp_path):
        data = replace(cotangent_extension_data(2), mu=StructureTensor.from_entries(3, [(0, 1, 2, 1)]))
        path = tmp_path / "bad.json"
        path.write_text(serialize_extension(data))
        code, out, err = run(capsys, "construct", path)
        assert code == cli.EXIT_REJECTED
        checks = json.loads(out)["hypotheses"]["checks"]
        assert checks["G"]["passed"] is False
        assert checks["G"]["witness"]["indices"] == [0, 1, 2]
        error = last_error(err)
        assert error["error"] == "hypothesis_failed"
        assert "G" in error["message"]


class TestStructureCommands:
    """Test cases for decompose, roundtrip and analyze."""

    def test_roundtrip(self, capsys, sl2_file):
        code, out, _ = run(capsys, "roundtrip", sl2_file)
        assert code == cli.EXIT_OK
        document = json.loads(out)
        assert document["status"] == "exact match"
        assert document["exact_match"] is True

    def test_decompose(self, capsys, sl2_file, tmp_path):
        target = tmp_path / "decomposition.json"
        code, out, _ = run(capsys, "decompose", sl2_file, "-o", target)
        assert code == cli.EXIT_OK
        assert out == ""
        document = json.loads(target.read_text())
        assert document["dim"] == 6
        assert document["lie_dim"] == 0
        assert document["validation"]["passed"] is True
        assert document["s_dim"] == 3
        assert len(document["sigma"]) == 3
        assert parse_decomposition(target.read_text()).frame.rows == 6

    def test_decompose_needs_metric(self, capsys, tmp_path):
        path = tmp_path / "sl2.json"
        path.write_text(serialize_algebra(sl(2)))
        code, _, err = run(capsys, "decompose", path)
        assert code == cli.EXIT_REJECTED
        assert last_error(err)["error"] == "structure"

    def test_analyze(self, capsys, sl2_file):
        code, out, _ = run(capsys, "analyze", sl2_file)
        assert code == cli.EXIT_OK
        document = json.loads(out)
        assert document["dim"] == 6
        assert document["center_dim"] == 0
        assert document["derived_dim"] == 6
        assert document["nilpotency_index"] == 2
        assert document["twist_rank_profile"] == [6, 3, 0]
        assert document["fitting_index"] == 2
        assert document["simple"]["simple"] is False


class TestGenerate:
    """Test cases for ``homlie generate``."""

    def test_to_directory(self, capsys, tmp_path):
        code, out, _ = run(capsys, "generate", 7, "-c", 3, "-o", tmp_path / "out")
        assert code == cli.EXIT_OK
        files = json.loads(out)["files"]
        assert len(files) == 3
        assert sorted(p.name for p in (tmp_path / "out").iterdir()) == [
            "extension_7_000.json",
            "extension_7_001.json",
            "extension_7_002.json",
        ]

    def test_to_stdout_is_reproducible(self, capsys):
        _, first, _ = run(capsys, "generate", 4, "--count", 2)
        _, second, _ = run(capsys, "generate", 4, "--count", 2)
        assert first == second
        assert len(json.loads(first)["extensions"]) == 2


class TestErrors:
    """Test cases for error documents and exit codes."""

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        code, out, err = run(capsys, "verify", path)
        assert code == cli.EXIT_PARSE_ERROR
        assert out == ""
        assert last_error(err)["error"] == "invalid_json"

    def test_located_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        document = json.loads(serialize_algebra(sl(2)))
        document["bracket"][0][3] = "1/0"
        path.write_text(json.dumps(document))
        code, _, err = run(capsys, "verify", path)
        assert code == cli.EXIT_PARSE_ERROR
        assert last_error(err) == {
            "error": "zero_denominator",
            "message": "Invalid rational: '1/0' - zero denominator",
            "location": "bracket[0][3]",
        }

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", tmp_path / "missing.json")
        assert code == cli.EXIT_PARSE_ERROR
        assert last_error(err)["error"] == "io_error"

    def test_bad_mu(self, capsys):
        code, _, err = run(capsys, "example", "sl3", "--mu", "2,3,3=1")
        assert code == cli.EXIT_REJECTED
        assert last_error(err)["error"] == "axiom"

    def test_bad_scale(self, capsys):
        code, _, err = run(capsys, "example", "sl2", "--scale", "half")
        assert code == cli.EXIT_PARSE_ERROR
        assert last_error(err)["error"] == "malformed_rational"

    def test_bad_configuration(self, capsys):
        code = cli.main(["--log-level", "LOUD", "verify", "-"])
        _, err = capsys.readouterr()
        assert code == cli.EXIT_PARSE_ERROR
        assert last_error(err)["error"] == "configuration"
