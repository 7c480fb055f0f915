"""Tests for the solvlie command line."""

import json
from pathlib import Path

import pytest

import config
from app import main

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"

DERIVED = "1,0,0,0;0,1,0,0;0,0,1,0"
COMPLEMENT = "0,0,1,0;0,0,0,1"


@pytest.fixture(autouse=True)
def shipped_fixtures(monkeypatch):
    monkeypatch.setattr(config, "FIXTURES_DIR", str(FIXTURES))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestValidate:
    """validate"""

    def test_solvable(self, capsys):
        code, out = run(capsys, "validate", "heisenberg3")
        body = json.loads(out)
        assert code == 0
        assert [r["status"] for r in body["records"]] == ["pass", "pass", "pass"]
        assert body["algebras"][0]["derived_length"] == 2

    def test_not_solvable(self, capsys):
        code, out = run(capsys, "validate", "sl2_like")
        body = json.loads(out)
        assert code == 1
        solvable = [r for r in body["records"] if r["check"] == "solvable"]
        assert solvable[0]["status"] == "fail"

    def test_missing_document(self, capsys):
        code, out = run(capsys, "validate", "no_such_algebra")
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "invalid_fixture"

    def test_malformed_document(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"field": {"kind": "Q"}, "dim": 2,\n "brackets": [', encoding="utf-8")
        code, out = run(capsys, "validate", str(bad))
        error = json.loads(out)["error"]
        assert code == 2
        assert error["kind"] == "parse_error"
        assert error["witness"]["line"] == 2


class TestQuery:
    """query"""

    def test_maximals(self, capsys):
        code, out = run(capsys, "query", "heisenberg3", "maximals")
        result = json.loads(out)["result"]
        assert code == 0
        assert result["count"] == 3

    def test_core(self, capsys):
        code, out = run(capsys, "query", "heisenberg3", "core", "--subspace", "1,0,0;0,0,1")
        assert code == 0
        assert json.loads(out)["result"]["value"] == "1,0,0;0,0,1"

    def test_core_needs_subspace(self, capsys):
        code, out = run(capsys, "query", "heisenberg3", "core")
        assert code == 2
        assert "error" in json.loads(out)

    def test_chief_series(self, capsys):
        code, out = run(capsys, "query", "example4_p2", "chief-series")
        result = json.loads(out)["result"]
        assert code == 0
        assert result["terms"][0] == "0"
        assert sum(result["factor_dims"]) == 4

    def test_minimal_ideals(self, capsys):
        code, out = run(capsys, "query", "example4_p2", "minimal-ideals")
        assert json.loads(out)["result"]["subspaces"] == ["1,0,0,0;0,1,0,0"]


class TestConjugacy:
    """conjugacy"""

    def test_hypothesis_not_met(self, capsys):
        code, out = run(capsys, "conjugacy", "example4_p2", DERIVED, COMPLEMENT)
        body = json.loads(out)
        assert code == 0
        assert body["result"]["verdict"] == "hypothesis_not_met"
        assert body["records"][0]["status"] == "skipped"

    def test_both_methods(self, capsys):
        code, out = run(capsys, "conjugacy", "example4_p2", DERIVED, COMPLEMENT, "--method", "both")
        result = json.loads(out)["result"]
        assert code == 0
        assert result["verdict"] == "not_conjugate"
        assert result["core_verdict"] == "hypothesis_not_met"

    def test_bad_subspace(self, capsys):
        code, out = run(capsys, "conjugacy", "example4_p2", "1,0", COMPLEMENT)
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "parse_error"

    def test_not_maximal(self, capsys):
        code, out = run(capsys, "conjugacy", "heisenberg3", "0,0,1", "0,0,1")
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "not_maximal"


class TestTheorems:
    """theorems"""

    def test_file_sweep_to_output(self, tmp_path, capsys):
        target = tmp_path / "out" / "sweep.json"
        code, out = run(capsys, "theorems", "--file", "heisenberg3", "--suite", "core", "--output", str(target))
        assert code == 0
        assert out == ""
        body = json.loads(target.read_text(encoding="utf-8"))
        assert body["summary"]["fail"] == 0
        assert body["summary"]["pass"] == 3
        assert "timing" not in body

    def test_reports_are_stable(self, capsys):
        argv = ["theorems", "--catalog", "gf2,dim<=2", "--seed", "9", "--samples", "3"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second
        assert json.loads(first)["records_hash"] == json.loads(second)["records_hash"]

    def test_timing_opt_in(self, capsys):
        _, out = run(capsys, "theorems", "--catalog", "gf2,dim<=2", "--suite", "core", "--timing")
        assert "seconds" in json.loads(out)["timing"]


class TestGenerators:
    """fixture and random"""

    def test_fixture_matches_shipped_document(self, capsys):
        code, out = run(capsys, "fixture", "heisenberg3", "--field", "gf2")
        assert code == 0
        shipped = json.loads((FIXTURES / "heisenberg3.json").read_text(encoding="utf-8"))
        assert json.loads(out) == shipped

    def test_random_is_seeded(self, capsys):
        _, first = run(capsys, "random", "--seed", "7", "--dim", "2", "--field", "gf3")
        _, second = run(capsys, "random", "--seed", "7", "--dim", "2", "--field", "gf3")
        assert first == second
        assert json.loads(first)["dim"] == 2

    def test_random_bad_dimension(self, capsys):
        code, out = run(capsys, "random", "--dim", "9")
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "bad_dimensions"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
