"""Command line behavior: exit codes, report formats, golden outputs."""

import json

import pytest
from click.testing import CliRunner

from wres.cli import main
from wres.curvature import constant_curvature, random_riemann


@pytest.fixture
def runner():
    return CliRunner()


class TestVerifyCommand:
    def test_all_match_exits_zero(self, runner):
        result = runner.invoke(main, ["verify", "--dim", "4", "--seeds", "2"])
        assert result.exit_code == 0
        assert "all identities hold" in result.output
        assert "seed=0" in result.output and "seed=1" in result.output

    def test_bad_dimension_is_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--dim", "5"])
        assert result.exit_code == 2
        assert "--dim" in result.output

    def test_nonpositive_seed_count_rejected(self, runner):
        result = runner.invoke(main, ["verify", "--dim", "4", "--seeds", "0"])
        assert result.exit_code == 2

    def test_json_report_round_trips_byte_identically(self, runner):
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--seeds", "1", "--json"]
        )
        assert result.exit_code == 0
        reports = json.loads(result.output)
        assert json.dumps(reports, indent=2, sort_keys=True) + "\n" == result.output
        assert reports[0]["dim"] == 4
        assert len(reports[0]["parts"]) == 18

    def test_seed_base_env_shifts_the_sweep(self, runner):
        result = runner.invoke(
            main,
            ["verify", "--dim", "4", "--seeds", "2", "--json"],
            env={"WRES_SEED_BASE": "7"},
        )
        assert result.exit_code == 0
        assert [r["seed"] for r in json.loads(result.output)] == [7, 8]

    def test_bad_seed_base_env(self, runner):
        result = runner.invoke(
            main, ["verify", "--dim", "4"], env={"WRES_SEED_BASE": "x"}
        )
        assert result.exit_code == 2

    def test_curvature_file_source(self, runner, tmp_path):
        path = tmp_path / "tensor.json"
        path.write_text(json.dumps(random_riemann(4, 1).to_json()))
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--seeds", "1", "--curvature", str(path)]
        )
        assert result.exit_code == 0

    def test_invalid_curvature_file_is_usage_error(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 4, "entries": [[1, 2, 1, 2, 1, 1]]}))
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--curvature", str(path)]
        )
        assert result.exit_code == 2
        assert "antisymmetry" in result.output

    def test_missing_curvature_file_is_usage_error(self, runner):
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--curvature", "nope.json"]
        )
        assert result.exit_code == 2

    def test_curvature_dimension_mismatch(self, runner, tmp_path):
        path = tmp_path / "t2.json"
        path.write_text(json.dumps(constant_curvature(2).to_json()))
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--curvature", str(path)]
        )
        assert result.exit_code == 2

    def test_vector_parsing(self, runner):
        result = runner.invoke(
            main,
            [
                "verify",
                "--dim",
                "4",
                "--seeds",
                "1",
                "--u",
                "1/2,0,3,0",
                "--v",
                "0,1,0,2",
            ],
        )
        assert result.exit_code == 0

    def test_vector_length_mismatch(self, runner):
        result = runner.invoke(
            main, ["verify", "--dim", "4", "--u", "1,2,3"]
        )
        assert result.exit_code == 2
        assert "comma-separated" in result.output

    def test_out_writes_file(self, runner, tmp_path):
        path = tmp_path / "report.json"
        result = runner.invoke(
            main,
            [
                "verify",
                "--dim",
                "4",
                "--seeds",
                "1",
                "--json",
                "--out",
                str(path),
            ],
        )
        assert result.exit_code == 0
        assert json.loads(path.read_text())[0]["seed"] == 0

    def test_bare_invocation_defaults_to_dim4_sweep(self, runner):
        result = runner.invoke(main, [])
        assert result.exit_code == 0
        assert "verify dim=4" in result.output
        assert "seeds=0..9" in result.output


class TestPartsCommand:
    def test_table_rows(self, runner):
        result = runner.invoke(main, ["parts", "--dim", "4", "--seed", "2"])
        assert result.exit_code == 0
        for pid in ("I-1-A", "I-3-E", "II-5", "zabdt", "zpdt", "metric", "einstein"):
            assert pid in result.output
        assert result.output.count(" ok ") >= 22
        assert "all checks hold" in result.output

    def test_json_schema(self, runner):
        result = runner.invoke(
            main, ["parts", "--dim", "4", "--seed", "1", "--json"]
        )
        rep = json.loads(result.output)
        assert rep["seed"] == 1
        assert len(rep["parts"]) == 18


class TestEinsteinCommand:
    def test_requires_explicit_vectors(self, runner):
        result = runner.invoke(main, ["einstein", "--dim", "4"])
        assert result.exit_code == 2

    def test_constant_curvature_golden(self, runner):
        result = runner.invoke(
            main,
            ["einstein", "--dim", "4", "--u", "1,0,0,0", "--v", "1,0,0,0"],
        )
        assert result.exit_code == 0
        assert "core = (8)" in result.output
        assert "prefactor exponent = 0" in result.output
        assert "(8) * (a0*b0)^0 * Vol(S^3)" in result.output
        assert "matches closed form: yes" in result.output

    def test_eval_point_prints_numeric_value(self, runner):
        result = runner.invoke(
            main,
            [
                "einstein",
                "--dim",
                "4",
                "--u",
                "1,0,0,0",
                "--v",
                "1,0,0,0",
                "--eval",
                "1",
                "1",
            ],
        )
        assert result.exit_code == 0
        # 8 * Vol(S^3) = 16 pi^2
        assert "157.9136704174297" in result.output

    def test_json_output(self, runner):
        result = runner.invoke(
            main,
            [
                "einstein",
                "--dim",
                "4",
                "--u",
                "1,0,0,0",
                "--v",
                "0,1,0,0",
                "--json",
            ],
        )
        payload = json.loads(result.output)
        assert payload["matches_closed_form"] is True
        assert payload["prefactor_exp"] == 0

    def test_flat_curvature_vanishes(self, runner):
        result = runner.invoke(
            main,
            [
                "einstein",
                "--dim",
                "4",
                "--curvature",
                "flat",
                "--u",
                "1,0,0,0",
                "--v",
                "1,0,0,0",
            ],
        )
        assert result.exit_code == 0
        assert "core = 0" in result.output
