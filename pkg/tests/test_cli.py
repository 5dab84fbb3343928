import json

import pytest
from click.testing import CliRunner

from avoidsim.cli import main


@pytest.fixture
def runner():
    return CliRunner()


class TestRunCommand:
    def test_friend_constant_30(self, runner, tmp_path):
        result = runner.invoke(main, [
            "run", "--relationship", "friend", "--source", "const:30",
            "--frames", "20", "--out", str(tmp_path),
        ])
        assert result.exit_code == 0, result.output
        assert "first_crossing=7" in result.output
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["first_crossing"] == 7
        lines = (tmp_path / "events.ndjson").read_text().splitlines()
        assert len(lines) == 20
        tick = json.loads(lines[6])
        assert tick["frame"] == 7 and tick["avoid"]["pattern"] == "Strike"
        csv_lines = (tmp_path / "timeline.csv").read_text().splitlines()
        assert csv_lines[0].startswith("frame,d_raw,d,n,s,phase,")
        assert len(csv_lines) == 21

    def test_acquaintance_no_crossing(self, runner, tmp_path):
        result = runner.invoke(main, [
            "run", "--relationship", "acquaintance", "--source", "const:30",
            "--frames", "200", "--out", str(tmp_path),
        ])
        assert result.exit_code == 0
        assert "first_crossing=None" in result.output
        assert "avoidance_count=0" in result.output

    def test_out_of_range_source(self, runner, tmp_path):
        result = runner.invoke(main, [
            "run", "--source", "const:700", "--frames", "10", "--out", str(tmp_path),
        ])
        assert result.exit_code == 0
        assert "avoidance_count=0" in result.output
        assert "max_s=0.0000" in result.output

    def test_ramp_and_sin_sources_parse(self, runner, tmp_path):
        for src in ("ramp:100:10", "sin:30:40:5"):
            result = runner.invoke(main, [
                "run", "--source", src, "--frames", "30", "--out", str(tmp_path),
            ])
            assert result.exit_code == 0, result.output

    def test_trace_source(self, runner, tmp_path):
        trace = tmp_path / "t.csv"
        trace.write_text("t_ms,distance_cm\n0,30\n100,30\n200,30\n")
        result = runner.invoke(main, [
            "run", "--source", f"trace:{trace}", "--out", str(tmp_path / "out"),
        ])
        assert result.exit_code == 0
        assert "frames=3" in result.output

    def test_bad_source_errors(self, runner, tmp_path):
        result = runner.invoke(main, [
            "run", "--source", "warp:9", "--out", str(tmp_path),
        ])
        assert result.exit_code != 0
        assert "unknown source" in result.output


class TestCheckCommand:
    def test_default_profiles_all_pass(self, runner):
        result = runner.invoke(main, ["check"])
        assert result.exit_code == 0, result.output
        assert result.output.count("PASS") == 5
        assert "FAIL" not in result.output

    def test_overridden_threshold_fails_friend_case(self, runner):
        # With e_th=0.80 everywhere the friend-30 crossing moves to t=10
        # (s_9 = 0.7997 <= 0.80 < s_10 = 0.8098).
        result = runner.invoke(main, ["check", "--e-th", "0.80"])
        assert result.exit_code == 1
        first = result.output.splitlines()[1]
        assert "friend" in first and "FAIL" in first and " 10 " in first

    def test_no_decay_means_no_friend_crossing(self, runner):
        result = runner.invoke(main, ["check", "--decay-c", "0"])
        assert result.exit_code == 1
        first = result.output.splitlines()[1]
        assert "friend" in first and "None" in first and "FAIL" in first


class TestFitCommand:
    def test_two_anchor_fit(self, runner):
        result = runner.invoke(main, [
            "fit", "--anchor", "30:0.25", "--anchor", "10:0.39",
        ])
        assert result.exit_code == 0, result.output
        assert "a = 0.48711" in result.output
        assert "b = -0.0222343" in result.output

    def test_constraint_verified(self, runner):
        result = runner.invoke(main, [
            "fit", "--anchor", "30:0.56", "--anchor", "20:0.615",
            "--constraint", "20:0.7:2.0:11",
        ])
        assert result.exit_code == 0, result.output
        assert "a = 0.741736" in result.output

    def test_single_anchor_errors(self, runner):
        result = runner.invoke(main, ["fit", "--anchor", "30:0.25"])
        assert result.exit_code != 0

    def test_infeasible_constraint_errors(self, runner):
        result = runner.invoke(main, [
            "fit", "--anchor", "30:0.56", "--anchor", "20:0.615",
            "--constraint", "30:0.7:2.0:5",
        ])
        assert result.exit_code != 0
        assert "constraint" in result.output
