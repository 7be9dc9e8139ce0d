"""CLI thin client: commands, exit codes, artifact files."""

import json
import math

import pytest
from click.testing import CliRunner

from chsh_tradeoff.cli import main
from chsh_tradeoff.qcore import haar_random_state
from chsh_tradeoff.stateio import state_to_dict


@pytest.fixture
def runner():
    return CliRunner()


def write_state(path, n=3, index=0):
    dim = 2 ** n
    amps = [[0.0, 0.0]] * dim
    amps[index] = [1.0, 0.0]
    path.write_text(json.dumps({"n": n, "amplitudes": amps}))
    return str(path)


class TestAnalyze:
    def test_product_state_stdout(self, runner, tmp_path):
        state = write_state(tmp_path / "s.json")
        result = runner.invoke(main, ["analyze", "--state", state])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["report"]["total"] == pytest.approx(12.0, abs=1e-10)
        assert body["report"]["class"]["tag"] == "ProductABC"

    def test_w_state_total(self, runner, tmp_path):
        r = 1.0 / math.sqrt(3.0)
        amps = [[0.0, 0.0]] * 8
        for idx in (1, 2, 4):
            amps[idx] = [r, 0.0]
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"n": 3, "amplitudes": amps}))
        result = runner.invoke(main, ["analyze", "--state", str(path)])
        assert result.exit_code == 0
        assert json.loads(result.output)["report"]["total"] == pytest.approx(
            32.0 / 3.0, abs=1e-8
        )

    def test_out_file_and_csv(self, runner, tmp_path):
        state = write_state(tmp_path / "s.json")
        out = tmp_path / "report.csv"
        result = runner.invoke(
            main, ["analyze", "--state", state, "--format", "csv", "--out", str(out)]
        )
        assert result.exit_code == 0
        assert "class,ProductABC" in out.read_text()

    def test_truncated_json_exit_2_no_output(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 3, "amplitudes": [[1.0,')
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["analyze", "--state", str(bad), "--out", str(out)])
        assert result.exit_code == 2
        assert "invalid JSON" in result.output
        assert not out.exists()

    def test_missing_field_exit_2_names_field(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"amplitudes": [[1.0, 0.0]] * 8}))
        result = runner.invoke(main, ["analyze", "--state", str(bad)])
        assert result.exit_code == 2
        assert "n" in result.output

    def test_unnormalized_exit_3(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        amps = [[0.0, 0.0]] * 8
        amps[0] = [1.01, 0.0]
        bad.write_text(json.dumps({"n": 3, "amplitudes": amps}))
        result = runner.invoke(main, ["analyze", "--state", str(bad)])
        assert result.exit_code == 3

    def test_missing_file_exit_2(self, runner, tmp_path):
        result = runner.invoke(main, ["analyze", "--state", str(tmp_path / "nope.json")])
        assert result.exit_code == 2

    def test_family_record_file(self, runner, tmp_path):
        rec = tmp_path / "ghz.json"
        rec.write_text(json.dumps({"family": "ghz", "delta": math.pi / 4, "alpha": math.pi / 2,
                                   "beta": math.pi / 2, "gamma": math.pi / 2,
                                   "phi": math.pi / 2}))
        result = runner.invoke(main, ["analyze", "--state", str(rec)])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["report"]["total"] == pytest.approx(12.0, abs=1e-10)
        assert body["report"]["class"]["tag"] == "GHZ"


class TestSweep:
    def test_biseparable_csv(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        result = runner.invoke(
            main,
            ["sweep", "--family", "biseparable", "--grid", "delta=0.05:0.78:8",
             "--out", str(out)],
        )
        assert result.exit_code == 0
        lines = out.read_text().splitlines()
        assert sum(1 for ln in lines if ln.startswith("biseparable,")) == 8

    def test_byte_identical_reruns(self, runner, tmp_path):
        # identical config (same out path) must reproduce the file exactly
        out = tmp_path / "sweep.csv"
        args = ["sweep", "--family", "w", "--grid", "a=0.1:0.4:3,b=0.1:0.4:3,c=0.1:0.4:3",
                "--out", str(out)]
        assert runner.invoke(main, args).exit_code == 0
        first = out.read_bytes()
        assert runner.invoke(main, args).exit_code == 0
        assert out.read_bytes() == first

    def test_bad_grid_exit_2(self, runner, tmp_path):
        result = runner.invoke(
            main, ["sweep", "--family", "w", "--grid", "a=1:2", "--out", str(tmp_path / "x.csv")]
        )
        assert result.exit_code == 2


class TestSearch:
    def test_small_search(self, runner, tmp_path):
        out = tmp_path / "search.json"
        args = ["search", "--qubits", "4", "--samples", "20", "--restarts", "1",
                "--seed", "5", "--out", str(out)]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["violation_found"] is False
        assert report["samples"] == 20

    def test_byte_identical_reports(self, runner, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        base = ["search", "--qubits", "4", "--samples", "15", "--restarts", "1", "--seed", "3"]
        assert runner.invoke(main, base + ["--out", str(out1)]).exit_code == 0
        assert runner.invoke(main, base + ["--out", str(out2)]).exit_code == 0
        r1, r2 = out1.read_bytes(), out2.read_bytes()
        # identical except the echoed output path inside the config block
        assert r1.replace(b"r1.json", b"") == r2.replace(b"r2.json", b"")

    def test_warm_start_file(self, runner, tmp_path):
        ghz = tmp_path / "ghz4.json"
        amps = [[0.0, 0.0]] * 16
        amps[0] = [math.cos(math.pi / 4), 0.0]
        amps[15] = [math.sin(math.pi / 4), 0.0]
        ghz.write_text(json.dumps({"n": 4, "amplitudes": amps}))
        out = tmp_path / "warm.json"
        result = runner.invoke(
            main,
            ["search", "--qubits", "4", "--samples", "3", "--restarts", "1", "--seed", "2",
             "--warm-start", str(ghz), "--out", str(out)],
        )
        assert result.exit_code == 0
        assert json.loads(out.read_text())["best_total"] == pytest.approx(3.0, abs=1e-9)


class TestVerify:
    def test_theorem1_passes(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "theorem1"])
        assert result.exit_code == 0
        assert "PASS theorem1" in result.output

    def test_verify_prints_max_error(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "theorem2"])
        assert result.exit_code == 0
        assert "max error" in result.output

    def test_failed_check_exits_1(self, runner, monkeypatch):
        import chsh_tradeoff.service.app as app_module
        from chsh_tradeoff.verify import CheckResult, SuiteReport

        def fake_run_suite(name, samples=None, restarts=None, seed=None):
            return [SuiteReport("theorem1", [CheckResult("forced", False, 1.0, 0.0)])]

        monkeypatch.setattr(app_module, "run_suite", fake_run_suite)
        result = runner.invoke(main, ["verify", "--suite", "theorem1"])
        assert result.exit_code == 1
        assert "FAIL theorem1: forced" in result.output


class TestSearchViolationExit:
    def test_violation_report_exits_10(self, runner, tmp_path, monkeypatch):
        import chsh_tradeoff.service.app as app_module
        from chsh_tradeoff.conjecture4 import SearchResult
        from chsh_tradeoff.qcore import pure_state
        import numpy as np

        fake = SearchResult(
            n=4, anchor="A", samples=1, restarts=0, seed=0,
            best_total=3.5, best_state=pure_state(4, np.eye(16)[0]),
            histogram=[0] * 80, violation_found=True,
        )
        monkeypatch.setattr(app_module, "search_max", lambda *a, **k: fake)
        out = tmp_path / "v.json"
        result = runner.invoke(
            main,
            ["search", "--qubits", "4", "--samples", "1", "--restarts", "0",
             "--seed", "0", "--out", str(out)],
        )
        assert result.exit_code == 10
        assert "VIOLATION FOUND" in result.output
        assert json.loads(out.read_text())["violation_found"] is True


class TestRandom:
    def test_writes_artifact(self, runner, tmp_path):
        out = tmp_path / "states.json"
        result = runner.invoke(
            main, ["random", "--qubits", "3", "--count", "3", "--seed", "40", "--out", str(out)]
        )
        assert result.exit_code == 0
        body = json.loads(out.read_text())
        assert len(body["states"]) == 3
        assert body["states"][1] == state_to_dict(haar_random_state(3, 41))

    def test_single_state_artifact_feeds_analyze(self, runner, tmp_path):
        out = tmp_path / "one.json"
        assert runner.invoke(
            main, ["random", "--qubits", "3", "--count", "1", "--seed", "7", "--out", str(out)]
        ).exit_code == 0
        result = runner.invoke(main, ["analyze", "--state", str(out)])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert 8.0 - 1e-9 <= body["report"]["total"] <= 12.0 + 1e-9
