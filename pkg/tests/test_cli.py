"""End-to-end command line checks driven through main(argv)."""

import csv
import json

import pytest

from latticeswap.bench import RESULT_COLUMNS, SAVINGS_COLUMNS
from latticeswap.cli import main
from latticeswap.lattice import CycleStatistics


def run(*argv):
    return main(list(argv))


class TestGen:
    def test_instance_json_shape(self, tmp_path, capsys):
        path = tmp_path / "inst.json"
        assert run("gen", "--m", "7", "--k", "2", "--seed", "5", "-o", str(path)) == 0
        data = json.loads(path.read_text())
        assert set(data) == {"dims", "placement", "k", "seed"}
        assert data["dims"] == [7]
        assert sorted(data["placement"]) == list(range(1, 8))
        assert data["k"] == 2

    def test_gen_2d_rounds_up(self, tmp_path):
        path = tmp_path / "inst.json"
        run("gen", "--m", "10", "--dim", "2", "-o", str(path))
        data = json.loads(path.read_text())
        assert data["dims"] == [4, 4]
        assert len(data["placement"]) == 16

    def test_gen_to_stdout(self, capsys):
        assert run("gen", "--m", "5") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["dims"] == [5]


@pytest.fixture
def instance_path(tmp_path):
    path = tmp_path / "inst.json"
    run("gen", "--m", "8", "--k", "2", "--seed", "11", "-o", str(path))
    return str(path)


class TestPlanEvalRoundTrip:
    def test_plan_records_and_eval(self, instance_path, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        assert run("plan", "-i", instance_path, "--algo", "dp", "-o", str(plan_path)) == 0
        capsys.readouterr()
        records = json.loads(plan_path.read_text())
        assert isinstance(records, list)
        for rec in records:
            assert {"index", "cell", "deposit", "pick"} <= set(rec)
        indices = [r["index"] for r in records]
        assert indices == list(range(len(records)))

        assert run("eval", "-i", instance_path, "-p", str(plan_path)) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["valid"] is True
        assert set(report) == {"valid", "swaps", "travel", "total"}
        assert report["total"] == pytest.approx(report["swaps"] + report["travel"])

    @pytest.mark.parametrize("algo", ["follow", "switch", "exact", "mcts", "opt"])
    def test_every_algorithm_round_trips(self, algo, instance_path, tmp_path, capsys):
        plan_path = tmp_path / f"{algo}.json"
        assert run(
            "plan", "-i", instance_path, "--algo", algo, "--budget", "64",
            "-o", str(plan_path),
        ) == 0
        capsys.readouterr()
        assert run("eval", "-i", instance_path, "-p", str(plan_path)) == 0

    def test_plan_to_stdout_report_on_stderr(self, instance_path, capsys):
        assert run("plan", "-i", instance_path, "--algo", "switch") == 0
        captured = capsys.readouterr()
        json.loads(captured.out)
        report = json.loads(captured.err)
        assert report["swaps"] >= 0

    def test_no_range_prune_flag(self, instance_path, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        code = run(
            "plan", "-i", instance_path, "--algo", "mcts", "--budget", "64",
            "--no-range-prune", "-o", str(plan_path),
        )
        assert code == 0

    def test_eval_rejects_corrupt_plan(self, instance_path, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        run("plan", "-i", instance_path, "--algo", "switch", "-o", str(plan_path))
        capsys.readouterr()
        records = json.loads(plan_path.read_text())
        # swap the deposit of the first real action so it no longer
        # matches what the robot holds
        records[1]["deposit"], records[1]["pick"] = records[1]["pick"], records[1]["deposit"]
        plan_path.write_text(json.dumps(records))
        assert run("eval", "-i", instance_path, "-p", str(plan_path)) == 1
        report = json.loads(capsys.readouterr().out)
        assert report["valid"] is False
        assert report["reason"]
        assert report["failed_index"] is not None


class TestBenchCommand:
    def test_sweep_writes_pinned_columns(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code = run(
            "bench", "--m", "6", "--k", "1,2", "--algo", "switch,dp",
            "--trials", "2", "-o", str(out),
        )
        assert code == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert tuple(rows[0]) == RESULT_COLUMNS
        assert len(rows) == 8
        assert {r["algo"] for r in rows} == {"switch", "dp"}

    def test_config_file_supplies_options(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps({
            "m": [6],
            "k": [1, 2],
            "algo": ["switch"],
            "trials": 2,
            "out": str(out),
        }))
        assert run("bench", "--config", str(config)) == 0
        with open(out, newline="") as fh:
            assert len(list(csv.DictReader(fh))) == 4

    def test_flags_override_config(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        over = tmp_path / "override.csv"
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps({
            "m": [6], "algo": "switch", "trials": 3, "out": str(out),
        }))
        assert run("bench", "--config", str(config), "--trials", "1", "-o", str(over)) == 0
        assert not out.exists()
        with open(over, newline="") as fh:
            assert len(list(csv.DictReader(fh))) == 1

    def test_unknown_config_key_rejected(self, tmp_path):
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps({"m": [6], "algo": "switch", "out": "x.csv", "budgett": 9}))
        with pytest.raises(SystemExit):
            run("bench", "--config", str(config))

    def test_missing_required_options(self):
        with pytest.raises(SystemExit):
            run("bench", "--m", "6")

    def test_savings_table(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        savings = tmp_path / "s.csv"
        code = run(
            "bench", "--m", "6", "--k", "1,2", "--algo", "switch,dp",
            "--trials", "2", "-o", str(out),
            "--baseline-algo", "switch", "--savings-out", str(savings),
        )
        assert code == 0
        with open(savings, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert tuple(rows[0]) == SAVINGS_COLUMNS
        baseline = [r for r in rows if r["algo"] == "switch" and r["k"] == "1"]
        assert baseline[0]["ratio_mean"] == "1.000000"

    def test_savings_needs_baseline(self, tmp_path):
        with pytest.raises(SystemExit):
            run(
                "bench", "--m", "6", "--algo", "switch", "-o", str(tmp_path / "r.csv"),
                "--savings-out", str(tmp_path / "s.csv"),
            )


class TestStatsCommand:
    def test_stats_csv_columns(self, tmp_path, capsys):
        out = tmp_path / "stats.csv"
        assert run("stats", "--m", "6,8", "--samples", "300", "-o", str(out)) == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert tuple(rows[0]) == CycleStatistics.CSV_COLUMNS
        assert [r["m"] for r in rows] == ["6", "8"]
        assert rows[0]["samples"] == "300"


class TestErrorPaths:
    def test_planner_failure_exits_two(self, tmp_path, capsys):
        # One 14-cycle is over the oracle's size cap; the CLI reports
        # the failure as exit code 2 rather than a traceback.
        inst = tmp_path / "inst.json"
        placement = list(range(2, 15)) + [1]
        inst.write_text(json.dumps({"dims": [14], "placement": placement, "k": 1, "seed": 0}))
        code = run("plan", "-i", str(inst), "--algo", "opt")
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            run("frobnicate")
