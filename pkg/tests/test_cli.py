import json
import subprocess
import sys

import pytest

from spincorr import record_from_json
from spincorr.cli import cli_main

SWEEP_HEADER = "delta_deg,n,x,real_count,nearest_m,gap,relative_error,sigma,ratio,label"


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSimulate:
    def test_emits_batch_then_estimate(self, capsys):
        code, out, err = run_cli(
            capsys, "simulate", "--model", "quantum", "--theta-a", "30", "--theta-b", "0",
            "--n", "500", "--seed", "4",
        )
        assert code == 0
        assert err == ""
        lines = out.splitlines()
        assert len(lines) == 2
        batch = json.loads(lines[0])
        estimate = json.loads(lines[1])
        assert batch["kind"] == "batch"
        assert estimate["kind"] == "estimate"
        assert batch["n"] == 500
        assert estimate["denominator"] == 500
        assert estimate["numerator"] == 2 * batch["m"] - batch["n"]
        for line in lines:
            record_from_json(line)

    def test_equal_angles_give_perfect_anticorrelation(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--model", "quantum", "--theta-a", "45", "--theta-b", "45",
            "--n", "100", "--seed", "7",
        )
        assert code == 0
        estimate = json.loads(out.splitlines()[1])
        assert estimate["real_value"] == -1.0

    def test_repeated_invocation_is_identical(self, capsys):
        argv = ("simulate", "--model", "nonlocal-stochastic", "--theta-a", "10",
                "--theta-b", "70", "--n", "2000", "--seed", "123")
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_seed_changes_counts(self, capsys):
        base = ("simulate", "--model", "quantum", "--theta-a", "90", "--theta-b", "0",
                "--n", "10000")
        _, out1, _ = run_cli(capsys, *base, "--seed", "1")
        _, out2, _ = run_cli(capsys, *base, "--seed", "2")
        assert json.loads(out1.splitlines()[0])["m"] != json.loads(out2.splitlines()[0])["m"]

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--model", "local-linear", "--theta-a", "45", "--theta-b", "0",
            "--n", "50", "--seed", "9", "--format", "csv",
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 4
        assert lines[0].split(",")[:3] == ["theta_a_deg", "theta_b_deg", "n"]
        assert lines[2].split(",")[:3] == ["theta_a_deg", "theta_b_deg", "numerator"]


class TestChsh:
    def test_emits_four_batches_and_the_statistic(self, capsys):
        code, out, _ = run_cli(
            capsys, "chsh", "--model", "quantum", "--quad", "0,90,45,135",
            "--n", "4000", "--seed", "21",
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 5
        kinds = [json.loads(line)["kind"] for line in lines]
        assert kinds == ["batch"] * 4 + ["chsh"]
        statistic = json.loads(lines[4])
        recombined = abs(statistic["c_prime_prime"] - statistic["c_prime_double"]) + abs(
            statistic["c_double_prime"] + statistic["c_double_double"]
        )
        assert statistic["s_value"] == recombined
        assert 0.0 <= statistic["s_value"] <= 4.0

    def test_batch_seeds_are_derived_per_pair(self, capsys):
        _, out, _ = run_cli(
            capsys, "chsh", "--model", "quantum", "--quad", "0,90,45,135",
            "--n", "100", "--seed", "8",
        )
        seeds = [json.loads(line)["seed"] for line in out.splitlines()[:4]]
        assert seeds == [8 ^ 0, 8 ^ 1, 8 ^ 2, 8 ^ 3]

    def test_malformed_quad_names_the_flag(self, capsys):
        code, _, err = run_cli(
            capsys, "chsh", "--model", "quantum", "--quad", "0,90,45",
            "--n", "100", "--seed", "8",
        )
        assert code == 2
        assert "--quad" in err


class TestRationality:
    def test_exact_case(self, capsys):
        code, out, _ = run_cli(capsys, "rationality", "--theta-a", "90", "--theta-b", "0",
                               "--n", "2")
        assert code == 0
        record = json.loads(out)
        assert record["kind"] == "rationality"
        assert record["exact"] is True
        assert record["nearest_m"] == 1
        assert record["seed"] is None

    def test_degenerate_case(self, capsys):
        _, out, _ = run_cli(capsys, "rationality", "--theta-a", "0", "--theta-b", "0",
                            "--n", "5")
        record = json.loads(out)
        assert record["label"] == "degenerate"
        assert record["ratio"] is None

    def test_csv_format(self, capsys):
        _, out, _ = run_cli(capsys, "rationality", "--theta-a", "47.4", "--theta-b", "45",
                            "--n", "10000", "--format", "csv")
        lines = out.splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("delta_deg,n,x,")


class TestSweep:
    def test_csv_is_the_default_with_fixed_columns(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--deltas", "0:180:45", "--ns", "10,100")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == SWEEP_HEADER
        assert len(lines) == 1 + 5 * 2

    def test_rows_are_delta_major(self, capsys):
        _, out, _ = run_cli(capsys, "sweep", "--deltas", "10:20:10", "--ns", "5,6")
        rows = [line.split(",") for line in out.splitlines()[1:]]
        assert [(r[0], r[1]) for r in rows] == [("10", "5"), ("10", "6"), ("20", "5"), ("20", "6")]

    def test_json_format(self, capsys):
        _, out, _ = run_cli(capsys, "sweep", "--deltas", "45:45:1", "--ns", "7",
                            "--format", "json")
        record = json.loads(out)
        assert record["kind"] == "sweep-row"
        assert record["n"] == 7

    def test_single_point_range(self, capsys):
        _, out, _ = run_cli(capsys, "sweep", "--deltas", "2.4:2.4:1", "--ns", "10000")
        assert len(out.splitlines()) == 2


class TestReproduceExample:
    def test_table_matches_reference_figures(self, capsys):
        code, out, err = run_cli(capsys, "reproduce-paper")
        assert code == 0
        rows = {line.split()[0]: line.split() for line in out.splitlines()[2:]}
        assert rows["plus_fraction_x"][2:4] == ["4.4e-04", "4.4e-04"]
        assert rows["expected_count_nx"][2:4] == ["4.4", "4.4"]
        assert rows["nearest_integer_m"][2:4] == ["4", "4"]
        assert rows["relative_error"][2:4] == ["0.1", "0.1"]
        assert rows["noise_verdict"][1] == "below-noise"


class TestErrorHandling:
    @pytest.mark.parametrize(
        "argv,flag",
        [
            (("simulate", "--model", "quantum", "--theta-a", "0", "--theta-b", "0",
              "--n", "0", "--seed", "1"), "--n"),
            (("simulate", "--model", "quantum", "--theta-a", "0", "--theta-b", "0",
              "--n", "10", "--seed", "-1"), "--seed"),
            (("simulate", "--model", "quantum", "--theta-a", "0", "--theta-b", "0",
              "--n", "10", "--seed", str(2**64)), "--seed"),
            (("simulate", "--model", "quantum", "--theta-a", "inf", "--theta-b", "0",
              "--n", "10", "--seed", "1"), "--theta-a"),
            (("simulate", "--model", "psychic", "--theta-a", "0", "--theta-b", "0",
              "--n", "10", "--seed", "1"), "--model"),
            (("sweep", "--deltas", "0:10:0", "--ns", "5"), "--deltas"),
            (("sweep", "--deltas", "10:0:5", "--ns", "5"), "--deltas"),
            (("sweep", "--deltas", "abc", "--ns", "5"), "--deltas"),
            (("sweep", "--deltas", "0:10:5", "--ns", ""), "--ns"),
            (("sweep", "--deltas", "0:10:5", "--ns", "3,0"), "--ns"),
        ],
    )
    def test_config_errors_exit_2_and_name_the_flag(self, capsys, argv, flag):
        code, out, err = run_cli(capsys, *argv)
        assert code == 2
        assert out == ""
        assert flag in err

    def test_missing_subcommand(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 2
        assert err != ""

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, "meditate")
        assert code == 2

    def test_runtime_failures_exit_1(self, capsys, monkeypatch):
        import spincorr.cli as cli_module

        def boom(config):
            raise RuntimeError("boom")

        monkeypatch.setattr(cli_module, "run_experiment", boom)
        code, out, err = run_cli(
            capsys, "simulate", "--model", "quantum", "--theta-a", "0", "--theta-b", "0",
            "--n", "10", "--seed", "1",
        )
        assert code == 1
        assert "boom" in err

    def test_version_flag(self, capsys):
        code, out, _ = run_cli(capsys, "--version")
        assert code == 0
        assert "spincorr" in out


class TestModuleEntryPoint:
    def test_python_dash_m_runs_and_is_deterministic(self):
        argv = [sys.executable, "-m", "spincorr", "simulate", "--model", "quantum",
                "--theta-a", "0", "--theta-b", "90", "--n", "1000", "--seed", "99"]
        first = subprocess.run(argv, capture_output=True, timeout=60)
        second = subprocess.run(argv, capture_output=True, timeout=60)
        assert first.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout
