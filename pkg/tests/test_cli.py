import json
import os
import subprocess
import sys

import pytest

from groversat import cli
from helpers import EQ2_INFIX, EQ6_DIMACS, EQ6_INFIX, EQ7_INFIX


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_unique(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--expr", EQ2_INFIX)
        assert code == 0
        assert out.strip() == "Unique: a=1 b=0"

    def test_dimacs_file(self, capsys, tmp_path):
        path = tmp_path / "f.cnf"
        path.write_text(EQ6_DIMACS)
        code, out, _ = run_cli(capsys, "solve", str(path))
        assert code == 0
        assert out.strip() == "Unique: x1=1 x2=0 x3=1"

    def test_unsatisfiable_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--expr", "a&~a")
        assert code == 2
        assert out.strip() == "Unsatisfiable"

    def test_multiple_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--expr", "a|b")
        assert code == 2
        assert out.startswith("Multiple: 3 solutions")

    def test_json_deterministic(self, capsys):
        _, out1, _ = run_cli(capsys, "solve", "--expr", EQ2_INFIX, "--format", "json")
        _, out2, _ = run_cli(capsys, "solve", "--expr", EQ2_INFIX, "--format", "json")
        assert out1 == out2
        report = json.loads(out1)
        assert report["classification"]["kind"] == "Unique"
        assert report["classification"]["solutions"] == ["a=1 b=0"]


class TestUsageErrors:
    def test_no_input(self, capsys):
        code, _, err = run_cli(capsys, "solve")
        assert code == 1
        assert "no input" in err

    def test_both_inputs(self, capsys, tmp_path):
        path = tmp_path / "f.cnf"
        path.write_text(EQ6_DIMACS)
        code, _, _ = run_cli(capsys, "solve", str(path), "--expr", "a")
        assert code == 1

    def test_parse_error(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--expr", "a &")
        assert code == 1
        assert "offset" in err

    def test_missing_file(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "no_such_file.cnf")
        assert code == 1

    def test_unknown_flag_exits_one(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["solve", "--bogus"])
        assert err.value.code == 1

    def test_resource_bound_exit_code(self, capsys, tmp_path):
        path = tmp_path / "big.cnf"
        clauses = "\n".join(f"{i} 0" for i in range(1, 26))
        path.write_text(f"p cnf 25 25\n{clauses}\n")
        code, _, err = run_cli(capsys, "solve", str(path))
        assert code == 3
        assert "resource" in err


class TestCompile:
    def test_register_and_iterations(self, capsys):
        code, out, _ = run_cli(capsys, "compile", "--expr", EQ2_INFIX, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["plan"]["register_size"] == 6
        assert report["plan"]["iteration_count"] == 1
        assert report["plan"]["inventory_cpf"] == {
            "mcz2": 2, "mcz3": 4, "mcz4": 2, "one-qubit": 38,
        }
        assert report["circuit_text"].startswith("groversat-circuit 1\nqubits 6\n")

    def test_wide_clause_direct(self, capsys):
        code, out, _ = run_cli(
            capsys, "compile", "--expr", EQ7_INFIX, "--wide-clause", "direct",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["plan"]["register_size"] == 7

    def test_fixed_iterations(self, capsys):
        code, out, _ = run_cli(
            capsys, "compile", "--expr", EQ2_INFIX, "--iterations", "3",
            "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["plan"]["iteration_count"] == 3

    def test_non_unique_rejected(self, capsys):
        code, _, err = run_cli(capsys, "compile", "--expr", "a|b")
        assert code == 2
        assert "Multiple" in err

    def test_force(self, capsys):
        code, _, _ = run_cli(capsys, "compile", "--expr", "a|b", "--force")
        assert code == 0


class TestSimulate:
    def test_exact_search(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--expr", EQ2_INFIX, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert abs(report["measurement"]["success_probability"] - 1.0) < 1e-9
        assert report["measurement"]["target"] == "a=1 b=0"

    def test_sweep_values(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--expr", EQ6_INFIX, "--sweep", "3", "--format", "json"
        )
        assert code == 0
        sweep = json.loads(out)["sweep"]
        got = [(p["iterations"], p["probability"]) for p in sweep]
        want = [(0, 0.125), (1, 0.78125), (2, 0.9453125), (3, 0.330078125)]
        for (gk, gp), (wk, wp) in zip(got, want):
            assert gk == wk
            assert abs(gp - wp) < 1e-12

    def test_sweep_text_is_csv(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--expr", EQ6_INFIX, "--sweep", "2")
        assert code == 0
        lines = out.strip().splitlines()
        start = lines.index("sweep (iterations,probability):")
        assert lines[start + 1 : start + 4] == ["0,0.125", "1,0.78125", "2,0.9453125"]

    def test_dump_state_at_kickback(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--expr", EQ2_INFIX, "--dump-state", "kickback",
            "--format", "json",
        )
        assert code == 0
        dump = json.loads(out)["state_dump"]["amplitudes"]
        rows = {}
        for line in dump.strip().splitlines():
            idx, re, im = line.split()
            rows[int(idx)] = complex(float(re), float(im))
        assert len(rows) == 8
        coeff = 1 / (2 * 2**0.5)
        # The satisfying assignment a=1,b=0 with ancillas 111: index 29.
        assert abs(rows[29] - (-coeff)) < 1e-12
        assert abs(rows[29 + 32] - coeff) < 1e-12
        assert all(abs(abs(v) - coeff) < 1e-12 for v in rows.values())

    def test_dump_kickback_needs_separate_style(self, capsys):
        code, _, err = run_cli(
            capsys, "simulate", "--expr", EQ2_INFIX, "--kickback", "direct",
            "--dump-state", "kickback",
        )
        assert code == 1
        assert "kickback" in err

    def test_deterministic_output(self, capsys):
        args = ("simulate", "--expr", EQ7_INFIX, "--sweep", "2", "--format", "json")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestCost:
    def test_table1_csv(self, capsys):
        code, out, _ = run_cli(capsys, "cost", "--table1", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        row1 = lines[1].split(",")
        assert row1[0] == "I"
        assert row1[3:5] == ["118", "59"]
        row3 = lines[3].split(",")
        assert row3[3:5] == ["246", "123"]

    def test_table1_flags_pulse_formula(self, capsys):
        code, out, _ = run_cli(capsys, "cost", "--table1")
        assert code == 0
        assert "8*2^n-12" in out and "7*2^n-12" in out

    def test_compiled_formula_cost(self, capsys):
        code, out, _ = run_cli(capsys, "cost", "--expr", EQ2_INFIX, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["n_ions"] == 6
        backends = {r["backend"]: r for r in report["backends"]}
        assert set(backends) == {"conventional", "straightforward"}
        # The compiler's own phase-flip census: {2: 2, 3: 4, 4: 2}.
        counts = backends["conventional"]["counts"]
        assert counts["b"] == 2 * 2 + 4 * 12 + 2 * 28
        assert counts["b_star"] == 2 * 1 + 4 * 6 + 2 * 14

    def test_m_ratio_scaling(self, capsys):
        _, out1, _ = run_cli(capsys, "cost", "--expr", EQ2_INFIX, "--backend",
                             "straightforward", "--format", "json")
        _, out2, _ = run_cli(capsys, "cost", "--expr", EQ2_INFIX, "--backend",
                             "straightforward", "--format", "json", "--m-ratio", "0.05")
        t1 = json.loads(out1)["backends"][0]["total_seconds"]
        t2 = json.loads(out2)["backends"][0]["total_seconds"]
        assert abs(t2 - 2 * t1) < 1e-12

    def test_single_backend_selection(self, capsys):
        code, out, _ = run_cli(
            capsys, "cost", "--expr", EQ2_INFIX, "--backend", "conventional",
            "--format", "json",
        )
        assert code == 0
        assert [r["backend"] for r in json.loads(out)["backends"]] == ["conventional"]

    def test_formula_cost_csv(self, capsys):
        code, out, _ = run_cli(capsys, "cost", "--expr", EQ2_INFIX, "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("backend,n_ions,")
        assert len(lines) == 3
        assert lines[1].split(",")[0] == "conventional"
        assert lines[2].split(",")[0] == "straightforward"


class TestEnvOverride:
    def test_max_qubits_env_raises_register_limit(self):
        # 10 variables and 14 two-literal clauses need 26 qubits: beyond the
        # default bound, allowed once the env var raises it.
        pairs = [(i, i + 1) for i in range(9)] + [(i, i + 2) for i in range(5)]
        expr = "&".join(f"(q{i}|q{j})" for i, j in pairs)
        argv = [sys.executable, "-m", "groversat.cli", "compile", "--expr", expr,
                "--force", "--format", "json"]
        env = dict(os.environ)
        env.pop("GROVER_SAT_MAX_QUBITS", None)
        proc = subprocess.run(argv, capture_output=True, text=True, env=env)
        assert proc.returncode == 3, proc.stderr
        env["GROVER_SAT_MAX_QUBITS"] = "28"
        proc = subprocess.run(argv, capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        assert json.loads(proc.stdout)["plan"]["register_size"] == 26


def test_version(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["--version"])
    assert err.value.code == 0
