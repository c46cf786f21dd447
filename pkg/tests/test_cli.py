import json
import subprocess
import sys

import pytest

from steklov import __version__
from steklov.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFamilyCommand:
    def test_fork_json_eigenvalues(self, capsys):
        code, out, _ = run_cli(capsys, "family", "af:3,1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["eigenvalues"] == [0, 0.6, 1.0]
        assert payload["version"] == __version__
        assert payload["tolerance"] == 1e-9
        assert payload["predicted_matches_numeric"] is True
        assert ["0", "1"] not in payload["edges"]  # edges are integer pairs

    def test_exact_rationals_reported(self, capsys):
        code, out, _ = run_cli(capsys, "family", "af:3,2", "--format", "json")
        payload = json.loads(out)
        assert [e["exact"] for e in payload["predicted"]] == ["0/1", "3/8", "1/2"]
        assert [e["multiplicity"] for e in payload["predicted"]] == [1, 1, 2]

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "family", "barbell:2,1,4")
        assert code == 0
        assert "3/7" in out

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(capsys, "family", "as:2,3,1", "--format", "json")
        _, second, _ = run_cli(capsys, "family", "as:2,3,1", "--format", "json")
        assert first == second

    def test_invalid_family_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "family", "af:0,1")
        assert code == 3
        assert "error" in err


class TestSpectrumCommand:
    def test_path4(self, capsys, tmp_path):
        edges = tmp_path / "path4.edges"
        edges.write_text("n=4\n0 1\n1 2\n2 3\n")
        code, out, _ = run_cli(capsys, "spectrum", str(edges), "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["eigenvalues"] == [0, 0.666666666667]
        assert payload["n"] == 4
        assert payload["b"] == 2

    def test_round_trip_family_to_spectrum(self, capsys, tmp_path):
        edges = tmp_path / "crab.edges"
        code, out, _ = run_cli(
            capsys, "family", "cg:2,2,3", "--format", "json", "--edges-out", str(edges)
        )
        family_payload = json.loads(out)
        code, out, _ = run_cli(capsys, "spectrum", str(edges), "--format", "json")
        spectrum_payload = json.loads(out)
        assert spectrum_payload["eigenvalues"] == family_payload["eigenvalues"]
        assert spectrum_payload["canonical_code"] == family_payload["canonical_code"]

    def test_verbose_includes_matrix(self, capsys, tmp_path):
        edges = tmp_path / "p3.edges"
        edges.write_text("0 1\n1 2\n")
        _, out, _ = run_cli(capsys, "spectrum", str(edges), "--format", "json", "--verbose")
        assert json.loads(out)["dtn_matrix"] == [[0.5, -0.5], [-0.5, 0.5]]

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "spectrum", "no-such-file.edges")
        assert code == 2

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("0 1\n0 1\n")
        code, _, err = run_cli(capsys, "spectrum", str(bad))
        assert code == 2
        assert "duplicate" in err

    def test_cycle_file(self, capsys, tmp_path):
        bad = tmp_path / "cycle.edges"
        bad.write_text("0 1\n1 2\n2 0\n")
        code, _, _ = run_cli(capsys, "spectrum", str(bad))
        assert code == 2


class TestSearchCommand:
    def test_by_leaves(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "-n", "8", "-k", "2", "--leaves", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["max_value"] == 0.375
        assert len(payload["attainer_codes"]) == 1

    def test_by_diameter_empty(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "-n", "3", "--diameter", "1", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["empty_class"] is True

    def test_requires_exactly_one_filter(self, capsys):
        code, _, err = run_cli(capsys, "search", "-n", "8")
        assert code == 4

    def test_range_error(self, capsys):
        code, _, _ = run_cli(capsys, "search", "-n", "25", "--leaves", "3")
        assert code == 4


class TestVerifyCommand:
    def test_small_run_exit_zero(self, capsys, tmp_path):
        out_file = tmp_path / "report.csv"
        code, out, _ = run_cli(
            capsys, "verify", "--n-max", "8", "--format", "csv", "--trials", "25",
            "--out", str(out_file),
        )
        assert code == 0
        content = out_file.read_text()
        assert content.startswith("mode,b_or_D,n,k,max_value,predicted_value,match,attainer_codes")
        assert "by_leaves,2,8,2," in content
        assert "sigma2_max: " in out
        assert "flagged: sigma2_tilde_max(1, 2) excluded" in out

    def test_text_summary(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "6", "--trials", "0")
        assert code == 0
        assert "sigma_k_max" in out
        assert "OK" in out

    def test_broom_mismatch_exits_nonzero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "11", "--trials", "0")
        assert code == 1
        assert "misses 1/r" in out

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "6", "--trials", "0",
                               "--format", "json")
        payload = json.loads(out)
        assert payload["version"] == __version__
        assert {r["name"] for r in payload["reports"]} == {
            "sigma2_max", "sigma_k_max", "diameter_max"
        }


class TestConjectureCommand:
    def test_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "conjecture", "--n-max", "9", "--diameters", "5,7", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("D,n,applicable")
        assert any(line.startswith("5,7,True") for line in lines)

    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "conjecture", "--n-max", "8", "--diameters", "5")
        assert code == 0
        assert "internal consistency: True" in out

    def test_bad_range(self, capsys):
        code, _, _ = run_cli(capsys, "conjecture", "--n-max", "30")
        assert code == 4


class TestToleranceFlag:
    def test_tolerance_recorded(self, capsys):
        _, out, _ = run_cli(capsys, "family", "path:5", "--format", "json", "--tol", "1e-6")
        assert json.loads(out)["tolerance"] == 1e-6

    def test_tolerance_out_of_range(self, capsys):
        with pytest.raises(SystemExit):
            main(["family", "path:5", "--tol", "0.5"])


def test_console_script_runs():
    result = subprocess.run(
        [sys.executable, "-m", "steklov.cli", "family", "af:3,1", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["eigenvalues"] == [0, 0.6, 1.0]
