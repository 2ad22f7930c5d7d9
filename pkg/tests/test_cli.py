import io
import json
import subprocess
import sys

import pytest

from nodal_void.cli import main, parse_config_text, parse_grid
from nodal_void.eigenfunctions import CSV_HEADER, read_grid_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


class TestSpectrum:
    def test_one_row(self, capsys):
        code, doc, _ = run_json(capsys, "spectrum", "--n", "100", "--count", "1")
        assert code == 0 and doc["schema"] == 1 and doc["command"] == "spectrum"
        (row,) = doc["result"]
        assert 104.64 < row["xi"] < 113.92

    def test_radial(self, capsys):
        code, doc, _ = run_json(capsys, "spectrum", "--radial", "--count", "5")
        xs = [r["xi"] for r in doc["result"]]
        assert code == 0 and len(xs) == 5 and xs == sorted(xs)

    def test_csv_and_pretty(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--n", "7", "--count", "3", "--output", "csv")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "N,k,xi,lambda,plate_eig" and len(lines) == 4
        code, out, _ = run(capsys, "spectrum", "--n", "7", "--output", "pretty")
        assert code == 0 and "xi" in out

    def test_malformed_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--bogus"])
        assert exc.value.code == 64
        assert "usage" in capsys.readouterr().err

    def test_missing_n(self, capsys):
        code, _, err = run(capsys, "spectrum")
        assert code == 64 and "--n" in err


class TestCertify:
    def test_scan(self, capsys):
        code, doc, _ = run_json(capsys, "certify", "--scan", "100", "130")
        assert code == 0
        assert [c["N"] for c in doc["result"]] == [105, 111, 117, 123, 129, 130]

    def test_empty_scan(self, capsys):
        code, doc, _ = run_json(capsys, "certify", "--scan", "100", "104")
        assert code == 0 and doc["result"] == []

    def test_failing_n(self, capsys):
        code, doc, err = run_json(capsys, "certify", "--n", "100")
        assert code == 1 and doc["pass"] is False
        assert "j0_range" in err and "margin" in err

    def test_domain_error(self, capsys):
        code, _, _ = run(capsys, "certify", "--n", "50")
        assert code == 64

    def test_byte_identical(self, capsys):
        _, a, _ = run(capsys, "certify", "--scan", "100", "120")
        _, b, _ = run(capsys, "certify", "--scan", "100", "120")
        assert a == b


class TestAudit:
    def test_audit_lemma7_bootstrap(self, capsys):
        code, doc, _ = run_json(capsys, "audit", "--lemma", "7")
        assert code == 0 and doc["result"]["lemma"] == "7"
        y = [c for c in doc["result"]["checks"] if c["description"] == "y_inf > 1"][0]["value"]
        assert 1 < y < 2

    def test_audit_lemma3_sweep_small_grid(self, capsys):
        code, doc, _ = run_json(capsys, "audit", "--lemma", "3", "--set", "lemma3.n_max=20")
        assert code == 0
        assert all(c["pass"] for c in doc["result"]["checks"])
        assert doc["config"]["grids"]["lemma3.n_max"] == 20

    def test_audit_lemma10_ramp_violation(self, capsys):
        code, _, err = run(capsys, "audit", "--lemma", "10", "--set", "lemma10.ramp_start=0.5")
        assert code == 1 and "RampViolation" in err

    def test_pretty_table(self, capsys):
        code, out, _ = run(capsys, "audit", "--lemma", "8", "--output", "pretty")
        assert code == 0 and out.startswith("[8] PASS")

    def test_csv_refused(self, capsys):
        code, _, _ = run(capsys, "audit", "--lemma", "8", "--output", "csv")
        assert code == 64

    def test_unknown_grid_key(self, capsys):
        code, _, err = run(capsys, "audit", "--lemma", "8", "--set", "nope=1")
        assert code == 64 and "nope" in err


class TestVoid:
    def test_default(self, capsys):
        code, doc, _ = run_json(capsys, "void")
        r = doc["result"]
        assert code == 0 and r["N"] == 105
        assert r["r_theorem"] <= r["r_certified"] < r["r_infinity"]

    def test_kn_zero_vs_default(self, capsys):
        _, a, _ = run_json(capsys, "void", "--kn", "0")
        _, b, _ = run_json(capsys, "void")
        assert a["result"]["r_theorem"] >= b["result"]["r_theorem"]

    def test_uncertified(self, capsys):
        code, doc, err = run_json(capsys, "void", "--n", "100")
        assert code == 1 and doc["pass"] is False
        assert "j0_range" in err

    def test_kn_too_large(self, capsys):
        code, _, err = run(capsys, "void", "--kn", "50")
        assert code == 1 and "KnTooLarge" in err

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "void.json"
        code, out, _ = run(capsys, "void", "--out", str(path), "--output", "pretty")
        assert code == 0 and out == ""
        assert "r_certified" in path.read_text()


class TestEval:
    def test_header_and_boundary(self, capsys):
        code, out, _ = run(capsys, "eval", "--n", "20", "--r-grid", "0.5,1", "--theta-grid", "0:1:3")
        assert code == 0
        assert out.splitlines()[0] == "r,theta,u,v,w,log_abs_v,log_abs_w"
        rows = read_grid_csv(io.StringIO(out))
        assert len(rows) == 6
        assert all(abs(r["u"]) < 1e-12 for r in rows if r["r"] == 1.0)

    def test_file_round_trip(self, capsys, tmp_path):
        path = tmp_path / "grid.csv"
        code, _, _ = run(capsys, "eval", "--n", "20", "--out", str(path))
        assert code == 0
        raw = path.read_bytes()
        assert b"\r" not in raw
        with open(path, newline="") as fh:
            rows = read_grid_csv(fh)
        assert len(rows) == 11 * 9
        assert tuple(rows[0]) == CSV_HEADER

    def test_bad_grid(self, capsys):
        code, _, _ = run(capsys, "eval", "--n", "20", "--r-grid", "0:2:3")
        assert code == 64

    def test_parse_grid(self):
        assert list(parse_grid("0:1:3")) == [0.0, 0.5, 1.0]
        assert list(parse_grid("0.25, 0.5")) == [0.25, 0.5]


class TestConfig:
    def test_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# desk run\nseed = 77\nlemma3.n_max = 12\noutput = json\n")
        code, doc, _ = run_json(capsys, "audit", "--lemma", "3", "--config", str(cfg))
        assert code == 0 and doc["seed"] == 77 and doc["config"]["grids"]["lemma3.n_max"] == 12
        code, doc, _ = run_json(capsys, "audit", "--lemma", "3", "--config", str(cfg), "--seed", "5",
                                "--set", "lemma3.n_max=4")
        assert doc["seed"] == 5 and doc["config"]["grids"]["lemma3.n_max"] == 4

    def test_parse_errors(self):
        from nodal_void.cli import UsageError

        assert parse_config_text("seed = 0x10  # hex\n\n") == {"seed": 16}
        with pytest.raises(UsageError):
            parse_config_text("no equals sign")
        with pytest.raises(UsageError):
            parse_config_text("unknown = 1")
        with pytest.raises(UsageError):
            parse_config_text("seed = x")

    def test_env_precision(self, capsys, monkeypatch):
        monkeypatch.setenv("PLATE_VOID_PRECISION", "extended")
        code, doc, _ = run_json(capsys, "spectrum", "--n", "3")
        assert code == 0 and doc["config"]["precision"] == "extended"

    def test_missing_config(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", "--n", "3", "--config", str(tmp_path / "none"))
        assert code == 64


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nodal_void", "audit", "--lemma", "9"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["pass"] is True
