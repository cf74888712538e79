from __future__ import annotations

import json
import subprocess
import sys


from twistrank.cli import main
from twistrank.store import parse_csv


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_classno(capsys):
    assert run(["classno", "-23"], capsys) == (0, "h=3\n", "")
    code, out, _ = run(["classno", "-3", "-4", "--check"], capsys)
    assert code == 0 and out == "d=-3 h=1\nd=-4 h=1\n"


def test_classno_bad_input_names_parameter(capsys):
    code, _, err = run(["classno", "-12"], capsys)
    assert code == 1 and "-12" in err


def test_unknown_command_is_usage_error(capsys):
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["scan-k", "--N", "17"], capsys)[0] == 1


def test_char(capsys):
    code, out, _ = run(["char", "-4"], capsys)
    assert code == 0 and "B1=-1/2" in out and "conductor=4" in out
    code, out, _ = run(["char", "--modulus", "5"], capsys)
    assert code == 0 and len(out.splitlines()) == 4


def test_curve(capsys):
    code, out, _ = run(["curve", "0", "1", "--N", "36", "--qexp-bound", "7"], capsys)
    assert code == 0
    assert "a_n=1 0 0 0 0 0 -4" in out
    assert "residual character M=1" in out
    code, _, err = run(["curve", "-3", "2"], capsys)
    assert code == 1 and "singular" in err


def test_twist(capsys):
    code, out, _ = run(["twist", "1", "--D", "5", "--N", "36"], capsys)
    assert code == 0
    assert "g6: c=78125" in out and "congruence mod 3: ok" in out
    code, out, _ = run(["twist", "1", "--D", "5", "--N", "17"], capsys)
    assert code == 0 and "skipped" in out


def test_scan_k_row(capsys, tmp_path):
    cache = tmp_path / "h.txt"
    code, out, _ = run(["scan-k", "--N", "17", "--D", "5", "--X", "10000", "--cache", str(cache)], capsys)
    assert code == 0
    (row,) = parse_csv(out)
    assert row["bound"] == 0.125 and row["pass"] is True
    assert cache.exists() and len(cache.read_text().splitlines()) > 1


def test_scan_k_star_failure_is_input_error(capsys):
    code, _, err = run(["scan-k", "--N", "19", "--D", "5", "--X", "1000"], capsys)
    assert code == 1 and "19" in err


def test_failed_scan_bound_exit_code(capsys):
    # at X = 2*10^4 the empirical share (about 0.121) sits under 1/8
    code, out, err = run(["scan-k", "--N", "17", "--D", "5", "--X", "20000"], capsys)
    assert code == 2 and "bound failed" in err
    assert parse_csv(out)[0]["pass"] is False


def test_strict_verify_exit_code(capsys):
    code, out, err = run(["verify", "--bound-strict", "--format", "jsonl"], capsys)
    assert code == 2 and "bound failed" in err
    labels = {json.loads(line)["label"] for line in out.splitlines()}
    assert "log B(X) bound" in labels


def test_verify_default_passes(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert "(diagnostic)" in out and "[FAIL]" in out  # known-false rows are printed, not asserted


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan settings\nN=17\nD=5\nX=3000\nformat=jsonl\n")
    code, out, _ = run(["scan-k", "--config", str(cfg)], capsys)
    assert code == 0 and json.loads(out)["lo"] == -3000
    code, out, _ = run(["scan-k", "--config", str(cfg), "--X", "2000"], capsys)
    assert code == 0 and json.loads(out)["lo"] == -2000
    cfg.write_text("bogus=1\n")
    assert run(["scan-k", "--config", str(cfg)], capsys)[0] == 1


def test_scan_d_and_q(capsys):
    code, out, _ = run(["scan-d", "--X", "100000", "--dk", "-4"], capsys)
    assert code == 0 and parse_csv(out)[0]["bound_kind"] == "shape"
    code, out, _ = run(["scan-q", "--N", "17", "--w", "-1", "--X", "3000", "--nh-modulus", "3"], capsys)
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 2 + 3


def test_density_command(capsys):
    code, out, _ = run(["density", "--X", "10000"], capsys)
    rows = parse_csv(out)
    assert code == 0
    assert rows[0]["label"] == "F(X) vs (log X)^-kappa" and rows[0]["extras"]["asserting"] is False


def test_out_file_and_workers_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["scan-d", "--X", "200000", "--workers", "1", "--out", str(a)]) == 0
    assert main(["scan-d", "--X", "200000", "--workers", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "twistrank.cli", "classno", "-23"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "h=3\n"
