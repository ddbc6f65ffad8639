import json
import subprocess
import sys

import numpy as np
import pytest

from relsteer import channels, verify as verify_mod
from relsteer.cli import EXIT_IO, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFY, main


def test_eval_singlet(capsys):
    assert main(["eval", "--family", "werner", "--c11", "-1", "--c22", "-1", "--c33", "-1"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert set(rep) == {"I_ab", "I_ba", "S_ab", "S_ba", "delta"}
    assert rep["I_ab"] == pytest.approx(6, abs=1e-9)


def test_eval_generic_pure_with_q(capsys):
    assert main(["eval", "--family", "generic_pure", "--q", "0", "--r-a", "0.3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["S_ab"] == 0


def test_eval_explicit_with_set(capsys):
    args = ["eval", "--family", "explicit", "--set", "c11=-1", "--set", "c22=-1", "--set", "c33=-1", "--alpha", "0.3"]
    assert main(args) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["S_ba"] == pytest.approx(1, abs=1e-9)


def test_eval_validation_errors(capsys):
    assert main(["eval", "--family", "werner", "--c11", "-1", "--c22", "-1", "--c33", "-1", "--alpha", "1.2"]) == EXIT_VALIDATION
    assert "alpha" in capsys.readouterr().err
    assert main(["eval", "--family", "werner", "--c11", "1", "--c22", "1", "--c33", "1"]) == EXIT_VALIDATION


def test_sweep_command(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("family = generic_pure\nalpha = 0.4\n[grid]\np = 0, 1, 5\nr_a = 0, pi/4, 3\n")
    out = tmp_path / "s.json"
    assert main(["sweep", "--spec", str(cfg), "--out", str(out)]) == EXIT_OK
    assert len(json.loads(out.read_text())) == 15
    out_csv = tmp_path / "s.txt"
    assert main(["sweep", "--spec", str(cfg), "--out", str(out_csv), "--format", "csv"]) == EXIT_OK
    assert len(out_csv.read_text().splitlines()) == 16


def test_sweep_exit_codes(tmp_path, capsys):
    assert main(["sweep", "--spec", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "x.csv")]) == EXIT_IO
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("family = werner\nc11 = oops\n")
    assert main(["sweep", "--spec", str(cfg), "--out", str(tmp_path / "x.csv")]) == EXIT_VALIDATION
    assert "line 2" in capsys.readouterr().err
    cfg.write_text("family = generic_pure\np = 0.5\n")
    assert main(["sweep", "--spec", str(cfg), "--out", str(tmp_path / "no" / "x.csv")]) == EXIT_IO


def test_sweep_uses_output_path_from_config(tmp_path):
    out = tmp_path / "from_cfg.json"
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"family = generic_pure\np = 0.2\noutput = json\noutput_path = {out}\n")
    assert main(["sweep", "--spec", str(cfg)]) == EXIT_OK
    assert json.loads(out.read_text())[0]["p"] == 0.2


def test_figure_command_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["figure", "fig6c", "--out", str(a)]) == EXIT_OK
    assert main(["figure", "fig6c", "--out", str(b), "--workers", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert main(["figure", "fig9x", "--out", str(a)]) == EXIT_VALIDATION


def test_convert(capsys):
    assert main(["convert", "--accel", str(np.pi), "--omega", str(np.log(2)), "--c-light", "1"]) == EXIT_OK
    assert float(capsys.readouterr().out) == pytest.approx(0.4636476090008061, abs=1e-11)
    assert main(["convert", "--accel", "0", "--omega", "1"]) == EXIT_VALIDATION


def test_verify_command_passes(capsys):
    assert main(["verify", "--seed", "3", "--cases", "100"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("PASS") == 6 and "FAIL" not in out


def test_verify_report_is_reproducible():
    a = verify_mod.format_report(verify_mod.verify(seed=5, n=50, grid=6))
    b = verify_mod.format_report(verify_mod.verify(seed=5, n=50, grid=6))
    assert a == b


def test_verify_catches_sign_flip():
    def mutated(rho, acc):
        out = np.array(np.asarray(channels.unruh_apply(rho, acc)))
        # one sign flipped in the |01><10| coherence
        out[1, 2], out[2, 1] = -out[1, 2], -out[2, 1]
        return channels.DensityMatrix4._wrap(out)

    results = {r.name: r for r in verify_mod.verify(seed=1, n=200, grid=8, unruh=mutated)}
    assert not results["kraus_vs_explicit"].passed
    assert results["kraus_vs_explicit"].max_deviation > 0.01
    assert not results["closed_form_vs_channel"].passed


def test_verify_exit_code_on_failure(monkeypatch, capsys):
    bad = verify_mod.SuiteResult("fake", False, 1.0, 1e-12, 1)
    monkeypatch.setattr("relsteer.cli.verify", lambda seed, n: [bad])
    assert main(["verify"]) == EXIT_VERIFY
    assert "FAIL" in capsys.readouterr().out


def test_console_entry_point_module():
    res = subprocess.run([sys.executable, "-m", "relsteer.cli", "convert", "--accel", "1e30", "--omega", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert float(res.stdout) == pytest.approx(np.pi / 4, abs=1e-12)
