import csv
import json
import math
import subprocess
import sys
from importlib import resources

import numpy as np
import pytest

from nmrdelayed.angles import parse_angle, parse_angle_list
from nmrdelayed.cli import main

DATA = resources.files("nmrdelayed.pulselang") / "data"


@pytest.mark.parametrize(
    "text,value",
    [("pi", math.pi), ("pi/2", math.pi / 2), ("3pi/4", 0.75 * math.pi), ("-2*pi/3", -2 * math.pi / 3),
     ("0.25", 0.25), ("2pi", 2 * math.pi), (" PI / 4 ", math.pi / 4), ("1e-3", 1e-3)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_parse_angle_errors():
    with pytest.raises(ValueError):
        parse_angle("tau")
    assert parse_angle_list("0, pi") == [0.0, math.pi]


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_sweep_alpha_0_and_pi(tmp_path, capsys):
    assert main(["sweep", "--alphas", "0,pi", "--thetas", "17", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "sweep.csv")
    assert len(rows) == 34
    assert list(rows[0]) == ["alpha_rad", "theta_rad", "level", "p"]
    assert max(abs(float(r["p"])) for r in rows[:17]) < 1e-12
    fits = json.loads((tmp_path / "fits.json").read_text())
    assert fits[0]["amplitude"] == pytest.approx(0.0, abs=1e-12)
    assert fits[1]["amplitude"] == pytest.approx(0.5, abs=1e-9)
    svg = (tmp_path / "fringes.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 2 and "href" not in svg
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["config"]["j_coupling"] == 215.1 and "timestamp" in manifest
    assert "0.5" in capsys.readouterr().out


def test_sweep_pulse_vs_gate(tmp_path):
    assert main(["sweep", "--level", "gate", "--out", str(tmp_path / "g")]) == 0
    assert main(["sweep", "--level", "pulse", "--out", str(tmp_path / "p")]) == 0
    g, p = read_csv(tmp_path / "g" / "sweep.csv"), read_csv(tmp_path / "p" / "sweep.csv")
    assert len(g) == len(p) == 5 * 17
    assert max(abs(float(a["p"]) - float(b["p"])) for a, b in zip(g, p)) <= 1e-9


def test_sweep_noise_deterministic(tmp_path):
    args = ["sweep", "--noise", "0.02", "--seed", "7"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("sweep.csv", "fits.json", "fringes.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_sweep_json_format(tmp_path):
    assert main(["sweep", "--alphas", "pi/2", "--thetas", "0,pi/2,pi", "--format", "json", "--out", str(tmp_path)]) == 0
    rows = json.loads((tmp_path / "sweep.json").read_text())
    assert [r["p"] for r in rows] == pytest.approx([0.5, 0.25, 0.0], abs=1e-12)


def test_sweep_gradient_mode(tmp_path):
    assert main(["sweep", "--dephase", "gradient", "--samples", "3", "--alphas", "pi", "--out", str(tmp_path)]) == 0
    fits = json.loads((tmp_path / "fits.json").read_text())
    assert fits[0]["amplitude"] == pytest.approx(0.5, abs=1e-9)


def test_sweep_degenerate_fit_exit_1(tmp_path, capsys):
    assert main(["sweep", "--thetas", "0,pi", "--out", str(tmp_path)]) == 1
    assert "distinct angles" in capsys.readouterr().err


def test_sweep_bad_flags_exit_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--alphas", "zero", "--out", str(tmp_path)])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--level", "analog"])
    assert info.value.code == 2


def test_sweep_out_of_range_exit_1(tmp_path):
    assert main(["sweep", "--alphas", "2pi", "--out", str(tmp_path)]) == 1
    assert main(["sweep", "--epsilon", "0.5", "--out", str(tmp_path)]) == 1


def test_config_file_flags_win(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[global]\nseed = 3\n\n[sweep]\nalphas = 0,pi\nthetas = 9\nlevel = pulse\n")
    out = tmp_path / "o"
    assert main(["sweep", "--config", str(cfg), "--thetas", "5", "--out", str(out)]) == 0
    rows = read_csv(out / "sweep.csv")
    assert len(rows) == 10 and rows[0]["level"] == "pulse"
    assert json.loads((out / "manifest.json").read_text())["config"]["seed"] == 3


def test_verify_cnot_golden(capsys):
    assert main(["verify", str(DATA / "cnot_hc.pul"), "--target", "cnot"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_cnot_global_fails():
    assert main(["verify", str(DATA / "cnot_hc.pul"), "--target", "cnot", "--equivalence", "global"]) == 1


def test_verify_ch_golden_global(capsys):
    assert main(["verify", str(DATA / "ch_hc.pul"), "--target", "ch", "--equivalence", "global", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["gp_distance"] < 1e-9


def test_verify_empty_identity():
    assert main(["verify", str(DATA / "empty.pul"), "--target", "identity"]) == 0


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.pul"
    bad.write_text("rot Q y 90\n")
    assert main(["verify", str(bad), "--target", "identity"]) == 2
    assert "unknown spin label 'Q' at line 1" in capsys.readouterr().err


def test_verify_gradient_file_is_domain_error(capsys):
    assert main(["verify", str(DATA / "measure_block.pul"), "--target", "identity"]) == 1
    assert "non-unitary" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert main(["verify", str(tmp_path / "nope.pul"), "--target", "identity"]) == 2


def load_matrix(path):
    payload = json.loads(path.read_text())
    dev = payload["deviation"]
    return np.array(dev["real"]) + 1j * np.array(dev["imag"]), payload


def test_tomo_alpha_half_theta_0(tmp_path):
    assert main(["tomo", "--alpha", "pi/2", "--theta", "0", "--out", str(tmp_path)]) == 0
    m, payload = load_matrix(tmp_path / "tomo.json")
    assert np.abs(m[:2, 2:]).max() <= 1e-10 and np.abs(m[2:, :2]).max() <= 1e-10
    np.testing.assert_allclose(np.diag(m).real, [0.25, 0.25, 0.5, 0.0], atol=1e-12)
    assert np.trace(m).real == pytest.approx(1.0, abs=1e-9)
    assert set(payload["expectations"]) == {a + b for a in "IXYZ" for b in "IXYZ"} - {"II"}
    assert (tmp_path / "tomo.svg").read_text().startswith("<svg")


def test_tomo_particle_block(tmp_path):
    assert main(["tomo", "--alpha", "0", "--theta", "pi/3", "--level", "pulse", "--out", str(tmp_path)]) == 0
    m, _ = load_matrix(tmp_path / "tomo.json")
    particle = np.array([1, np.exp(1j * math.pi / 3)]) / math.sqrt(2)
    np.testing.assert_allclose(m[:2, :2], np.outer(particle, particle.conj()), atol=1e-10)


def test_tomo_noisy_deterministic(tmp_path):
    for d in ("a", "b"):
        assert main(["tomo", "--noise", "0.05", "--seed", "2", "--out", str(tmp_path / d)]) == 0
    assert (tmp_path / "a" / "tomo.json").read_bytes() == (tmp_path / "b" / "tomo.json").read_bytes()


def test_show_state(capsys):
    assert main(["show-state", "--alpha", "pi", "--theta", "0"]) == 0
    out = capsys.readouterr().out
    assert "|10>  +1.0000+0.0000i" in out
    assert main(["show-state", "--alpha", "pi/2", "--theta", "pi/2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["state"]["real"]) == 4


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "nmrdelayed", "show-state", "--alpha", "0", "--theta", "0"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and "|00>" in res.stdout
