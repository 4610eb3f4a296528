import json
import math

import numpy as np
import pytest

from dampedjc import model
from dampedjc.cli import main
from dampedjc.model import SpectralQuantities


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


def test_evolve_analytic_reduction(tmp_path):
    out = tmp_path / "evolve.csv"
    code = main([
        "evolve", "--initial", "psi", "--alpha", repr(math.pi / 4),
        "--gamma", "0", "--delta", "0", "--tmax", "6.2832", "--samples", "1001",
        "--output", str(out),
    ])
    assert code == 0
    header, data = read_csv(out)
    assert header == ["T", "C", "raw", "norm"]
    assert data.shape == (1001, 4)
    assert np.max(np.abs(data[:, 1] - np.cos(data[:, 0]) ** 2)) < 1e-9
    assert np.max(np.abs(data[:, 3] - 1.0)) < 1e-9


def test_evolve_rejects_single_sample(capsys):
    code = main([
        "evolve", "--initial", "psi", "--alpha", "0.7854", "--tmax", "1.0",
        "--samples", "1",
    ])
    assert code == 2
    assert "n_samples" in capsys.readouterr().err


def test_evolve_both_sources_agree(tmp_path):
    out = tmp_path / "both.csv"
    code = main([
        "evolve", "--initial", "phi", "--alpha", "0.5236", "--gamma", "1",
        "--delta", "0", "--tmax", "3.0", "--samples", "301", "--source", "both",
        "--output", str(out),
    ])
    assert code == 0
    header, data = read_csv(out)
    assert header == ["T", "C", "raw", "norm", "C_oracle"]
    assert np.max(np.abs(data[:, 1] - data[:, 4])) < 1e-6


def test_evolve_json_output(tmp_path):
    out = tmp_path / "evolve.json"
    code = main([
        "evolve", "--initial", "psi", "--alpha", "0.5", "--tmax", "1.0",
        "--samples", "11", "--format", "json", "--output", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["config"]["initial"] == "psi"
    assert len(payload["T"]) == 11
    assert payload["C"][0] == pytest.approx(math.sin(1.0), abs=1e-12)


def test_evolve_deterministic_bytes(tmp_path):
    args = ["evolve", "--initial", "phi", "--alpha", "0.6", "--gamma", "0.3",
            "--tmax", "2.0", "--samples", "101"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_symmetry_and_layout(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main([
        "sweep", "--initial", "psi", "--alpha", "0.5236", "--gamma", "0",
        "--axes", "delta:-5:5:11", "T:0:6.2832:21", "--output", str(out),
    ])
    assert code == 0
    header, data = read_csv(out)
    assert header == ["axis1", "axis2", "C"]
    assert data.shape == (11 * 21, 3)
    grid = data[:, 2].reshape(11, 21)
    assert np.max(np.abs(grid - grid[::-1, :])) < 1e-9


def test_sweep_duplicate_axis_rejected(capsys):
    code = main([
        "sweep", "--initial", "psi", "--alpha", "0.5", "--axes",
        "T:0:1:2", "T:0:1:2",
    ])
    assert code == 2


def test_sweep_malformed_axis_rejected():
    with pytest.raises(SystemExit) as err:
        main(["sweep", "--initial", "psi", "--alpha", "0.5", "--axes", "delta:0:5", "T:0:1:2"])
    assert err.value.code == 2


def test_sweep_decay_lowers_global_max(tmp_path):
    # T starts above 0: at T = 0 every gamma shares C = sin(2a) exactly
    values = {}
    for gamma in ("0", "0.8"):
        out = tmp_path / f"sweep{gamma}.csv"
        code = main([
            "sweep", "--initial", "psi", "--alpha", "0.5236", "--gamma", gamma,
            "--axes", "delta:-5:5:11", "T:0.1:6.2832:41", "--output", str(out),
        ])
        assert code == 0
        _, data = read_csv(out)
        values[gamma] = data[:, 2].max()
    assert values["0.8"] < values["0"]


def test_sweep_json_matrix(tmp_path):
    out = tmp_path / "sweep.json"
    code = main([
        "sweep", "--initial", "phi", "--alpha", "0.4", "--axes",
        "gamma:0:1:3", "T:0:2:5", "--format", "json", "--output", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["axis1"]["name"] == "gamma"
    assert len(payload["C"]) == 3
    assert len(payload["C"][0]) == 5


def test_sde_cli_phi_lossless(tmp_path):
    out = tmp_path / "sde.json"
    code = main([
        "sde", "--initial", "phi", "--alpha", "0.5236", "--gamma", "0",
        "--delta", "0", "--tmax", "6.2832", "--output", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert len(payload["intervals"]) >= 1
    first = payload["intervals"][0]
    assert first["death_T"] == pytest.approx(0.86306, abs=1e-3)
    assert first["length"] > 0.1
    assert payload["min_raw"] < 0.0


def test_sde_cli_phi_strong_decay_empty(capsys):
    code = main([
        "sde", "--initial", "phi", "--alpha", "0.5236", "--gamma", "1",
        "--delta", "0",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["intervals"] == []


def test_sde_cli_psi_always_empty(capsys):
    code = main([
        "sde", "--initial", "psi", "--alpha", "0.5236", "--gamma", "0.5",
        "--delta", "2",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["intervals"] == []


def test_validate_passes_on_reduced_grid(tmp_path, capsys):
    out = tmp_path / "validate.json"
    code = main(["validate", "--samples", "150", "--tmax", "6.2832", "--output", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "PASS" in text
    payload = json.loads(out.read_text())
    assert payload["pass"] is True
    assert len(payload["cells"]) == 2 * 3 * 7 * 3


def test_validate_dt_guard(capsys):
    code = main(["validate", "--dt", "0.05"])
    assert code == 2
    assert "dt" in capsys.readouterr().err


def test_validate_catches_injected_spectral_error(monkeypatch, capsys):
    # corrupt the closed-form path only: eta from xi^2 + 16 instead of - 16;
    # the validator must flag the mismatch and name a failing cell
    real_derive = model.derive

    def corrupted(params):
        s = real_derive(params)
        return SpectralQuantities(
            xi_plus=s.xi_plus,
            xi_minus=s.xi_minus,
            eta_plus=(s.xi_plus**2 + 16.0) ** 0.5,
            eta_minus=(s.xi_minus**2 + 16.0) ** 0.5,
        )

    monkeypatch.setattr(model, "derive", corrupted)
    code = main(["validate", "--samples", "60", "--tmax", "3.0"])
    assert code == 1
    text = capsys.readouterr().out
    assert "FAIL" in text
    assert "kappa=" in text and "delta=" in text


def test_output_write_failure_exits_3(tmp_path, capsys):
    missing_dir = tmp_path / "no" / "such" / "dir" / "out.csv"
    code = main([
        "evolve", "--initial", "psi", "--alpha", "0.5", "--tmax", "1.0",
        "--samples", "5", "--output", str(missing_dir),
    ])
    assert code == 3


def test_report_quick(tmp_path):
    outdir = tmp_path / "reports"
    code = main(["report", "--outdir", str(outdir), "--quick", "--dpi", "60"])
    assert code == 0
    pngs = sorted(p.name for p in outdir.glob("*.png"))
    assert pngs == [
        "phi_contour.png", "phi_decay_comparison.png", "phi_detuned.png",
        "phi_resonant.png", "psi_contour.png", "psi_detuned.png", "psi_resonant.png",
    ]
    csvs = list(outdir.glob("*.csv"))
    assert len(csvs) >= 7
