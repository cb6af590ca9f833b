import json
import math
import os
import subprocess

import numpy as np
import pytest

import rlt

CLI = os.environ.get("RLT_CLI")


def rotation(label, angle):
    n = len(label)
    return rlt.hamiltonian_lindbladian(0.5 * angle * rlt.pauli_string(label), n)


def xy_config(**extra):
    cfg = {
        "schema_version": 1,
        "num_qubits": 1,
        "gates": [
            {"name": "X90", "rotation": {"pauli": "X", "angle_deg": 90}},
            {"name": "Y90", "rotation": {"pauli": "Y", "angle_deg": 90}},
        ],
        "eacs": [
            {"name": "x", "unit": ["X90"], "n": [4, 8]},
            {"name": "y", "unit": ["Y90"], "n": [4, 8]},
            {"name": "xy", "unit": ["X90", "Y90"], "n": [4, 8]},
        ],
        "seed": 5,
    }
    cfg.update(extra)
    return cfg


def test_pauli_labels_order():
    assert rlt.pauli_labels(1) == ["I", "X", "Y", "Z"]
    labels = rlt.pauli_labels(2)
    assert labels[1] == "IX" and labels[13] == "ZX"


def test_generator_norm_and_period():
    l = rotation("X", math.pi / 2)
    assert np.linalg.norm(l) == pytest.approx(math.pi / math.sqrt(2), abs=1e-12)
    assert rlt.period(rlt.expm(l).real) == 4


def test_expm_logm_round_trip():
    a = rotation("Y", 1.0).astype(complex)
    assert np.allclose(rlt.logm(rlt.expm(a)), a, atol=1e-12)


def test_map_inverse_pair():
    rng = np.random.default_rng(1)
    a = rotation("X", math.pi / 2).astype(complex)
    b = rng.normal(size=(4, 4)).astype(complex)
    assert np.allclose(rlt.dcl(a, rlt.cml(a, b)), b, atol=1e-10)


def test_half_turn_is_singular():
    singular, _ = rlt.singularity(rotation("X", math.pi).astype(complex))
    assert singular
    singular, gap = rlt.singularity(rotation("X", math.pi / 2).astype(complex))
    assert not singular and gap > 1e-6


def test_analyze_unit_shapes():
    gates = [("X90", rotation("X", math.pi / 2)), ("Y90", rotation("Y", math.pi / 2))]
    a = rlt.analyze_unit(1, gates, [0, 1])
    assert a["period"] == 3
    assert len(a["amplified"]) == 2 and a["amplified"][0].shape == (16, 16)


def test_qpt_inverts_exact_probabilities():
    g = rlt.expm(rotation("Z", 0.3)).real
    probs = rlt.channel_probabilities(g, 1)
    assert np.allclose(rlt.qpt(probs, 1), g, atol=1e-12)


def test_pipeline_closed_loop():
    cfg = xy_config(injection={"X90": {"hamiltonian": {"Z": 1e-3}, "jumps": [{"pauli": {"X": 1}, "rate": 1e-3}]}})
    files = rlt.simulate(cfg)
    assert "data/x_n4.json" in files
    report, csv = rlt.fit(cfg, files)
    assert csv
    for g in report["gates"]:
        assert g["identifiable_error_norm"] < 1e-5


def test_config_error_is_raised():
    with pytest.raises(rlt.ConfigError):
        rlt.analyze({"schema_version": 1, "bogus": 1})


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cfg = xy_config()
    cfg["gates"].append({"name": "X", "rotation": {"pauli": "X", "angle_deg": 180}})
    cfg["eacs"].append({"name": "bad", "unit": ["X"], "n": [2]})
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    r = subprocess.run([CLI, "analyze", "--config", str(path), "--out", str(tmp_path)], capture_output=True, text=True)
    assert r.returncode == 3
    assert "90-degree" in r.stderr

    path.write_text(json.dumps(xy_config()))
    r = subprocess.run([CLI, "fit", "--config", str(path), "--out", str(tmp_path / "empty")], capture_output=True, text=True)
    assert r.returncode == 2

    out = tmp_path / "run"
    assert subprocess.run([CLI, "simulate", "--config", str(path), "--out", str(out)]).returncode == 0
    assert subprocess.run([CLI, "fit", "--config", str(path), "--out", str(out)]).returncode == 0
    assert (out / "fit_report.json").exists()
