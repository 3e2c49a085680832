"""End-to-end smoke checks of the Python surface."""

import math
import pathlib

import pytest

import spinmac

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="module")
def cfg():
    return spinmac.default_config()


def test_oracle_matmul():
    a = [[3, 4], [1, 1]]
    b = [[2, 1], [5, 1]]
    assert spinmac.oracle_matmul(a, b) == [[26, 7], [7, 2]]


def test_oracle_rejects_ragged_input():
    with pytest.raises(ValueError):
        spinmac.oracle_matmul([[1, 2], [3]], [[1, 2], [3, 4]])


def test_ideal_noiseless_matmul_matches_oracle(cfg):
    a = [[3, 4, 2], [1, 5, 6], [2, 2, 9]]
    b = [[2, 1, 7], [5, 1, 3], [4, 4, 1]]
    run = spinmac.matmul(a, b, cfg, fidelity="ideal", noise=False)
    assert run["rounded"] == run["oracle"] == spinmac.oracle_matmul(a, b)
    assert run["rounded_error_rate"] == 0
    assert run["max_abs_error"] < 1e-6
    assert run["nonvolatile_elements"] == 9
    assert run["energy_j"] > 0
    assert run["latency_s"] > 0


def test_sequential_and_parallel_decode_identically(cfg):
    a = [[2, 3], [4, 5]]
    b = [[6, 7], [8, 9]]
    seq = spinmac.matmul(a, b, cfg, noise=True, seed=11, mode="sequential")
    par = spinmac.matmul(a, b, cfg, noise=True, seed=11, mode="parallel-array")
    assert seq["decoded"] == par["decoded"]
    assert par["device_count"] > seq["device_count"]
    assert par["latency_s"] < seq["latency_s"]


def test_physical_fidelity_reports_attenuated_values(cfg):
    a = [[4, 7], [2, 9]]
    b = [[3, 8], [6, 2]]
    run = spinmac.matmul(a, b, cfg, fidelity="exact-compensated", noise=False)
    for i in range(2):
        for j in range(2):
            ratio = run["decoded"][i][j] / run["oracle"][i][j]
            assert 0.35 < ratio < 0.7


def test_config_file_round_trip(cfg):
    loaded = spinmac.load_config(str(ROOT / "configs" / "default.cfg"))
    assert spinmac.encoding(loaded) == spinmac.encoding(cfg)
    assert spinmac.linear_fit(loaded) == spinmac.linear_fit(cfg)
    assert "default.cfg" in repr(loaded)


def test_encoding_constants(cfg):
    enc = spinmac.encoding(cfg)
    assert enc["n_max"] == 12
    assert math.isclose(enc["step_v"], 4.07e-3, rel_tol=2e-3)


def test_transfer_curve_and_fit(cfg):
    const = spinmac.analytic_constants(cfg)
    knee = const["offset_v"] - const["threshold_v"]
    curve = spinmac.transfer_curve(cfg, knee - 0.05, knee + 0.01, points=61)
    g = curve["conductance_s"]
    assert min(g) == pytest.approx(5e-4, rel=1e-9)  # flat level above the knee
    assert g[0] > 5.2e-4  # active branch conducts more
    fit = spinmac.linear_fit(cfg)
    assert -4.8e-4 < fit["kappa_s_per_v"] < -3.8e-4
    assert -0.27 < fit["delta_v"] < -0.25


def test_steady_angle_branches(cfg):
    const = spinmac.analytic_constants(cfg)
    knee = const["offset_v"] - const["threshold_v"]
    tilted = spinmac.steady_angle(cfg, knee - 0.03)
    collinear = spinmac.steady_angle(cfg, knee + 0.03)
    assert not tilted["collinear"]
    assert collinear["collinear"]
    assert tilted["theta_rad"] < collinear["theta_rad"] == math.pi


def test_crossbar_report(cfg):
    rep = spinmac.crossbar_report(10, cfg)
    assert rep["devices_here"] == 200
    assert rep["devices_crossbar"] == 1000
    assert rep["nonvolatile_here"] and not rep["nonvolatile_crossbar"]
    assert rep["latency_parallel_s"] < rep["latency_sequential_s"]


def test_operand_policing(cfg):
    with pytest.raises(ValueError, match="zero has no pulse representation"):
        spinmac.matmul([[1]], [[0]], cfg, fidelity="exact")
    with pytest.raises(ValueError, match="fidelity"):
        spinmac.matmul([[1]], [[1]], cfg, fidelity="bogus")
