import math
import os
import subprocess

import numpy as np
import pytest

import graphcs


def test_graph_and_diffusion():
    a = graphcs.generate_graph("er", 30, b=0.2, seed=4)
    assert a.shape == (30, 30)
    assert np.array_equal(a, a.T)
    assert np.all(np.diag(a) == 0)
    h = graphcs.binary_diffusion(a, 1.0)
    assert np.array_equal(h, np.eye(30) + a)
    w = graphcs.metropolis_matrix(a)
    assert np.allclose(w.sum(axis=0), 1.0, atol=1e-12)
    assert np.array_equal(a, graphcs.generate_graph("er", 30, b=0.2, seed=4))


def test_analysis():
    assert abs(graphcs.analytic_mu_er(0.03) - 34.36) <= 0.01
    h = graphcs.binary_diffusion(graphcs.generate_graph("ring_regular", 12, d=4), 1.0)
    gamma = graphcs.gamma_from_matrix(h)
    assert np.allclose(gamma @ h.T @ h / 12, np.eye(12), atol=1e-10)
    mu = graphcs.incoherence_mu(h, gamma)
    p, phi_bar = graphcs.variable_density_plan(h)
    assert math.isclose(sum(p), 1.0, abs_tol=1e-12)
    assert phi_bar <= mu + 1e-12
    assert graphcs.kappa(3.0 * np.eye(6), 2)["value"] == pytest.approx(1.0)
    spec = graphcs.sparse_spectrum(np.diag([1.0, 2.0, 3.0]), 2)
    assert spec["cond"] == pytest.approx(3.0)
    assert graphcs.cond_closed_form_rank1_shift(10, 1, 1.0, 1.0) == pytest.approx(1.0)
    with pytest.raises(graphcs.DegenerateInputError):
        graphcs.analytic_mu_er(0.0)


def test_bounds():
    assert graphcs.bound_t1_uniform(100, 2, 2.0, 1.5)["m_bound"] == pytest.approx(127.16, abs=0.005)
    assert graphcs.bound_t2_er(10000, 4, 0.5)["m_bound"] == pytest.approx(678.1, abs=0.1)
    assert graphcs.bound_t4_variable_density(100, 2, 1.5, 1.5)["m_bound"] == pytest.approx(67.64, abs=0.005)


def test_basis_pursuit():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((12, 30))
    x = np.zeros(30)
    x[[3, 17]] = [1.5, -2.0]
    r = graphcs.basis_pursuit(a, a @ x)
    assert r["status"] == "converged"
    assert np.allclose(r["alpha_hat"], x, atol=1e-6)


def test_experiment_round_trip():
    configs = graphcs.preset("example4", "desk", seed=2)
    assert [c["strategy"] for c in configs] == ["uniform", "variable_density"]
    cfg = configs[0]
    cfg.update(graph={"family": "er", "n": 30, "b": 0.3}, k=2, m_grid=[10, 20], trials=3, analyze=False)
    csv_text, meta = graphcs.run_experiment(cfg)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "m,mean_error,std_error,success_rate,trials,failed_trials"
    assert len(lines) == 3
    assert meta["config"]["k"] == 2
    assert graphcs.run_experiment(cfg)[0] == csv_text
    with pytest.raises(graphcs.ConfigError):
        graphcs.run_experiment(dict(cfg, m_grid=[]))


@pytest.mark.skipif("GRAPHCS_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["GRAPHCS_CLI"]
    bad = subprocess.run([cli, "experiment", "--preset", "nope", "--out", str(tmp_path)], capture_output=True)
    assert bad.returncode == 2
    edges = tmp_path / "g.edges"
    ok = subprocess.run([cli, "gen", "--family", "er", "--n", "20", "--b", "0.3", "--out", str(edges)],
                        capture_output=True)
    assert ok.returncode == 0, ok.stderr
    assert edges.exists()
