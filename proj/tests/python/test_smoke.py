import math

import numpy as np
import pytest

import nnlaw


def test_constants():
    assert nnlaw.unit_ball_volume(2) == pytest.approx(math.pi)
    assert nnlaw.gamma_constant(2, 1, 1.0) == pytest.approx(0.5, abs=1e-14)
    assert nnlaw.poisson_nn_moment(4.0, 2, 1, 2.0) == pytest.approx(1 / (4 * math.pi))
    with pytest.raises(nnlaw.InvalidGammaArgument):
        nnlaw.gamma_constant(2, 1, -2.0)


def test_distances_and_statistic():
    pts = np.array([0.0, 1.0, 3.0])
    assert list(nnlaw.nn_distances(pts, 1)) == [1.0, 1.0, 2.0]
    assert nnlaw.statistic_power(pts, 1, 1.0) == pytest.approx(12.0)
    assert nnlaw.statistic_phi(pts, 1, lambda t: min(t, 1.0)) == 3.0
    rng = np.random.default_rng(0)
    cloud = rng.random((300, 3))
    np.testing.assert_array_equal(nnlaw.nn_distances(cloud, 2), nnlaw.nn_distances(cloud, 2, bruteforce=True))
    assert nnlaw.estimate(pts, 1, 1.0)["statistic"] == pytest.approx(12.0)


def test_models():
    g = nnlaw.make_model(model="gaussian", d=2)
    assert g.i_rho(0.5) == pytest.approx(2 * math.sqrt(2 * math.pi))
    xs = g.sample(1000, 3)
    assert xs.shape == (1000, 2)
    np.testing.assert_array_equal(xs, g.sample(1000, 3))
    p = nnlaw.make_model({"model": "power_law", "d": 2, "beta": 6})
    assert p.critical_moment() == 4.0
    assert math.isinf(p.moment(5.0))
    with pytest.raises(nnlaw.InvalidModel):
        nnlaw.make_model(model="power_law", d=2, beta=1.0)


def test_limit_and_conditions():
    cube = nnlaw.make_model(model="uniform_union", d=2)
    value, error = nnlaw.limit_functional(lambda t: t, cube, 1)
    assert value == pytest.approx(0.5, rel=1e-6)
    assert error >= 0.0
    c = nnlaw.make_model(model="counterexample", d=2, r=1.0)
    report = nnlaw.condition_report(c, 1.5, 1)
    assert report["thm5_divergence"] is True
    assert report["thm2_applies"] is False


def test_mst():
    square = np.array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype=float)
    edges = nnlaw.build_mst(square)
    assert len(edges) == 3
    assert sum(e[2] for e in edges) == pytest.approx(3.0)
    assert nnlaw.l_phi(square, lambda t: t * t) == pytest.approx(3.0)
    assert nnlaw.l_power_nn(np.array([0.0, 1.0, 3.0]), 1.0) == 4.0


def test_experiments():
    cfg = {"model": "uniform_union", "d": 2, "alpha": 1, "n_grid": [500, 1000], "replications": 3, "seed": 5}
    r = nnlaw.converge(cfg)
    assert len(r["records"]) == 6
    assert r["target"] == pytest.approx(1.0)
    assert nnlaw.records_csv("converge", cfg) == nnlaw.records_csv("converge", cfg)
    with pytest.raises(nnlaw.ConditionRefused):
        nnlaw.diverge({"model": "counterexample", "d": 2, "r": 1, "alpha": 0.2, "k_grid": [2, 3]})
    with pytest.raises(nnlaw.InvalidRho):
        nnlaw.entropy(cfg, 1.0)
    probe = nnlaw.probe({"model": "gaussian", "d": 2, "alpha": 0, "n_grid": [50], "replications": 2}, 2.0)
    assert all(rec["value"] == 1.0 for rec in probe["records"])
