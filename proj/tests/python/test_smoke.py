"""Smoke tests for the python bindings."""

import math

import pytest

import iregress as ir


def make_line_data(a=2.0, b=5.0, n=12):
    xs = [(i * 0.5, i * 0.5 + 1.0 + 0.1 * i) for i in range(n)]
    ys = []
    for lo, hi in xs:
        c = 0.5 * (lo + hi)
        r = 0.5 * (hi - lo)
        ys.append((a * c + b - abs(a) * r, a * c + b + abs(a) * r))
    return ir.dataset_from_bounds([xs], ys)


def test_interval_arithmetic():
    a = ir.make_from_bounds(0.0, 2.0)
    b = ir.make_from_bounds(1.0, 3.0)
    s = ir.minkowski_add(a, b)
    assert (s.lower, s.upper) == (1.0, 5.0)
    assert ir.delta_distance(a, b) == pytest.approx(1.0)
    assert ir.delta_norm(ir.Interval(0.0, 1.0)) == pytest.approx(1.0)
    assert ir.scalar_mul(-1.0, b).lower == -3.0

    assert ir.hukuhara_diff(s, a) is not None
    assert ir.hukuhara_diff(a, s) is None

    with pytest.raises(ValueError):
        ir.make_from_bounds(2.0, 0.0)


def test_fit_and_predict_roundtrip():
    data = make_line_data()
    out = ir.fit_univariate(data)
    assert out.ok
    fit = out.result
    assert fit.a[0] == pytest.approx(2.0)
    assert fit.b == pytest.approx(5.0)
    assert fit.mu == pytest.approx(0.0, abs=1e-10)
    assert fit.branch == "plus"
    assert fit.objective <= 1e-18

    pred = ir.predict(fit, [ir.Interval(2.0, 1.0)], clamp=True)
    assert pred.center == pytest.approx(9.0)
    assert pred.radius == pytest.approx(2.0)

    diag = ir.compute_diagnostics(data, fit)
    assert diag.sst == pytest.approx(diag.sse + diag.ssr)
    assert diag.r2 == pytest.approx(1.0)


def test_multivariate_and_ccrm():
    xs1 = [(i, i + 2.0) for i in range(10)]
    xs2 = [(3 * i % 7, 3 * i % 7 + 1.0) for i in range(10)]
    ys = []
    for (l1, h1), (l2, h2) in zip(xs1, xs2):
        c = -1.5 * 0.5 * (l1 + h1) + 2.0 * 0.5 * (l2 + h2) + 4.0
        r = 1.5 * 0.5 * (h1 - l1) + 2.0 * 0.5 * (h2 - l2) + 0.25
        ys.append((c - r, c + r))
    data = ir.dataset_from_bounds([xs1, xs2], ys)

    out = ir.fit_multivariate(data)
    assert out.ok
    assert out.result.a[0] == pytest.approx(-1.5)
    assert out.result.a[1] == pytest.approx(2.0)
    assert out.result.mu == pytest.approx(0.25)
    assert out.result.branch == "pattern:-+"

    ccrm = ir.fit_ccrm(data)
    assert len(ccrm.beta_c) == 3
    assert all(v >= 0.0 for v in ccrm.beta_r)


def test_no_solution_is_a_value():
    xs = [(0.0, 2.0), (-1.0, 3.0), (-2.0, 4.0), (-3.0, 5.0)]
    ys = [(-4.0, 4.0), (-3.0, 3.0), (-2.0, 2.0), (-1.0, 1.0)]
    out = ir.fit_univariate(ir.dataset_from_bounds([xs], ys))
    assert not out.ok
    assert out.result is None
    assert "half-space" in out.reason


def test_simulation_determinism_and_study():
    cfg = ir.model_preset(1)
    cfg.n = 40
    cfg.seed = 11
    d1 = ir.generate_sample(cfg, replication=3)
    d2 = ir.generate_sample(cfg, replication=3)
    assert d1.n_obs == d2.n_obs == 40
    r1 = [iv.radius for iv in d1.response()]
    r2 = [iv.radius for iv in d2.response()]
    assert r1 == r2
    assert all(r >= 0.0 for r in r1)

    report = ir.run_parameter_study([cfg], 50)
    cell = report["cells"][0]
    assert cell["model"] == "model1"
    assert cell["used"] + cell["no_solution"] == 50
    assert cell["a"]["mae"] >= abs(cell["a"]["me"])

    cmp_report = ir.run_comparison_study([cfg], 20, 0.8)
    assert {"ours", "ccrm"} <= set(cmp_report["cells"][0].keys())

    assert ir.estimate_wrong_branch_probability(cfg, 30) >= 0.0


def test_pairwise_cov_identity():
    x = [0.0, 1.0, 2.0]
    y = [0.0, 2.0, 4.0]
    assert ir.pairwise_cov(x, y) == pytest.approx(4.0 / 3.0)
    assert math.isclose(ir.pairwise_cov(x, x), 2.0 / 3.0)
