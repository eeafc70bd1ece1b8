import math

import numpy as np
import pytest

import nigarch


def test_params_and_gamma():
    p = nigarch.GarchParams(1e-6, 0.007391279, 0.992564947)
    assert f"{p.gamma:.4e}" == "-4.3774e-05"
    with pytest.raises(ValueError, match="α ≥ 0"):
        nigarch.GarchParams(1.0, -0.1, 0.5)


def test_simulate_and_replay():
    p = nigarch.GarchParams(1.0, 0.1, 0.85)
    path = nigarch.simulate(p, "normal", 200, seed=5)
    assert path["sigma_sq"].shape == (201,)
    again = nigarch.simulate(p, "normal", 200, seed=5)
    np.testing.assert_array_equal(path["y"], again["y"])
    replay = nigarch.simulate_with_innovations(p, path["eps"], 1.0)
    np.testing.assert_array_equal(replay["sigma_sq"][:201], path["sigma_sq"])
    vol = nigarch.volterra_sigma_sq_path(p, 1.0, path["eps"][:200])
    np.testing.assert_allclose(vol, path["sigma_sq"], rtol=1e-10)


def test_hand_recursion():
    p = nigarch.GarchParams(1.0, 0.5, 0.25)
    out = nigarch.simulate_with_innovations(p, [1.0], 1.0)
    assert list(out["sigma_sq"]) == [1.0, 1.75]


def test_explosion_maps_to_overflow_error():
    p = nigarch.GarchParams(1.0, 1.0, 0.5)
    with pytest.raises(OverflowError):
        nigarch.simulate_with_innovations(p, [1.0, 1e200, 1.0], 1.0)


def test_schemes_and_assumptions():
    p = nigarch.scheme_params("negative", 0.75, 0.7, 1.0, 10_000)
    assert p.gamma == pytest.approx(-1e-3, abs=1e-15)
    rep = nigarch.validate_assumptions("t21", "negative", n=20_000)
    assert rep["ok"]
    assert len(rep["rows"]) == 9
    witness = {r["id"]: r["witness"] for r in rep["rows"]}
    assert witness["2.18"] == pytest.approx(11.8920711500272, rel=1e-12)
    assert nigarch.validate_assumptions("t23", "negative")["regime_mismatch"]


def test_asymptotics():
    assert nigarch.geometric_sum(0.0, 100) == 99.0
    assert nigarch.geometric_sum(-0.01, 10**6) == pytest.approx(99.50083333194445, rel=1e-6)
    ratio = nigarch.weighted_geometric_sum(1.0, -1e-3, 10**7) / nigarch.gamma_asymptote(1.0, -1e-3)
    assert ratio == pytest.approx(1.0, rel=0.01)
    cov = nigarch.target_covariance("t23", [0.5, 1.0])
    np.testing.assert_allclose(cov, [[1 / 24, 1 / 24], [1 / 24, 1 / 3]])


def test_ks_with_python_cdf():
    d, p = nigarch.ks_test([0.0], lambda x: 0.5 * math.erfc(-x / math.sqrt(2)))
    assert d == pytest.approx(0.5)
    assert 1 - nigarch.kolmogorov_cdf(1.358) == pytest.approx(0.0500268, rel=1e-5)


def test_run_experiment_small():
    rep = nigarch.run_experiment("t23", n=2000, reps=200, seed=3)
    assert rep["samples"].shape == (200, 2)
    assert rep["config"]["theorem"] == "t23"
    assert all("threshold_source" in t for t in rep["tests"])
    again = nigarch.run_experiment("t23", n=2000, reps=200, seed=3, threads=2)
    np.testing.assert_array_equal(rep["samples"], again["samples"])
    back = nigarch.report_roundtrip(rep)
    assert back == {k: v for k, v in rep.items() if k != "samples"}
    with pytest.raises(ValueError):
        nigarch.run_experiment("t21", sign="zero", n=2000, reps=200)


def test_fit_and_loglik(tmp_path):
    assert nigarch.qmle_loglik(nigarch.GarchParams(1.0, 0.0, 0.0), [1.0, 1.0]) == pytest.approx(-0.5)
    truth = nigarch.GarchParams(0.1, 0.05, 0.9)
    y = nigarch.simulate(truth, "normal", 1999, sigma0_sq=2.0, seed=4)["y"]
    res = nigarch.fit(y)
    assert res["gamma"] == res["alpha"] + (res["beta"] - 1.0)
    assert res["loglik"] >= nigarch.qmle_loglik(truth, y)
    table = nigarch.expanding_window_fit(y, [500, 2000])
    assert [r["n"] for r in table["rows"]] == [500, 2000]
    with pytest.raises(ValueError):
        nigarch.fit(y[:10])

    f = tmp_path / "prices.csv"
    f.write_text("100\n101\n")
    np.testing.assert_allclose(nigarch.load_returns(f, prices=True), [math.log(1.01)])
    bad = tmp_path / "bad.csv"
    bad.write_text("1\n2\n3\n4\n5\n6\nabc\n")
    with pytest.raises(nigarch.ParseError, match="line 7"):
        nigarch.load_returns(bad)
