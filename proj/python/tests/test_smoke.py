import math

import numpy as np
import pytest

import degmlmc


def test_config_keys_cover_sections():
    keys = degmlmc.config_keys()
    for k in ("model", "nu", "scheme", "cfl", "dx0", "K", "L", "m_base", "T", "seed", "workers"):
        assert k in keys


def test_model_functions_match_closed_forms():
    # p_c(s) = (s^(-4/3) - 1)^(1/4) sign-adjusted; p_c(2^(-3/4)) = -1.
    assert degmlmc.capillary_pressure(2.0 ** -0.75) == pytest.approx(-1.0, abs=1e-14)
    assert degmlmc.diffusion_coefficient(0.5, p=2.0, nu=1.0) == pytest.approx(
        0.1534063118033681651, rel=1e-13)
    assert degmlmc.fractional_flow(0.5, p=2.0) == pytest.approx(0.5, abs=1e-15)


def test_philox_known_answer():
    out = degmlmc.philox4x32([0, 0, 0, 0], [0, 0])
    assert [hex(v) for v in out] == ["0x6627e8d5", "0xe169c58d", "0xbc57ac4c", "0x9b00dbd8"]


def test_sample_allocation():
    assert degmlmc.sample_allocation(1, 3, 8) == [32, 21, 13, 8]


def test_thomas_periodic_matches_dense_solve():
    rng = np.random.default_rng(3)
    n = 9
    lower, upper = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
    diag = 3.0 + rng.uniform(0, 1, n)
    rhs = rng.uniform(-1, 1, n)
    a = np.diag(diag) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)
    a[n - 1, 0] = upper[n - 1]
    a[0, n - 1] = lower[0]
    x = degmlmc.thomas_periodic(lower, diag, upper, upper[n - 1], lower[0], rhs)
    np.testing.assert_allclose(x, np.linalg.solve(a, rhs), atol=1e-12)


def test_solve_keeps_values_in_data_range():
    r = degmlmc.solve(dx=1 / 32, T=0.1)
    assert r["u"].shape == (64,)
    assert r["time"] == pytest.approx(0.1)
    assert r["u"].min() >= 0.1 - 1e-12 and r["u"].max() <= 0.8 + 1e-12
    assert r["work"]["cell_updates"] > 0


def test_mlmc_level_zero_equals_mc():
    common = dict(dx=0.125, dx0=0.125, T=0.1, seed=5)
    mc = degmlmc.mc_estimate(M=6, **common)
    ml = degmlmc.mlmc_estimate(L=0, m_base=6, **common)
    assert np.array_equal(mc["mean"], ml["mean"])
    assert np.array_equal(mc["std"], ml["std"])


def test_bad_setting_raises():
    with pytest.raises(degmlmc.Error, match="nu"):
        degmlmc.solve(nu="abc")
    with pytest.raises(degmlmc.Error, match="unknown key"):
        degmlmc.solve(bogus=1)


def test_convergence_study_small():
    rep = degmlmc.convergence_study(L=1, N=2, T=0.1, reference_nodes=4, timing=False)
    assert [r["L"] for r in rep["rows"]] == [0, 1]
    assert rep["rows"][1]["RE"] < rep["rows"][0]["RE"]
    assert math.isfinite(rep["rate_dx"])
