import numpy as np
import pytest

from bellmanlab import stochastic as st


# ---------------------------------------------------------------------------
# driver


def test_driver_variance_tracks_time():
    drv = st.BrownianDriver(1, 2.0, 64, seed=0)
    inc = drv.increments(20000)[:, :, 0]
    w = np.cumsum(inc, axis=1)
    t = drv.times()[1:]
    var = np.var(w, axis=0)
    # 4 sigma band for the empirical variance of a chi-square mean
    band = 4.0 * t * np.sqrt(2.0 / 20000)
    assert np.all(np.abs(var - t) <= band)


def test_driver_reproducible_batches():
    drv = st.BrownianDriver(2, 1.0, 16, seed=3)
    a = drv.increments(100, batch=5)
    b = drv.increments(100, batch=5)
    c = drv.increments(100, batch=6)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


# ---------------------------------------------------------------------------
# the two Riemann sums


def test_riemann_gap_contains_b_minus_a():
    demo = st.riemann_gap_demo(0.0, 1.0, 400, 40000, seed=1)
    assert abs(demo["ES1"]) <= demo["ES1_ci"]
    assert abs(demo["ES2"] - 1.0) <= demo["ES2_ci"]
    # E S1^2 <= b(b - a); the true value here is 1/2
    assert demo["ES1_sq"] <= 1.0 + demo["ES1_sq_ci"]


def test_riemann_gap_degenerate():
    demo = st.riemann_gap_demo(0.5, 0.5, 10, 10, seed=0)
    assert demo["ES1"] == 0.0 and demo["ES2"] == 0.0


# ---------------------------------------------------------------------------
# discrete stochastic integrals


def test_integral_of_one_is_endpoint_difference():
    drv = st.BrownianDriver(1, 1.0, 128, seed=2)
    vals = st.ito_integral(lambda v: np.ones_like(v.current), drv, 30000)
    assert abs(np.mean(vals)) < 4.0 * np.std(vals) / np.sqrt(30000)
    assert np.var(vals) == pytest.approx(1.0, rel=0.05)


def test_isometry_for_w_dw():
    # E (int w dw)^2 = int_0^1 t dt = 1/2 within 3 sigma
    drv = st.BrownianDriver(1, 1.0, 256, seed=3)
    vals = st.ito_integral(lambda v: v.current, drv, 40000)
    second = vals ** 2
    assert abs(np.mean(second) - 0.5) <= 3.0 * np.std(second) / np.sqrt(40000)


def test_product_identity():
    drv = st.BrownianDriver(1, 1.0, 256, seed=4)
    paths = 40000
    f = st.ito_integral(lambda v: np.sin(v.current), drv, paths, batch=2)
    g = st.ito_integral(lambda v: np.cos(v.current), drv, paths, batch=2)
    prod = f * g
    inc = drv.increments(paths, 2)[:, :, 0]
    w = np.concatenate([np.zeros((paths, 1)), np.cumsum(inc, axis=1)], axis=1)[:, :-1]
    ref = np.mean(np.sum(np.sin(w) * np.cos(w), axis=1) * drv.dt)
    assert abs(np.mean(prod) - ref) <= 3.0 * np.std(prod) / np.sqrt(paths)


def test_adaptedness_guard():
    drv = st.BrownianDriver(1, 1.0, 32, seed=5)
    with pytest.raises(ValueError, match="adaptedness"):
        st.ito_integral(lambda v: v.value(33), drv, 4)


# ---------------------------------------------------------------------------
# heat martingales


def test_linear_input_gives_exact_martingale():
    # f(z) = z has constant gradient: X(t) = W_t exactly, no time error
    drv = st.BrownianDriver(2, 2.0, 16, seed=6)
    path = st.heat_martingale(st.HoloPoly(1), 2.0, drv, 256)
    inc = drv.increments(256)
    w_end = inc[:, :, 0].sum(1) + 1j * inc[:, :, 1].sum(1)
    assert np.max(np.abs(path.terminal - w_end)) < 1e-12


def test_martingale_mean_is_initial_value():
    surf = st.GaussianMix.single(sigma2=0.8)
    drv = st.BrownianDriver(2, 4.0, 64, seed=7)
    path = st.heat_martingale(surf, 4.0, drv, 20000)
    u0 = surf.value(4.0, np.zeros((1, 2)))[0]
    gap = abs(np.mean(path.terminal) - u0)
    assert gap <= 3.0 * np.std(path.terminal.real) / np.sqrt(20000) + 1e-12


def test_terminal_gap_strong_order():
    surf = st.GaussianMix.single(sigma2=0.8)
    sweep = st.terminal_gap_sweep(surf, 4.0, [16, 32, 64, 128, 256], 3000, seed=8)
    dts = np.log([d for d, _ in sweep])
    rms = np.log([r for _, r in sweep])
    order = np.polyfit(dts, rms, 1)[0]
    assert order >= 0.45


def test_semigroup_property_of_closed_form():
    # u^{u^f(s,.)}(t,.) = u^f(s+t,.) for the Gaussian closed form
    surf = st.GaussianMix.single(sigma2=0.7)
    x = np.random.default_rng(0).normal(size=(50, 2))
    direct = surf.value(1.3, x)
    stage = st.GaussianMix(surf.amplitudes * (surf.sigma2 / (surf.sigma2 + 0.5)),
                           surf.centers, surf.sigma2 + 0.5)
    assert np.allclose(stage.value(0.8, x), direct, atol=1e-13)


# ---------------------------------------------------------------------------
# the matrix transform


def test_holomorphic_input_vanishes():
    drv = st.BrownianDriver(2, 2.0, 32, seed=9)
    path = st.ab_star(st.HoloPoly(2), 2.0, drv, 64)
    assert np.max(np.abs(path.terminal)) == 0.0


def test_conformality_and_subordination_pathwise():
    rng = np.random.default_rng(10)
    surf = st.GaussianMix.random(rng, bumps=3)
    drv = st.BrownianDriver(2, 3.0, 48, seed=11)
    res = st.transform_residuals(surf, 3.0, drv, 512)
    assert res["max_orthogonality"] <= 1e-10
    assert res["max_norm_mismatch"] <= 1e-10
    assert res["max_subordination_excess"] <= 1e-10


def test_rows_recorded():
    surf = st.GaussianMix.single()
    drv = st.BrownianDriver(2, 1.0, 8, seed=12)
    p1 = st.heat_martingale(surf, 1.0, drv, 16, keep_rows=True)
    p2 = st.ab_star(surf, 1.0, drv, 16, keep_rows=True)
    assert p1.h_rows.shape == (16, 8, 2, 2)
    assert p2.k_rows.shape == (16, 8, 2, 2)


# ---------------------------------------------------------------------------
# conditioning and constants


def test_conditioning_matches_oracle_small():
    surf = st.GaussianMix.single(sigma2=1.0)
    res = st.ab_by_conditioning(surf, T=40.0, paths=150_000, bins=16,
                                steps=200, seed=13)
    res.min_count = 25
    frac = res.agreement_fraction(3.0, disc_tol=0.05)
    assert frac >= 0.9


def test_conditioning_linear_in_f():
    # doubling the amplitude doubles the estimate (same seed, same paths)
    surf1 = st.GaussianMix.single(amplitude=1.0, sigma2=1.0)
    surf2 = st.GaussianMix.single(amplitude=2.0, sigma2=1.0)
    r1 = st.ab_by_conditioning(surf1, T=20.0, paths=20_000, bins=8, steps=60, seed=14)
    r2 = st.ab_by_conditioning(surf2, T=20.0, paths=20_000, bins=8, steps=60, seed=14)
    assert np.allclose(r2.estimate, 2.0 * r1.estimate, atol=1e-12)


def test_zero_input_gives_zero():
    surf = st.GaussianMix.single(amplitude=0.0)
    res = st.ab_by_conditioning(surf, T=10.0, paths=5_000, bins=8, steps=40, seed=15)
    assert np.max(np.abs(res.estimate)) == 0.0


def test_subordination_constants():
    rep = st.subordination_constants_mc(4.0, trials=2000, seed=16)
    assert rep["ratio_plain"] <= rep["plain_ceiling"]
    assert rep["ratio_conformal"] <= rep["conformal_ceiling"]
    assert rep["conformal_ceiling"] == pytest.approx(np.sqrt(6.0))


def test_constants_stationary_in_horizon():
    a = st.subordination_constants_mc(4.0, trials=1500, seed=17, T=8.0)
    b = st.subordination_constants_mc(4.0, trials=1500, seed=17, T=16.0)
    assert abs(a["ratio_conformal"] - b["ratio_conformal"]) < 0.2
