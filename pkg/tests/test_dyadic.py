import numpy as np
import pytest

from bellmanlab import dyadic as dy


def rand_fn(depth, seed=0):
    return dy.DyadicFunction(np.random.default_rng(seed).standard_normal(2 ** depth))


# ---------------------------------------------------------------------------
# Haar analysis


def test_constant_has_zero_coefficients():
    f = dy.DyadicFunction(np.full(16, 3.7))
    assert all(np.allclose(c, 0.0) for c in dy.haar_coefficients(f))


def test_root_haar_function_coefficient():
    # h_{[0,1]} sampled at depth 3: -1 left, +1 right (L2-normalized)
    vals = np.concatenate([-np.ones(4), np.ones(4)])
    coeffs = dy.haar_coefficients(dy.DyadicFunction(vals))
    assert coeffs[0][0] == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(coeffs[1], 0.0) and np.allclose(coeffs[2], 0.0)


def test_parseval_random_depth8():
    # oracle: direct L2 summation of the sample values
    f = rand_fn(8, seed=1)
    coeffs = dy.haar_coefficients(f)
    lhs = sum(float(np.sum(c ** 2)) for c in coeffs) + float(f.mean) ** 2
    assert abs(lhs - f.norm(2.0) ** 2) < 1e-12


def test_synthesis_inverts_analysis():
    f = rand_fn(9, seed=2)
    g = dy.haar_synthesis(dy.haar_coefficients(f), mean=f.mean)
    assert np.allclose(g.values, f.values, atol=1e-13)


# ---------------------------------------------------------------------------
# Martingale transform


def test_transform_all_plus_is_mean_removal():
    f = rand_fn(7, seed=3)
    tf = dy.martingale_transform(f, dy.constant_signs(7, 1))
    assert np.allclose(tf.values, f.values - f.mean, atol=1e-13)


def test_transform_involution():
    f = rand_fn(7, seed=4)
    minus = dy.constant_signs(7, -1)
    twice = dy.martingale_transform(dy.martingale_transform(f, minus), minus)
    assert np.allclose(twice.values, f.values - f.mean, atol=1e-13)


def test_transform_missing_sign_raises():
    f = rand_fn(4, seed=5)
    signs = {dy.DyadicInterval(0, 0): 1.0}   # deeper intervals uncovered
    with pytest.raises(ValueError, match="missing sign"):
        dy.martingale_transform(f, signs)


def test_transform_l2_isometry_on_mean_zero():
    rng = np.random.default_rng(6)
    f = rand_fn(8, seed=6)
    mean_zero_norm = dy.DyadicFunction(f.values - f.mean).norm(2.0)
    for _ in range(5):
        tf = dy.martingale_transform(f, dy.random_signs(8, rng))
        assert tf.norm(2.0) <= mean_zero_norm + 1e-12


def test_transform_l4_bound():
    # sharp constant p* - 1 = 3 at p = 4; random trials never exceed it
    rng = np.random.default_rng(7)
    f = rand_fn(8, seed=7)
    for _ in range(20):
        tf = dy.martingale_transform(f, dy.random_signs(8, rng))
        assert tf.norm(4.0) <= 3.0 * f.norm(4.0)


# ---------------------------------------------------------------------------
# Weight characteristics


def test_a2_constant_weight():
    assert dy.a2_dyadic(dy.DyadicWeight(np.ones(32))) == pytest.approx(1.0)


def test_a2_two_value_hand_computation():
    # oracle: the three intervals of depth <= 1 by hand; sup is at the root:
    # <w> <1/w> = (3/2)(3/4) = 9/8
    w = dy.two_value_weight(2.0, 1.0, 6)
    assert dy.a2_dyadic(w) == pytest.approx(9.0 / 8.0, abs=1e-14)


def test_a2_monotone_in_depth():
    # refinement oracle: the sup over a larger tree cannot decrease
    vals = [dy.a2_dyadic(dy.power_weight(0.5, d)) for d in (8, 10, 12)]
    assert vals[0] <= vals[1] <= vals[2]
    assert np.isfinite(vals[-1])


def test_weight_validation():
    with pytest.raises(ValueError):
        dy.DyadicWeight(np.array([1.0, -1.0]))


# ---------------------------------------------------------------------------
# Weighted Haar system


def test_weighted_haar_unweighted_case():
    w = dy.DyadicWeight(np.ones(16))
    a, b, hw = dy.weighted_haar(w, dy.DyadicInterval(1, 1))
    assert a == pytest.approx(1.0) and b == pytest.approx(0.0)
    # h_I^w equals h_I: value +-1/sqrt(|I|) = +-sqrt(2) on the halves
    block = hw.values[8:]
    assert np.allclose(block[:4], -np.sqrt(2.0)) and np.allclose(block[4:], np.sqrt(2.0))


def test_weighted_haar_two_value_reconstruction():
    # oracle: solve the 2x2 system by hand; w = 1 left, 4 right gives
    # beta = (4-1)/(2*2.5) = 3/5 and h_I = alpha h^w + beta chi/sqrt(|I|)
    w = dy.two_value_weight(1.0, 4.0, 5)
    I = dy.DyadicInterval(0, 0)
    a, b, hw = dy.weighted_haar(w, I)
    assert b == pytest.approx(3.0 / 5.0, abs=1e-15)
    n = 2 ** 5
    h = np.where(np.arange(n) < n // 2, -1.0, 1.0)
    recon = a * hw.values + b * np.ones(n)
    assert np.max(np.abs(recon - h)) < 1e-14


def test_weighted_haar_bounds_and_gram():
    rng = np.random.default_rng(8)
    w = dy.DyadicWeight(np.exp(rng.standard_normal(2 ** 6)))
    aw = w.all_averages()
    basis = []
    for lev in range(6):
        for idx in range(2 ** lev):
            a, b, hw = dy.weighted_haar(w, dy.DyadicInterval(lev, idx))
            delta = aw[lev + 1][2 * idx + 1] - aw[lev + 1][2 * idx]
            assert abs(a) <= np.sqrt(aw[lev][idx]) + 1e-12
            assert abs(b) <= abs(delta) / aw[lev][idx] + 1e-12
            basis.append(hw.values)
    basis = np.array(basis)
    gram = (basis * w.values) @ basis.T / basis.shape[1]
    assert np.max(np.abs(gram - np.eye(len(basis)))) < 1e-10


def test_weighted_haar_needs_children():
    w = dy.two_value_weight(2.0, 1.0, 3)
    with pytest.raises(ValueError):
        dy.weighted_haar(w, dy.DyadicInterval(3, 0))


# ---------------------------------------------------------------------------
# Carleson sequences


def test_intensity_telescoping_count():
    D = 6
    seq = dy.CarlesonSequence([np.full(2 ** lev, 2.0 ** -lev) for lev in range(D + 1)])
    assert dy.carleson_intensity(seq) == pytest.approx(D + 1.0, abs=1e-12)


def test_caral_sequence_constant_weight_vanishes():
    seq = dy.caral_sequence(dy.DyadicWeight(np.ones(64)), alpha=0.25)
    assert dy.carleson_intensity(seq) == 0.0


def test_caral_sequence_two_value_envelope():
    # exhaustive tree summation oracle across depths
    for depth in (8, 10, 12):
        w = dy.two_value_weight(2.0, 1.0, depth)
        seq = dy.caral_sequence(w, alpha=0.25)
        intensity = dy.carleson_intensity(seq)
        assert intensity <= 4.0 * dy.a2_dyadic(w) ** 0.25


def test_embedding_constant_f():
    D = 5
    seq = dy.CarlesonSequence([np.full(2 ** lev, 2.0 ** -lev) for lev in range(D + 1)])
    f = dy.DyadicFunction(np.ones(2 ** D))
    w = dy.DyadicWeight(np.ones(2 ** D))
    chk = dy.carleson_embedding_check(seq, f, w)
    assert chk.lhs1 == pytest.approx(D + 1.0)
    assert chk.rhs1 == pytest.approx(2.0 * (D + 1.0))
    assert chk.holds1 and chk.holds2


def test_embedding_indicator_random_sequences():
    rng = np.random.default_rng(9)
    D = 8
    n = 2 ** D
    f = dy.DyadicFunction((np.arange(n) < n // 2).astype(float))
    w = dy.DyadicWeight(np.exp(0.5 * rng.standard_normal(n)))
    for _ in range(5):
        seq = dy.CarlesonSequence(
            [rng.uniform(0, 1, 2 ** lev) * 2.0 ** -lev for lev in range(D + 1)])
        chk = dy.carleson_embedding_check(seq, f, w)
        assert chk.holds1


def test_embedding_weight_one_reduces():
    # with w = 1 the weighted side is the plain side with constant 4 >= 2
    rng = np.random.default_rng(10)
    D = 6
    seq = dy.CarlesonSequence(
        [rng.uniform(0, 1, 2 ** lev) * 2.0 ** -lev for lev in range(D + 1)])
    f = dy.DyadicFunction(np.abs(rng.standard_normal(2 ** D)))
    chk = dy.carleson_embedding_check(seq, f, dy.DyadicWeight(np.ones(2 ** D)))
    assert chk.lhs2 == pytest.approx(chk.lhs1)
    assert chk.rhs2 == pytest.approx(2.0 * chk.rhs1)


def test_embedding_rejects_negative_f():
    seq = dy.CarlesonSequence([np.zeros(1)])
    with pytest.raises(ValueError):
        dy.carleson_embedding_check(
            seq, dy.DyadicFunction(np.array([-1.0, 1.0])),
            dy.DyadicWeight(np.ones(2)))


# ---------------------------------------------------------------------------
# Square-function sums and the exponential characteristic


def test_buckley_constant_weight():
    assert dy.buckley_sum(dy.DyadicWeight(np.ones(64))) == 0.0


def test_buckley_two_value_single_term():
    # only the root contributes: (Delta w / <w>)^2 |I| = (1/(3/2))^2 = 4/9
    w = dy.two_value_weight(2.0, 1.0, 8)
    assert dy.buckley_sum(w) == pytest.approx(4.0 / 9.0, abs=1e-14)


def test_buckley_power_weight_stabilizes():
    sums = [dy.buckley_sum(dy.power_weight(0.5, d)) for d in range(8, 15)]
    inc = np.diff(sums)
    assert np.all(inc > 0)
    # geometric increments: bounded limit
    assert np.max(inc[1:] / inc[:-1]) < 0.75


def test_a_infinity_values_and_domination():
    assert dy.a_infinity_constant(dy.DyadicWeight(np.full(32, 5.0))) == pytest.approx(1.0)
    w = dy.two_value_weight(2.0, 1.0, 8)
    assert dy.a_infinity_constant(w) == pytest.approx(1.5 / np.sqrt(2.0), abs=1e-12)
    for u in (2.0, 8.0, 64.0):
        wf = dy.two_value_weight(u, 1.0, 8)
        assert dy.a_infinity_constant(wf) <= dy.a2_dyadic(wf)


# ---------------------------------------------------------------------------
# Monte-Carlo transform ratio


def test_mt_ratio_unweighted_below_one():
    w = dy.DyadicWeight(np.ones(2 ** 7))
    assert dy.weighted_mt_ratio(w, trials=50, seed=0) <= 1.0 + 1e-12


def test_mt_ratio_two_value_envelope():
    w = dy.two_value_weight(2.0, 1.0, 8)
    ratio = dy.weighted_mt_ratio(w, trials=300, seed=1)
    assert ratio <= 2.0 * dy.a2_dyadic(w)


def test_mt_ratio_scale_invariance():
    w = dy.two_value_weight(3.0, 1.0, 6)
    w2 = dy.DyadicWeight(7.5 * w.values)
    r1 = dy.weighted_mt_ratio(w, trials=40, seed=2)
    r2 = dy.weighted_mt_ratio(w2, trials=40, seed=2)
    assert r1 == pytest.approx(r2, rel=1e-12)
