import numpy as np
import pytest

from bellmanlab import laminate as lam


def nu_sum(p, eta):
    hi, lo = lam.nu_pair(p, eta)
    return lam.Laminate(atoms=hi.atoms + lo.atoms, rays=hi.rays + lo.rays)


# ---------------------------------------------------------------------------
# parameter relations


def test_relations_p4_eta0():
    s0, K, p_eta, resid = lam.s0_K_p_relations(4.0, 0.0)
    assert (s0, K, p_eta) == (0.5, 2.0, 4.0)
    assert p_eta - 1.0 == pytest.approx((K + 1) / (K - 1))
    assert resid < 1e-14


def test_relations_p2_eta2():
    _, K, _, _ = lam.s0_K_p_relations(2.0, 2.0)
    assert K == pytest.approx(2.0)


def test_relations_residual_sweep():
    for p in (2.0, 2.7, 4.0, 9.0):
        for eta in (1e-4, 1e-2, 0.5):
            assert lam.s0_K_p_relations(p, eta)[3] < 1e-13


def test_relations_validation():
    with pytest.raises(ValueError):
        lam.s0_K_p_relations(1.5, 0.1)


# ---------------------------------------------------------------------------
# integration


def test_constant_integral_is_half():
    # closed-form oracle: (K/(K-1)) / (p + eta) with p + eta = 2K/(K-1)
    p, eta = 3.0, 0.25
    hi, _ = lam.nu_pair(p, eta)
    one = lam.power_test(lambda X, Y: np.ones_like(np.asarray(X, float)), 0.0)
    assert lam.integrate(hi, one) == pytest.approx(0.5, abs=1e-14)


def test_phi_plus_closed_form():
    p, eta = 3.0, 1e-3
    _, K, _, _ = lam.s0_K_p_relations(p, eta)
    both = nu_sum(p, eta)
    got = lam.integrate(both, lam.phi_plus(p))
    expect = 2.0 * (K / (K - 1.0)) * ((K + 1.0) / K) ** p / eta
    # the decay exponent q - 1 - p cancels to eta in floating point
    assert got == pytest.approx(expect, rel=1e-9)


def test_atoms_only_signed_sum():
    l = lam.Laminate(atoms=[(1.0, 2.0, 0.5), (-3.0, 1.0, 2.0)])
    f = lam.TestFunction2D(lambda X, Y: X - Y)
    assert lam.integrate(l, f) == pytest.approx(0.5 * (1 - 2) + 2.0 * (-3 - 1))


def test_closed_form_vs_quadrature():
    # moderate tail: the quadrature route is viable and must agree
    mu = lam.mu_laminate(3.0, 0.5)
    for phi in (lam.phi_plus(3.0), lam.phi_minus(3.0)):
        closed = lam.integrate(mu, phi)
        quad = lam.integrate(mu, phi, method="quad")
        assert abs(closed - quad) / closed < 1e-10


def test_divergent_ray_errors():
    p, eta = 3.0, 0.5
    hi, _ = lam.nu_pair(p, eta)
    too_big = lam.power_test(lambda X, Y: np.abs(Y) ** (p + eta), p + eta)
    with pytest.raises(ValueError):
        lam.integrate(hi, too_big)
    with pytest.raises(ValueError):
        lam.integrate(hi, lam.TestFunction2D(lambda X, Y: np.abs(Y) ** (p + eta)),
                      method="quad")


# ---------------------------------------------------------------------------
# baricenters


def test_baricenter_single_atom():
    l = lam.Laminate(atoms=[(1.0, 1.0, 1.0)])
    assert lam.baricenter(l) == pytest.approx((1.0, 1.0, 1.0))


def test_nu_pair_is_centered_unit_mass():
    for eta in (1e-2, 1e-4):
        bx, by, m = lam.baricenter(nu_sum(3.0, eta))
        assert (bx, by, m) == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)


def test_mu_baricenter_reported():
    # the printed atoms put the mean at (0, 1); computed, not corrected
    bx, by, m = lam.baricenter(lam.mu_laminate(3.0, 1e-3))
    assert m == pytest.approx(1.0, abs=1e-12)
    assert bx == pytest.approx(0.0, abs=1e-12)
    assert by == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# the ratio


def test_ratio_limit_and_monotone_sweep():
    p = 3.0
    roots = []
    for eta in (1e-1, 1e-2, 1e-3, 1e-4):
        r = lam.ratio(p, eta)
        roots.append(r.direct ** (1.0 / p))
        # both evaluations approach the same target from the same data
        assert r.target == pytest.approx((r.K + 1) / (r.K - 1))
    assert roots == sorted(roots)
    assert abs(roots[-1] - (p - 1.0)) < 5e-3


def test_ratio_printed_form_same_limit():
    p = 3.0
    r = lam.ratio(p, 1e-4)
    assert abs(r.printed ** (1 / p) - (p - 1.0)) < 5e-3
    # the two bookkeepings differ at finite eta; the discrepancy is reported
    assert r.discrepancy > 0


def test_sigma_reflection_swaps_tests_exactly():
    for eta in (1e-1, 1e-2):
        assert lam.sigma_ratio(3.0, eta) == pytest.approx(
            lam.ratio(3.0, eta).direct, rel=1e-14)


def test_ratio_finite_at_p2_large_eta():
    r = lam.ratio(2.0, 1.5)
    assert np.isfinite(r.direct) and r.direct >= 1.0


# ---------------------------------------------------------------------------
# Jensen inequality


def test_affine_exact_on_any_centered_laminate():
    both = nu_sum(3.0, 1e-2)
    aff = lam.TestFunction2D(lambda X, Y: 1.3 * X - 0.4 * Y + 2.0, "affine")
    for a in ((0.0, 0.0), (1.0, -2.0)):
        worst = lam.laminate_inequality_check(both, a=a, battery=[aff])
        assert abs(worst) < 1e-10


def test_concave_in_x_nonnegative():
    both = nu_sum(3.0, 1e-2)
    f = lam.TestFunction2D(lambda X, Y: -np.asarray(X, float) ** 2, "neg-x-square")
    assert lam.laminate_inequality_check(both, battery=[f]) >= -1e-10


def test_min_affine_battery():
    both = nu_sum(3.0, 1e-2)
    assert lam.laminate_inequality_check(both, a=(0.5, -0.25), seed=11) >= -1e-10


def test_battery_certification_rejects_convex():
    both = nu_sum(3.0, 1e-2)
    bad = lam.TestFunction2D(lambda X, Y: np.asarray(X, float) ** 2, "convex")
    with pytest.raises(ValueError, match="bi-concavity"):
        lam.laminate_inequality_check(both, battery=[bad])


def test_check_biconcave_flags_phi_plus():
    ok, witness = lam.check_biconcave(lam.phi_plus(3.0).fn, samples=5000, seed=1)
    assert not ok and witness is not None
