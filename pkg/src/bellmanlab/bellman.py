"""Explicit concave-majorant candidates and their verification.

The two-variable candidates are built from the scalar profile

    U(X, Y) = (Y - (p*-1) X) (X + Y)^(p-1),   p* = max(p, p/(p-1)),

extended to the plane by absolute values.  The normalized variants carry
the constant gamma_p = p (1 - 1/p*)^(p-1); every routine states which
scaling it uses, since dropping or keeping gamma_p silently is the classic
way these constants drift.

Margins of the sampling checks (zigzag, majorant) are reported relative to
the magnitude of the function values entering each stencil: the raw
differences cancel to zero on flat directions, so an absolute margin would
only measure float cancellation noise (~1e-4 for p = 8 on a [-10, 10] box).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.optimize import minimize_scalar
from scipy.special import gammaln

__all__ = [
    "p_star",
    "gamma_p",
    "eval_phi",
    "BellmanCandidate",
    "ZigzagReport",
    "zigzag_check",
    "majorant_check",
    "hessian_form_identity",
    "FeasibilityResult",
    "linear_majorant_feasibility",
    "feasibility_transition",
    "h_section_inequality",
    "tau",
    "tau_closed_form",
    "interpolation_constant",
    "bq_hessian_check",
    "jn_bellman_check",
    "power_candidate",
]


def p_star(p: float) -> float:
    if p <= 1:
        raise ValueError("p must exceed 1")
    return max(p, p / (p - 1.0))


def gamma_p(p: float) -> float:
    """p (1 - 1/p*)^(p-1), the normalization of the majorant."""
    return p * (1.0 - 1.0 / p_star(p)) ** (p - 1.0)


def eval_phi(x, y, p: float, variant: str = "phi"):
    """Evaluate a majorant candidate at (x, y), vectorized.

    variant 'phi':  gamma_p (|y| - (p*-1)|x|)(|x| + |y|)^(p-1) everywhere.
    variant 'phi0': |y|^p - (p*-1)^p |x|^p where that is <= 0 (i.e.
                    |y| <= (p*-1)|x|), the 'phi' expression elsewhere.
    variant 'fp':   same split as 'phi0' but restricted to x, y >= 0.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ps = p_star(p)
    if variant == "fp":
        if np.any(x < 0) or np.any(y < 0):
            raise ValueError("fp variant requires x, y >= 0")
    ax, ay = np.abs(x), np.abs(y)
    phi = gamma_p(p) * (ay - (ps - 1.0) * ax) * (ax + ay) ** (p - 1.0)
    if variant == "phi":
        return phi
    if variant in ("phi0", "fp"):
        h = ay ** p - (ps - 1.0) ** p * ax ** p
        return np.where(h <= 0, h, phi)
    raise ValueError(f"unknown variant {variant!r}")


@dataclass
class BellmanCandidate:
    """Scalar function of a few real variables with optional derivatives."""

    name: str
    arity: int
    fn: Callable
    grad: Callable | None = None
    hess: Callable | None = None
    domain: Callable | None = None

    def __call__(self, *args):
        return self.fn(*args)


def power_candidate(alpha: float) -> BellmanCandidate:
    """b(x, y) = x^alpha y^alpha with analytic gradient and Hessian."""

    def fn(x, y):
        return x ** alpha * y ** alpha

    def grad(x, y):
        b = fn(x, y)
        return np.stack([alpha * b / x, alpha * b / y])

    def hess(x, y):
        b = fn(x, y)
        hxx = alpha * (alpha - 1.0) * b / x ** 2
        hyy = alpha * (alpha - 1.0) * b / y ** 2
        hxy = alpha ** 2 * b / (x * y)
        return np.array([[hxx, hxy], [hxy, hyy]])

    return BellmanCandidate(
        name=f"power[{alpha}]", arity=2, fn=fn, grad=grad, hess=hess,
        domain=lambda x, y: (x > 0) & (y > 0),
    )


# ---------------------------------------------------------------------------
# Zigzag concavity and majorization by sampling


@dataclass
class ZigzagReport:
    samples: int
    worst_margin: float       # relative to the stencil scale
    worst_raw: float
    worst_point: tuple[float, float]
    worst_step: float
    worst_variant: int        # +1 for (a, a) steps, -1 for (a, -a)


def _midpoint_margins(fn, x, y, a, sgn):
    c = fn(x, y)
    p1 = fn(x + a, y + sgn * a)
    p2 = fn(x - a, y - sgn * a)
    raw = c - 0.5 * (p1 + p2)
    scale = np.maximum(1.0, np.maximum(np.abs(c), np.maximum(np.abs(p1), np.abs(p2))))
    return raw, raw / scale


def zigzag_check(candidate, samples: int, step: float = 1.0, seed: int = 0,
                 box: float = 5.0) -> ZigzagReport:
    """Sample f(x,y) - (f(x+a, y+-a) + f(x-a, y-+a))/2 at random points.

    For a zigzag concave f both variants are >= 0; the reported margin is
    the minimum over samples, normalized by the stencil magnitude.
    """
    fn = candidate.fn if isinstance(candidate, BellmanCandidate) else candidate
    rng = np.random.default_rng(seed)
    x = rng.uniform(-box, box, samples)
    y = rng.uniform(-box, box, samples)
    a = rng.uniform(0.0, step, samples) + 1e-12
    worst = np.inf
    report = None
    for sgn in (1, -1):
        raw, rel = _midpoint_margins(fn, x, y, a, sgn)
        i = int(np.argmin(rel))
        if rel[i] < worst:
            worst = float(rel[i])
            report = ZigzagReport(
                samples=samples,
                worst_margin=float(rel[i]),
                worst_raw=float(raw[i]),
                worst_point=(float(x[i]), float(y[i])),
                worst_step=float(a[i]),
                worst_variant=sgn,
            )
    return report


def majorant_check(variant: str, p: float, samples: int, seed: int = 0,
                   box: float = 5.0) -> float:
    """Worst (relative) gap of candidate >= |y|^p - (p*-1)^p |x|^p.

    The candidate carries gamma_p, which is exactly the normalization under
    which the majorization holds; the gap vanishes on |y| = (p*-1)|x|.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(-box, box, samples)
    y = rng.uniform(-box, box, samples)
    if variant == "fp":
        x, y = np.abs(x), np.abs(y)
    ps = p_star(p)
    h = np.abs(y) ** p - (ps - 1.0) ** p * np.abs(x) ** p
    val = eval_phi(x, y, p, variant)
    gap = val - h
    scale = np.maximum(1.0, np.maximum(np.abs(val), np.abs(h)))
    return float(np.min(gap / scale))


# ---------------------------------------------------------------------------
# Hessian quadratic-form identities


def _profile_d2(p: float):
    """Scalar profile whose radial lift the quadratic-form display describes.

    p >= 2:   U(X,Y) = (Y - (p-1)X)(X+Y)^(p-1)
    1 < p < 2: U(X,Y) = ((p-1)Y - X)(X+Y)^(p-1)
    (gamma_p dropped, matching the displayed right-hand sides).
    """
    if p >= 2:
        return lambda X, Y: (Y - (p - 1.0) * X) * (X + Y) ** (p - 1.0)
    return lambda X, Y: ((p - 1.0) * Y - X) * (X + Y) ** (p - 1.0)


def hessian_form_identity(x, y, dx, dy, p: float, h: float = 1e-4):
    """Analytic vs finite-difference Hessian form of phi(x,y)=U(|x|,|y|).

    x, y, dx, dy are 2-vectors.  Returns (analytic, numeric); the contract
    is |analytic - numeric| = O(h^2).  For p >= 2 the analytic expression is

      -p(p-2)(X+Y)^(p-1)/Y * |dy_perp|^2 - p(p-1)(X+Y)^(p-2)(|dx|^2-|dy|^2)
      -p(p-1)(p-2) X (X+Y)^(p-3) (h' + k')^2

    with X=|x|, Y=|y|, h'=(dx, x/X), k'=(dy, y/Y).  For 1 < p < 2 the
    analogous identity (for the profile scaled by (p-1)) reads

      -p(2-p)(X+Y)^(p-1)/X * |dx_perp|^2 + p(p-1)(X+Y)^(p-2)(|dy|^2-|dx|^2)
      -p(p-1)(2-p) Y (X+Y)^(p-3) (h' + k')^2 ;

    the sign of the middle term and the factor Y in the last term follow
    from redoing the p >= 2 computation, where the X <-> Y roles swap.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    X = float(np.linalg.norm(x))
    Y = float(np.linalg.norm(y))
    if X < 1e-10 or Y < 1e-10:
        raise ValueError("point too close to the singular locus |x||y| = 0")
    hp = float(dx @ x) / X
    kp = float(dy @ y) / Y
    dx2 = float(dx @ dx)
    dy2 = float(dy @ dy)
    if p >= 2:
        analytic = (
            -p * (p - 2.0) * (X + Y) ** (p - 1.0) / Y * (dy2 - kp ** 2)
            - p * (p - 1.0) * (X + Y) ** (p - 2.0) * (dx2 - dy2)
            - p * (p - 1.0) * (p - 2.0) * X * (X + Y) ** (p - 3.0) * (hp + kp) ** 2
        )
    else:
        analytic = (
            -p * (2.0 - p) * (X + Y) ** (p - 1.0) / X * (dx2 - hp ** 2)
            + p * (p - 1.0) * (X + Y) ** (p - 2.0) * (dy2 - dx2)
            - p * (p - 1.0) * (2.0 - p) * Y * (X + Y) ** (p - 3.0) * (hp + kp) ** 2
        )
    U = _profile_d2(p)
    scale = max(X, Y, 1.0)
    hh = h * scale

    def phi(t):
        return U(np.linalg.norm(x + t * dx), np.linalg.norm(y + t * dy))

    numeric = (phi(hh) - 2.0 * phi(0.0) + phi(-hh)) / hh ** 2
    return float(analytic), float(numeric)


# ---------------------------------------------------------------------------
# The slope-section analysis on [-1, 1]


def _H(s, p):
    cp = (p_star(p) - 1.0) ** p
    return ((1.0 + s) / 2.0) ** p - cp * ((1.0 - s) / 2.0) ** p


def _Hp(s, p):
    cp = (p_star(p) - 1.0) ** p
    return p / 2.0 * (((1.0 + s) / 2.0) ** (p - 1.0) + cp * ((1.0 - s) / 2.0) ** (p - 1.0))


def _Hpp(s, p):
    cp = (p_star(p) - 1.0) ** p
    return p * (p - 1.0) / 4.0 * (
        ((1.0 + s) / 2.0) ** (p - 2.0) - cp * ((1.0 - s) / 2.0) ** (p - 2.0)
    )


def h_section_inequality(p: float, grid: int = 10001) -> float:
    """max over [-1, s_p] of s^2 H'' + (p-1)(-2 s H' + p H), expected <= 0.

    H(s) = ((1+s)/2)^p - (p*-1)^p ((1-s)/2)^p and s_p = (p*-2)/p* is its
    zero; requires p >= 2.
    """
    if p < 2:
        raise ValueError("section inequality is asserted for p >= 2")
    sp = (p_star(p) - 2.0) / p_star(p)
    s = np.linspace(-1.0 + 1e-9, sp, grid)
    expr = s ** 2 * _Hpp(s, p) + (p - 1.0) * (-2.0 * s * _Hp(s, p) + p * _H(s, p))
    return float(np.max(expr))


# ---------------------------------------------------------------------------
# Linear-majorant feasibility (the sharpness mechanism)


@dataclass
class FeasibilityResult:
    feasible: bool
    rho: float | None = None
    a: float | None = None


def linear_majorant_feasibility(
    c: float, p: float, rho_points: int = 512, s_points: int = 4096,
    tol: float = 1e-9,
) -> FeasibilityResult:
    """Search g(s) = a((1+s)/2 - rho (1-s)/2) with a > 0 for

      g >= H_c on [-1, 1]   and   2 s g'(s) - p g(s) >= 0 at s = +-1,

    where H_c(s) = ((1+s)/2)^p - c^p ((1-s)/2)^p.  Feasibility is decided
    on a rho grid (augmented with the corner values p*-1 and c, where the
    constraint set degenerates to a point); for each rho the admissible
    range of a is an exact interval computed from the s grid.  Expected:
    feasible iff c >= p*-1.
    """
    if c < 0 or p <= 1:
        raise ValueError("need c >= 0 and p > 1")
    ps = p_star(p)
    rhos = np.linspace(0.0, 4.0 * ps, rho_points)
    corners = [ps - 1.0, c]
    rhos = np.unique(np.concatenate([rhos, [r for r in corners if 0 <= r <= 4 * ps]]))
    s = np.linspace(-1.0, 1.0, s_points)
    Hc = ((1.0 + s) / 2.0) ** p - c ** p * ((1.0 - s) / 2.0) ** p
    a_cap = 4.0 * gamma_p(p)

    for rho in rhos:
        # endpoint slope conditions for linear g: a(1+rho-p) >= 0 and
        # a(rho(p-1)-1) >= 0; a > 0, so both reduce to constraints on rho
        if (1.0 + rho - p) < -tol or (rho * (p - 1.0) - 1.0) < -tol:
            continue
        g1 = (1.0 + s) / 2.0 - rho * (1.0 - s) / 2.0
        srho = (rho - 1.0) / (rho + 1.0)  # zero of g1
        pos = g1 > tol
        neg = g1 < -tol
        a_min = 0.0
        if np.any(pos & (Hc > 0)):
            a_min = float(np.max(Hc[pos] / g1[pos]))
        a_max = np.inf
        if np.any(neg):
            ratios = Hc[neg] / g1[neg]
            up = ratios[Hc[neg] < 0]
            if up.size:
                a_max = float(np.min(up))
            if np.any(Hc[neg] > tol):
                continue  # H_c > 0 where g < 0: hopeless for this rho
        # at the zero of g1 the majorization needs H_c(s_rho) <= 0 exactly
        if -1.0 <= srho <= 1.0:
            h_at = ((1.0 + srho) / 2.0) ** p - c ** p * ((1.0 - srho) / 2.0) ** p
            if h_at > tol:
                continue
        a_min = max(a_min, tol)
        a_hi = min(a_max, a_cap)
        if a_min <= a_hi * (1 + 1e-12):
            a = min(max(gamma_p(p), a_min), a_hi)
            return FeasibilityResult(True, float(rho), float(a))
    return FeasibilityResult(False)


def feasibility_transition(p: float, c_lo: float = 0.0, c_hi: float | None = None,
                           tol: float = 1e-4) -> float:
    """Bisect the smallest c for which the linear majorant family is
    feasible; should land within grid tolerance of p*-1."""
    if c_hi is None:
        c_hi = 4.0 * (p_star(p) - 1.0)
    if linear_majorant_feasibility(c_lo, p).feasible:
        return c_lo
    if not linear_majorant_feasibility(c_hi, p).feasible:
        raise RuntimeError("no feasible c in the bracket")
    while c_hi - c_lo > tol:
        mid = 0.5 * (c_lo + c_hi)
        if linear_majorant_feasibility(mid, p).feasible:
            c_hi = mid
        else:
            c_lo = mid
    return 0.5 * (c_lo + c_hi)


# ---------------------------------------------------------------------------
# tau(p) and the interpolation sweep


def tau_closed_form(p: float) -> float:
    """(Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2+1)))^(1/p)."""
    if p <= 0:
        raise ValueError("p must be positive")
    return float(np.exp((gammaln((p + 1.0) / 2.0) - gammaln(p / 2.0 + 1.0)
                         - 0.5 * np.log(np.pi)) / p))


def tau(p: float) -> float:
    """((1/2pi) int_0^{2pi} |cos|^p)^(1/p) by adaptive quadrature.

    Cross-checked against the closed Gamma form; a disagreement beyond
    1e-9 raises, since it would mean the quadrature silently failed.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    avg, _ = integrate.quad(lambda t: np.cos(t) ** p, 0.0, np.pi / 2.0,
                            epsabs=1e-14, epsrel=1e-13)
    val = (2.0 / np.pi * avg) ** (1.0 / p)
    ref = tau_closed_form(p)
    if abs(val - ref) > 1e-9 * max(1.0, ref):
        raise ArithmeticError(f"tau({p}): quadrature {val} vs closed form {ref}")
    return val


def interpolation_constant(q: float) -> float:
    """min over p in [q, 1e3] of [sqrt(2)(p-1)/tau(p)]^theta, where
    theta = (1/2 - 1/q)/(1/2 - 1/p) interpolates between exponent 2
    (norm 1) and exponent p.

    Requires q >= 2 (use duality q <-> q/(q-1) upstream for q < 2).
    """
    if q < 2:
        raise ValueError("q must be >= 2; pass the dual exponent instead")
    if q == 2:
        return 1.0

    def log_value(p):
        theta = (0.5 - 1.0 / q) / (0.5 - 1.0 / p)
        return theta * np.log(np.sqrt(2.0) * (p - 1.0) / tau_closed_form(p))

    res = minimize_scalar(log_value, bounds=(q, 1e3), method="bounded",
                          options={"xatol": 1e-10})
    return float(np.exp(min(res.fun, log_value(q))))


# ---------------------------------------------------------------------------
# The power candidate's Hessian bound


@dataclass
class BqReport:
    worst_margin: float
    range_ok: bool


def bq_hessian_check(Q: float, alpha: float, samples: int, seed: int = 0) -> BqReport:
    """Verify -d^2(x^a y^a) >= a(1-2a) x^a y^a ((dx/x)^2 + (dy/y)^2) on
    random points of {x, y > 0, 1 < xy <= Q} and random directions, using
    the analytic Hessian; also check 0 <= x^a y^a <= Q^a there."""
    if Q <= 1:
        raise ValueError("Q must exceed 1")
    if not 0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    rng = np.random.default_rng(seed)
    prod = rng.uniform(1.0 + 1e-9, Q, samples)
    skew = rng.uniform(-3.0, 3.0, samples)
    x = np.sqrt(prod) * np.exp(skew)
    y = np.sqrt(prod) * np.exp(-skew)
    theta = rng.uniform(0.0, 2.0 * np.pi, samples)
    dx, dy = np.cos(theta), np.sin(theta)

    b = x ** alpha * y ** alpha
    u, v = dx / x, dy / y
    neg_form = b * (alpha * (1.0 - alpha) * (u ** 2 + v ** 2) - 2.0 * alpha ** 2 * u * v)
    required = alpha * (1.0 - 2.0 * alpha) * b * (u ** 2 + v ** 2)
    margin = float(np.min(neg_form - required))
    range_ok = bool(np.all((0.0 <= b) & (b <= Q ** alpha * (1 + 1e-12))))
    return BqReport(worst_margin=margin, range_ok=range_ok)


# ---------------------------------------------------------------------------
# The exponential-obstacle candidate on the strip


@dataclass
class JNReport:
    delta: float
    fd_max_eig: float
    fd_max_det_rel: float
    obstacle_min_gap: float
    analytic_max_eig: float
    analytic_max_det_rel: float
    clipped: bool
    variants: list


def _strip_candidate(eps: float, q: float):
    """phi_{eps,q}(x1,x2) = q (1 - r)/(1 - sqrt(eps)) e^{x1 + r - sqrt(eps)}
    with r = sqrt(eps - x2); its drift-modified matrix

        M = [[v_11 - 2 v_2, v_12], [v_12, v_22]]

    is singular with nonpositive trace, by the closed-form derivatives
    v_11 = v, v_2 = v_12 = C e^r / 2, v_22 = -C e^r/(4r),
    v_11 - 2 v_2 = -C r e^r, where C = q e^{x1 - sqrt(eps)}/(1 - sqrt(eps)).
    """

    def value(x1, x2):
        r = np.sqrt(eps - x2)
        return q * (1.0 - r) / (1.0 - np.sqrt(eps)) * np.exp(x1 + r - np.sqrt(eps))

    def matrix(x1, x2):
        r = np.sqrt(eps - x2)
        C = q * np.exp(x1 - np.sqrt(eps)) / (1.0 - np.sqrt(eps))
        er = np.exp(r)
        m11 = -C * r * er
        m12 = C * er / 2.0
        m22 = -C * er / (4.0 * r)
        return m11, m12, m22

    return value, matrix


def _matrix_stats(m11, m12, m22):
    """Largest eigenvalue and relative determinant of [[m11,m12],[m12,m22]],
    vectorized; 'relative' means det / (squared Frobenius scale)."""
    tr = m11 + m22
    det = m11 * m22 - m12 ** 2
    disc = np.sqrt(np.maximum((m11 - m22) ** 2 + 4.0 * m12 ** 2, 0.0))
    lam_max = 0.5 * (tr + disc)
    scale = m11 ** 2 + 2.0 * m12 ** 2 + m22 ** 2
    return lam_max, det / np.maximum(scale, 1e-300)


def _fd_matrix(value, x1, x2, h):
    v2 = (value(x1, x2 + h) - value(x1, x2 - h)) / (2.0 * h)
    v11 = (value(x1 + h, x2) - 2.0 * value(x1, x2) + value(x1 - h, x2)) / h ** 2
    v22 = (value(x1, x2 + h) - 2.0 * value(x1, x2) + value(x1, x2 - h)) / h ** 2
    v12 = (value(x1 + h, x2 + h) - value(x1 + h, x2 - h)
           - value(x1 - h, x2 + h) + value(x1 - h, x2 - h)) / (4.0 * h ** 2)
    return v11 - 2.0 * v2, v12, v22


def jn_bellman_check(
    delta: float, grid: tuple[int, int] = (200, 200), x1_range: float = 1.0,
    fd_step: float = 1e-4, fd_clearance: float = 0.05,
    variants: tuple = ((None, 1.0), (0.6, 1.0), (0.9, 2.0)),
) -> JNReport:
    """Check the strip candidate v_delta on {|x1| <= L, 0 <= x2 < delta}:

    (a) drift-modified matrix negative semidefinite, (b) its determinant
    zero, (c) v_delta >= e^{x1}, and (a)+(b) for the phi_{eps,q} family.

    (a), (b) are certified with the closed-form derivatives on the nearly
    full strip; the finite-difference cross-check runs only where
    delta - x2 >= fd_clearance (clipped, since the x2-derivatives blow up
    like (delta - x2)^{-1/2} at the branch point and centered differences
    at step 1e-4 lose the stated tolerances there).
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    n1, n2 = grid
    x1 = np.linspace(-x1_range, x1_range, n1)
    x2_full = np.linspace(0.0, delta - 1e-9 * max(delta, 1.0), n2)
    X1, X2 = np.meshgrid(x1, x2_full, indexing="ij")

    value, matrix = _strip_candidate(delta, 1.0)
    m11, m12, m22 = matrix(X1, X2)
    lam, detrel = _matrix_stats(m11, m12, m22)
    analytic_max_eig = float(np.max(lam))
    analytic_max_det = float(np.max(np.abs(detrel)))
    obstacle = float(np.min(value(X1, X2) - np.exp(X1)))

    clipped = delta - fd_clearance <= x2_full[-1]
    x2_fd = x2_full[x2_full <= delta - fd_clearance]
    fd_eig = -np.inf
    fd_det = 0.0
    if x2_fd.size:
        X1f, X2f = np.meshgrid(x1, x2_fd, indexing="ij")
        f11, f12, f22 = _fd_matrix(value, X1f, X2f, fd_step)
        lam_f, det_f = _matrix_stats(f11, f12, f22)
        fd_eig = float(np.max(lam_f))
        fd_det = float(np.max(np.abs(det_f)))

    out_variants = []
    for eps, q in variants:
        eps = delta if eps is None else eps
        if not delta <= eps < 1 or q < 1:
            raise ValueError("variants need delta <= eps < 1 and q >= 1")
        _, mat = _strip_candidate(eps, q)
        v11, v12, v22 = mat(X1, X2)
        lam_v, det_v = _matrix_stats(v11, v12, v22)
        out_variants.append(
            {"eps": eps, "q": q,
             "max_eig": float(np.max(lam_v)),
             "max_det_rel": float(np.max(np.abs(det_v)))}
        )

    return JNReport(
        delta=delta,
        fd_max_eig=fd_eig,
        fd_max_det_rel=fd_det,
        obstacle_min_gap=obstacle,
        analytic_max_eig=analytic_max_eig,
        analytic_max_det_rel=analytic_max_det,
        clipped=clipped,
        variants=out_variants,
    )
