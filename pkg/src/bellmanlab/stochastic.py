"""Monte-Carlo stochastic calculus on the Brownian filtration.

Heat extensions here solve d/dt u = (1/2) Laplacian u, so u(t, .) is the
law-of-W_t smoothing and u(T - t, W_t) is a martingale.  The planar module
uses the kernel with variance t/2 per axis instead; the two conventions
match under t_planar = 2 t_here (applied once, in the oracle comparison).

Path generation is counter-based: each batch of paths draws from a
Philox generator keyed by (seed, batch index), so ensembles are
reproducible and partitionable across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .planar import GridField, conj_ab_transform

__all__ = [
    "BrownianDriver",
    "riemann_gap_demo",
    "ito_integral",
    "PathView",
    "GaussianMix",
    "heat_martingale",
    "ab_star",
    "MartingalePath",
    "transform_residuals",
    "ab_by_conditioning",
    "ConditioningResult",
    "subordination_constants_mc",
]


@dataclass
class BrownianDriver:
    """Generator of d-dimensional Brownian increments on [0, T]."""

    dimension: int
    horizon: float
    steps: int
    seed: int = 0

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    def increments(self, paths: int, batch: int = 0) -> np.ndarray:
        """(paths, steps, dimension) Gaussian increments, std sqrt(dt)."""
        rng = np.random.Generator(np.random.Philox(key=[self.seed, batch]))
        return rng.normal(0.0, np.sqrt(self.dt),
                          size=(paths, self.steps, self.dimension))

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.steps + 1)


class PathView:
    """Read-only view of one driver coordinate up to the current step;
    asking for the future raises (adaptedness guard)."""

    def __init__(self, times: np.ndarray, values: np.ndarray, upto: int):
        self._times = times
        self._values = values
        self._upto = upto

    def value(self, step: int) -> np.ndarray:
        if step > self._upto:
            raise ValueError("adaptedness violation: future increment requested")
        return self._values[:, step]

    @property
    def current(self) -> np.ndarray:
        return self._values[:, self._upto]

    @property
    def time(self) -> float:
        return float(self._times[self._upto])


def riemann_gap_demo(a: float, b: float, steps: int, paths: int, seed: int = 0):
    """Means of S1 = sum w(t_{i-1}) dw_i and S2 = sum w(t_i) dw_i over [a, b]
    with 3-sigma confidence intervals, and the second moment of S1.

    S1 is the adapted (left-point) sum with mean 0; S2 differs by the
    accumulated squared increments, mean b - a.  Returns a dict with point
    estimates and half-widths.
    """
    if b < a:
        raise ValueError("need a <= b")
    if b == a:
        return {"ES1": 0.0, "ES1_ci": 0.0, "ES2": 0.0, "ES2_ci": 0.0,
                "ES1_sq": 0.0, "ES1_sq_ci": 0.0, "gap": 0.0}
    dt = (b - a) / steps
    s1 = np.zeros(paths)
    s2 = np.zeros(paths)
    chunk = max(1, min(paths, 20_000))
    done = 0
    batch = 0
    while done < paths:
        m = min(chunk, paths - done)
        rng = np.random.Generator(np.random.Philox(key=[seed, batch]))
        w = rng.normal(0.0, np.sqrt(a), size=m) if a > 0 else np.zeros(m)
        acc1 = np.zeros(m)
        acc2 = np.zeros(m)
        for _ in range(steps):
            dw = rng.normal(0.0, np.sqrt(dt), size=m)
            acc1 += w * dw
            w = w + dw
            acc2 += w * dw
        s1[done:done + m] = acc1
        s2[done:done + m] = acc2
        done += m
        batch += 1
    half = lambda x: 3.0 * float(np.std(x)) / np.sqrt(paths)
    return {
        "ES1": float(np.mean(s1)), "ES1_ci": half(s1),
        "ES2": float(np.mean(s2)), "ES2_ci": half(s2),
        "ES1_sq": float(np.mean(s1 ** 2)), "ES1_sq_ci": half(s1 ** 2),
        "gap": float(np.mean(s2 - s1)),
    }


def ito_integral(process, driver: BrownianDriver, paths: int, batch: int = 0):
    """Samples of sum_i f(t_i) (w(t_{i+1}) - w(t_i)) for a 1-d driver.

    `process(view)` is called once per step with a PathView exposing the
    path strictly up to the current node, which enforces adaptedness; it
    returns the integrand value per path.
    """
    if driver.dimension != 1:
        raise ValueError("ito_integral expects a 1-d driver")
    inc = driver.increments(paths, batch)[:, :, 0]
    w = np.concatenate([np.zeros((paths, 1)), np.cumsum(inc, axis=1)], axis=1)
    times = driver.times()
    total = np.zeros(paths)
    for i in range(driver.steps):
        fval = process(PathView(times, w, i))
        total += np.asarray(fval) * inc[:, i]
    return total


# ---------------------------------------------------------------------------
# Heat surfaces with closed forms


@dataclass
class GaussianMix:
    """Complex mixture of isotropic Gaussian bumps on the plane.

    Closed-form heat extension under d/dt - (1/2) Lap: a bump with width
    sigma^2 becomes amplitude * sigma^2/(sigma^2+t) * exp(-|x-c|^2 / (2(sigma^2+t))).
    """

    amplitudes: np.ndarray     # complex, shape (m,)
    centers: np.ndarray        # shape (m, 2)
    sigma2: np.ndarray         # shape (m,)

    @classmethod
    def single(cls, amplitude=1.0, center=(0.0, 0.0), sigma2=1.0):
        return cls(np.array([amplitude], dtype=complex),
                   np.array([center], dtype=float),
                   np.array([sigma2], dtype=float))

    @classmethod
    def random(cls, rng, bumps: int = 3, box: float = 1.5):
        amp = rng.normal(size=bumps) + 1j * rng.normal(size=bumps)
        cen = rng.uniform(-box, box, size=(bumps, 2))
        s2 = rng.uniform(0.3, 1.5, size=bumps)
        return cls(amp, cen, s2)

    def value(self, t: float, x: np.ndarray) -> np.ndarray:
        """u^f(t, x); x has shape (..., 2)."""
        out = 0.0
        for a, c, s2 in zip(self.amplitudes, self.centers, self.sigma2):
            s = s2 + t
            r2 = (x[..., 0] - c[0]) ** 2 + (x[..., 1] - c[1]) ** 2
            out = out + a * (s2 / s) * np.exp(-r2 / (2.0 * s))
        return out

    def gradient(self, t: float, x: np.ndarray) -> np.ndarray:
        """(d1 u, d2 u) stacked on the last axis."""
        gx = 0.0
        gy = 0.0
        for a, c, s2 in zip(self.amplitudes, self.centers, self.sigma2):
            s = s2 + t
            r2 = (x[..., 0] - c[0]) ** 2 + (x[..., 1] - c[1]) ** 2
            u = a * (s2 / s) * np.exp(-r2 / (2.0 * s))
            gx = gx + u * (-(x[..., 0] - c[0]) / s)
            gy = gy + u * (-(x[..., 1] - c[1]) / s)
        return np.stack([gx, gy], axis=-1)

    def dbar(self, t: float, x: np.ndarray) -> np.ndarray:
        g = self.gradient(t, x)
        return 0.5 * (g[..., 0] + 1j * g[..., 1])

    def on_grid(self, n: int, box: float) -> GridField:
        xs = (np.arange(n) - n // 2) * box / n
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        pts = np.stack([X, Y], axis=-1)
        return GridField(box, self.value(0.0, pts))


@dataclass
class HoloPoly:
    """f(z) = z^m as a heat surface: harmonic components, so the heat
    extension is the function itself and dbar u vanishes identically."""

    m: int = 2

    def value(self, t: float, x: np.ndarray) -> np.ndarray:
        z = x[..., 0] + 1j * x[..., 1]
        return z ** self.m

    def gradient(self, t: float, x: np.ndarray) -> np.ndarray:
        z = x[..., 0] + 1j * x[..., 1]
        d = self.m * z ** (self.m - 1)
        return np.stack([d, 1j * d], axis=-1)

    def dbar(self, t: float, x: np.ndarray) -> np.ndarray:
        z = x[..., 0] + 1j * x[..., 1]
        return np.zeros_like(z)


@dataclass
class MartingalePath:
    """Discretized martingale with its instantaneous transform rows."""

    times: np.ndarray           # (steps+1,)
    values: np.ndarray          # complex, (paths, steps+1)
    h_rows: np.ndarray | None = None   # (paths, steps, 2, 2): rows H1, H2
    k_rows: np.ndarray | None = None

    @property
    def terminal(self) -> np.ndarray:
        return self.values[:, -1]


def _simulate(surface: GaussianMix, T: float, driver: BrownianDriver,
              paths: int, batch: int = 0, keep_rows: bool = False,
              matrix: np.ndarray | None = None):
    """Run X(t) = u(T,0) + sum grad u . dW and, if a 2x2 complex matrix is
    given, Y(t) = sum dW . (matrix grad u).  Returns (X path, Y path)."""
    if driver.dimension != 2:
        raise ValueError("planar martingales need a 2-d driver")
    inc = driver.increments(paths, batch)
    steps = driver.steps
    times = driver.times() * (T / driver.horizon)
    dtimes = np.diff(times)
    W = np.zeros((paths, 2))
    X = np.empty((paths, steps + 1), dtype=complex)
    X[:, 0] = surface.value(T, np.zeros((1, 2)))[0]
    Y = np.zeros((paths, steps + 1), dtype=complex) if matrix is not None else None
    hr = np.empty((paths, steps, 2, 2)) if keep_rows else None
    kr = np.empty((paths, steps, 2, 2)) if keep_rows and matrix is not None else None
    scale = np.sqrt(dtimes / driver.dt)
    for i in range(steps):
        grad = surface.gradient(T - times[i], W)     # (paths, 2) complex
        dW = inc[:, i, :] * scale[i]
        X[:, i + 1] = X[:, i] + grad[:, 0] * dW[:, 0] + grad[:, 1] * dW[:, 1]
        if matrix is not None:
            mg = np.stack([
                matrix[0, 0] * grad[:, 0] + matrix[0, 1] * grad[:, 1],
                matrix[1, 0] * grad[:, 0] + matrix[1, 1] * grad[:, 1],
            ], axis=-1)
            Y[:, i + 1] = Y[:, i] + mg[:, 0] * dW[:, 0] + mg[:, 1] * dW[:, 1]
            if keep_rows:
                kr[:, i, 0, 0] = mg[:, 0].real
                kr[:, i, 0, 1] = mg[:, 0].imag
                kr[:, i, 1, 0] = mg[:, 1].real
                kr[:, i, 1, 1] = mg[:, 1].imag
        if keep_rows:
            hr[:, i, 0, 0] = grad[:, 0].real
            hr[:, i, 0, 1] = grad[:, 0].imag
            hr[:, i, 1, 0] = grad[:, 1].real
            hr[:, i, 1, 1] = grad[:, 1].imag
        W += dW
    return times, X, Y, hr, kr, W


A_STAR = np.array([[1.0, 1.0j], [1.0j, -1.0]])


def heat_martingale(surface: GaussianMix, T: float, driver: BrownianDriver,
                    paths: int, batch: int = 0,
                    keep_rows: bool = False) -> MartingalePath:
    """X(t) = u(T, 0) + sum_i grad u(T - t_i, W_i) . dW_i; the terminal
    value approaches f(W_T) at strong order 1/2 in the step size."""
    times, X, _, hr, _, _ = _simulate(surface, T, driver, paths, batch,
                                      keep_rows=keep_rows)
    return MartingalePath(times=times, values=X, h_rows=hr)


def ab_star(surface: GaussianMix, T: float, driver: BrownianDriver,
            paths: int, batch: int = 0,
            keep_rows: bool = False) -> MartingalePath:
    """Y(t) = sum_i dW_i . A grad u(T - t_i, W_i) with A = [[1, i], [i, -1]];
    equivalently the increments are (dW_1 + i dW_2) * 2 dbar u."""
    times, _, Y, _, kr, _ = _simulate(surface, T, driver, paths, batch,
                                      keep_rows=keep_rows, matrix=A_STAR)
    return MartingalePath(times=times, values=Y, k_rows=kr)


def terminal_gap_sweep(surface, T: float, steps_list, paths: int,
                       seed: int = 0):
    """RMS of |X(T) - f(W_T)| across a ladder of step counts, all ladder
    levels driven by aggregated copies of the same finest increments (so
    the sweep isolates the time-discretization error).  Expected decay is
    order 1/2 in dt."""
    steps_list = sorted(int(s) for s in steps_list)
    finest = steps_list[-1]
    for s in steps_list:
        if finest % s:
            raise ValueError("step counts must divide the finest one")
    inc = BrownianDriver(2, T, finest, seed=seed).increments(paths)
    w_end = np.sum(inc, axis=1)
    target = surface.value(0.0, w_end)
    out = []
    for s in steps_list:
        k = finest // s
        coarse = inc.reshape(paths, s, k, 2).sum(axis=2)
        dt = T / s
        W = np.zeros((paths, 2))
        X = np.full(paths, surface.value(T, np.zeros((1, 2)))[0], dtype=complex)
        for i in range(s):
            grad = surface.gradient(T - i * dt, W)
            X += grad[:, 0] * coarse[:, i, 0] + grad[:, 1] * coarse[:, i, 1]
            W += coarse[:, i]
        rms = float(np.sqrt(np.mean(np.abs(X - target) ** 2)))
        out.append((dt, rms))
    return out


def transform_residuals(surface: GaussianMix, T: float, driver: BrownianDriver,
                        paths: int, batch: int = 0):
    """Pathwise conformality and subordination residuals of the K rows:

        max |K1 . K2|, max | |K1| - |K2| |,
        max(|K1|^2 + |K2|^2 - 4(|H1|^2 + |H2|^2))  (should be <= 0).
    """
    _, _, _, hr, kr, _ = _simulate(surface, T, driver, paths, batch,
                                   keep_rows=True, matrix=A_STAR)
    k1, k2 = kr[:, :, 0, :], kr[:, :, 1, :]
    h1, h2 = hr[:, :, 0, :], hr[:, :, 1, :]
    dot = np.abs(np.sum(k1 * k2, axis=-1))
    n1 = np.sqrt(np.sum(k1 ** 2, axis=-1))
    n2 = np.sqrt(np.sum(k2 ** 2, axis=-1))
    ksum = np.sum(k1 ** 2 + k2 ** 2, axis=-1)
    hsum = np.sum(h1 ** 2 + h2 ** 2, axis=-1)
    return {
        "max_orthogonality": float(np.max(dot)),
        "max_norm_mismatch": float(np.max(np.abs(n1 - n2))),
        "max_subordination_excess": float(np.max(ksum - 4.0 * hsum)),
    }


# ---------------------------------------------------------------------------
# Conditional-expectation representation of the transform


@dataclass
class ConditioningResult:
    centers: np.ndarray        # (bins,) per-axis bin centers
    estimate: np.ndarray       # (bins, bins) complex conditional means
    stderr: np.ndarray         # (bins, bins) per-bin standard errors
    counts: np.ndarray         # (bins, bins)
    oracle: np.ndarray         # (bins, bins) complex FFT values
    min_count: int = 100

    @property
    def populated(self) -> np.ndarray:
        return self.counts >= self.min_count

    def agreement_fraction(self, n_sigma: float = 3.0, disc_tol: float = 0.0):
        pop = self.populated
        err = np.abs(self.estimate - self.oracle)
        tol = n_sigma * self.stderr + disc_tol * np.abs(self.oracle)
        return float(np.mean(err[pop] <= tol[pop])) if pop.any() else float("nan")


def ab_by_conditioning(surface: GaussianMix, T: float, paths: int,
                       bins: int = 24, box: float = 6.0, steps: int = 320,
                       seed: int = 0, oracle_n: int = 512,
                       oracle_box: float = 24.0,
                       batch_size: int = 250_000) -> ConditioningResult:
    """Estimate the transform by conditioning: bin W_T on a bins x bins
    grid over [-box/2, box/2)^2 and average Y(T) per bin.

    The matrix-A martingale represents the conjugate-chirality multiplier
    (k1 + i k2)^2/|k|^2, so the oracle column is conj_ab_transform of the
    surface sampled on a large periodic grid.  Bin means are the
    self-normalized estimator (the Gaussian terminal density cancels in
    the conditional mean).  T should dominate the squared support radius;
    underpopulated bins are flagged through `counts`, never averaged into
    the agreement test.
    """
    lo = -box / 2.0
    width = box / bins
    cnt = np.zeros(bins * bins)
    s1 = np.zeros(bins * bins, dtype=complex)
    s2 = np.zeros(bins * bins)
    dt = T / steps
    done = 0
    batch = 0
    while done < paths:
        m = min(batch_size, paths - done)
        rng = np.random.Generator(np.random.Philox(key=[seed, batch]))
        W = np.zeros((m, 2))
        Y = np.zeros(m, dtype=complex)
        for i in range(steps):
            db = surface.dbar(T - i * dt, W)
            dW = rng.normal(0.0, np.sqrt(dt), size=(m, 2))
            Y += 2.0 * db * (dW[:, 0] + 1j * dW[:, 1])
            W += dW
        ix = np.floor((W[:, 0] - lo) / width).astype(int)
        iy = np.floor((W[:, 1] - lo) / width).astype(int)
        ok = (ix >= 0) & (ix < bins) & (iy >= 0) & (iy < bins)
        idx = ix[ok] * bins + iy[ok]
        cnt += np.bincount(idx, minlength=bins * bins)
        s1 += (np.bincount(idx, weights=Y[ok].real, minlength=bins * bins)
               + 1j * np.bincount(idx, weights=Y[ok].imag, minlength=bins * bins))
        s2 += np.bincount(idx, weights=np.abs(Y[ok]) ** 2, minlength=bins * bins)
        done += m
        batch += 1
    denom = np.maximum(cnt, 1.0)
    mean = s1 / denom
    var = np.maximum(s2 / denom - np.abs(mean) ** 2, 0.0)
    stderr = np.sqrt(var / denom)

    oracle_field = conj_ab_transform(surface.on_grid(oracle_n, oracle_box))
    xs = (np.arange(oracle_n) - oracle_n // 2) * oracle_box / oracle_n
    centers = lo + (np.arange(bins) + 0.5) * width
    gi = np.searchsorted(xs, centers)
    oracle = oracle_field.values[np.ix_(gi, gi)]

    return ConditioningResult(
        centers=centers,
        estimate=mean.reshape(bins, bins),
        stderr=stderr.reshape(bins, bins),
        counts=cnt.reshape(bins, bins).astype(int),
        oracle=oracle,
    )


# ---------------------------------------------------------------------------
# Subordination constants


def subordination_constants_mc(p: float, trials: int, seed: int = 0,
                               functions: int = 6, T: float = 8.0,
                               steps: int = 200):
    """Observed transform-to-martingale moment ratios against the two
    theoretical ceilings.

    For random test surfaces f: ratio of (E|Y(T)|^p)^(1/p) to
    (E|2 X(T)|^p)^(1/p).  Y = A-star transform is conformal and
    differentially subordinate to 2X, so the plain ceiling is p* - 1 and,
    for p > 2, the conformal ceiling is sqrt(p(p-1)/2).  ratio_plain is
    additionally maximized over random real-matrix transforms B star X
    against the subordinating martingale |B| X.  Returns a dict with the
    max observed ratios and their ceilings.
    """
    rng = np.random.default_rng(seed)
    driver = BrownianDriver(2, T, steps, seed=seed)
    ratio_conf = 0.0
    ratio_plain = 0.0
    for j in range(functions):
        surf = GaussianMix.random(rng, bumps=3)
        times, X, Y, _, _, _ = _simulate(surf, T, driver, trials, batch=j,
                                         matrix=A_STAR)
        num = float(np.mean(np.abs(Y[:, -1]) ** p)) ** (1.0 / p)
        den = float(np.mean(np.abs(2.0 * X[:, -1]) ** p)) ** (1.0 / p)
        if den > 0:
            ratio_conf = max(ratio_conf, num / den)
        # a random real transform matrix, subordination constant = |B|_op
        B = rng.normal(size=(2, 2))
        bnorm = float(np.linalg.svd(B, compute_uv=False)[0])
        _, Xr, Yr, _, _, _ = _simulate(surf, T, driver, trials,
                                       batch=100 + j, matrix=B.astype(complex))
        numr = float(np.mean(np.abs(Yr[:, -1]) ** p)) ** (1.0 / p)
        denr = float(np.mean(np.abs(bnorm * Xr[:, -1]) ** p)) ** (1.0 / p)
        if denr > 0:
            ratio_plain = max(ratio_plain, numr / denr)
    ps = max(p, p / (p - 1.0))
    return {
        "ratio_plain": ratio_plain,
        "plain_ceiling": ps - 1.0,
        "ratio_conformal": ratio_conf,
        "conformal_ceiling": float(np.sqrt(p * (p - 1.0) / 2.0)) if p > 2 else None,
    }
