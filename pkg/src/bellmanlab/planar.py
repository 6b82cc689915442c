"""Spectral operators on a periodic planar grid.

Fields live on an N x N grid over the torus [-L/2, L/2)^2 and operators
are Fourier multipliers applied with the FFT.  Frequency convention: a
field is sum_k fhat(k) e^{i k.x} with k = 2 pi / L * integer vector, so
d/dx_j acts as multiplication by i k_j and the Wirtinger derivatives are

    d    = (d_1 - i d_2)/2  <->  (i/2)(k_1 - i k_2),
    dbar = (d_1 + i d_2)/2  <->  (i/2)(k_1 + i k_2).

The transform that maps dbar-derivatives to d-derivatives therefore has
symbol ((k_1 - i k_2)/|k|)^2; its complex conjugate ((k_1 + i k_2)/|k|)^2
is realized by the stochastic-martingale construction and is exposed as
conj_ab_multiplier.  Both are isometries of mean-zero L^2.  The squared
Riesz multipliers are taken with the positive signs k_j^2/|k|^2 (so that
their sum is the identity on mean-zero fields); with that convention the
transform decomposes as R_1^2 - R_2^2 - 2i R_1R_2 and the quadratic-form
representation through heat extensions carries a positive sign.

Singular symbols are set to 0 at the zero frequency: every such operator
acts on the mean-zero part of its input and returns a mean-zero field.

Band edge: symbols are evaluated at the canonical fftfreq representative,
so the Nyquist plane (where +N/2 and -N/2 alias) picks the negative sign.
Symbols odd in a frequency variable (the mixed Riesz product, the
imaginary part of the transform) are therefore not Hermitian on that
plane, and real-structure statements hold on fields without Nyquist
content -- in particular on every smooth, spatially decaying test field
used here.  Multiplier application is exact on band-limited inputs.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import simpson

__all__ = [
    "GridField",
    "SpectralMultiplier",
    "ab_multiplier",
    "conj_ab_multiplier",
    "riesz_sq_multiplier",
    "riesz_mixed_multiplier",
    "apply_multiplier",
    "ab_transform",
    "conj_ab_transform",
    "riesz_sq",
    "riesz_mixed",
    "d_z",
    "d_zbar",
    "heat_extension",
    "Identity113Report",
    "identity_1_13_check",
    "PlanarWeight",
    "DiscSampling",
    "HeatSampling",
    "ap_class",
    "ap_heat",
    "AscentResult",
    "norm_ratio_ascent",
    "write_field",
    "read_field",
    "gaussian_bump",
]


@dataclass
class GridField:
    """N x N complex samples on the torus [-L/2, L/2)^2, row-major in x1."""

    box: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise ValueError("values must be a square 2-d array")
        n = self.values.shape[0]
        if n & (n - 1):
            raise ValueError("grid size must be a power of two")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def cell_area(self) -> float:
        return (self.box / self.n) ** 2

    def mean(self) -> complex:
        return complex(self.values.mean())

    def norm(self, p: float = 2.0) -> float:
        """L^p norm over the box."""
        return float((np.sum(np.abs(self.values) ** p) * self.cell_area) ** (1 / p))

    def integral(self) -> complex:
        return complex(np.sum(self.values) * self.cell_area)


def grid_coordinates(n: int, box: float):
    x = (np.arange(n) - n // 2) * box / n
    return np.meshgrid(x, x, indexing="ij")


def field_from_function(fn, n: int, box: float) -> GridField:
    X, Y = grid_coordinates(n, box)
    return GridField(box, fn(X, Y))


def gaussian_bump(n: int, box: float, sigma: float = 1.0, center=(0.0, 0.0),
                  amplitude: float = 1.0) -> GridField:
    cx, cy = center
    return field_from_function(
        lambda X, Y: amplitude * np.exp(-((X - cx) ** 2 + (Y - cy) ** 2) / (2 * sigma ** 2)),
        n, box)


@lru_cache(maxsize=32)
def _freq_grids(n: int, box: float):
    k = 2.0 * np.pi / box * np.fft.fftfreq(n) * n
    k1, k2 = np.meshgrid(k, k, indexing="ij")
    k1.setflags(write=False)
    k2.setflags(write=False)
    return k1, k2


@dataclass(frozen=True)
class SpectralMultiplier:
    """Fourier multiplier: symbol(k1, k2) plus an explicit zero-mode value."""

    name: str
    symbol: Callable
    zero_mode: complex = 0.0
    bound: float = 1.0

    def array(self, n: int, box: float) -> np.ndarray:
        k1, k2 = _freq_grids(n, box)
        with np.errstate(divide="ignore", invalid="ignore"):
            m = np.asarray(self.symbol(k1, k2), dtype=complex)
        m = m.copy()
        m[0, 0] = self.zero_mode
        return m


def _safe_ratio(num, den):
    out = np.zeros(np.broadcast(num, den).shape, dtype=complex)
    nz = den != 0
    out[nz] = np.asarray(num, dtype=complex)[nz] / den[nz]
    return out


def ab_multiplier() -> SpectralMultiplier:
    """Symbol ((k1 - i k2)^2 / |k|^2: maps dbar-data to d-data."""
    return SpectralMultiplier(
        "ab", lambda k1, k2: _safe_ratio((k1 - 1j * k2) ** 2, k1 ** 2 + k2 ** 2))


def conj_ab_multiplier() -> SpectralMultiplier:
    """Symbol (k1 + i k2)^2 / |k|^2, the conjugate chirality (the one the
    stochastic matrix-transform representation produces)."""
    return SpectralMultiplier(
        "conj_ab", lambda k1, k2: _safe_ratio((k1 + 1j * k2) ** 2, k1 ** 2 + k2 ** 2))


def riesz_sq_multiplier(i: int) -> SpectralMultiplier:
    if i not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    return SpectralMultiplier(
        f"riesz_sq{i}",
        lambda k1, k2: _safe_ratio((k1 if i == 1 else k2) ** 2, k1 ** 2 + k2 ** 2))


def riesz_mixed_multiplier() -> SpectralMultiplier:
    return SpectralMultiplier(
        "riesz_mixed", lambda k1, k2: _safe_ratio(k1 * k2, k1 ** 2 + k2 ** 2))


def riesz_diff_multiplier() -> SpectralMultiplier:
    """R_1^2 - R_2^2 in one multiplier (the real part of the transform)."""
    return SpectralMultiplier(
        "r11-r22", lambda k1, k2: _safe_ratio(k1 ** 2 - k2 ** 2, k1 ** 2 + k2 ** 2))


def apply_multiplier(mult: SpectralMultiplier, f: GridField) -> GridField:
    out = np.fft.ifft2(mult.array(f.n, f.box) * np.fft.fft2(f.values))
    return GridField(f.box, out)


def ab_transform(f: GridField) -> GridField:
    return apply_multiplier(ab_multiplier(), f)


def conj_ab_transform(f: GridField) -> GridField:
    return apply_multiplier(conj_ab_multiplier(), f)


def riesz_sq(i: int, f: GridField) -> GridField:
    return apply_multiplier(riesz_sq_multiplier(i), f)


def riesz_mixed(f: GridField) -> GridField:
    return apply_multiplier(riesz_mixed_multiplier(), f)


def d_z(f: GridField) -> GridField:
    return apply_multiplier(
        SpectralMultiplier("d", lambda k1, k2: 0.5j * (k1 - 1j * k2)), f)


def d_zbar(f: GridField) -> GridField:
    return apply_multiplier(
        SpectralMultiplier("dbar", lambda k1, k2: 0.5j * (k1 + 1j * k2)), f)


def heat_extension(f: GridField, t: float) -> GridField:
    """Heat extension with kernel (pi t)^-1 exp(-|x-y|^2/t), i.e. the
    multiplier exp(-t |k|^2 / 4); t = 0 is the identity."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return GridField(f.box, f.values.copy())
    mult = SpectralMultiplier(
        "heat", lambda k1, k2: np.exp(-t * (k1 ** 2 + k2 ** 2) / 4.0), zero_mode=1.0)
    return apply_multiplier(mult, f)


# ---------------------------------------------------------------------------
# The quadratic-form representation of the squared Riesz transform


@dataclass
class Identity113Report:
    lhs: float
    rhs: float
    gap_rel: float
    tail_fraction: float
    boundary_warning: bool


def identity_1_13_check(phi: GridField, psi: GridField, tmax: float,
                        nt: int = 65) -> Identity113Report:
    """Compare int R_1^2 phi . psi dx against (1/2) * the time-integrated
    product of heat-extended x1-derivatives,

        int R_1^2 phi . psi = (1/2) int_0^inf int d_1 phi(.,t) d_1 psi(.,t) dx dt

    (the prefactor is 1/2 under this module's heat normalization and
    positive squared-Riesz convention).  The t-integral uses Simpson on
    log-spaced nodes over [t_min, tmax], t_min = (L/N)^2, a Simpson head
    on [0, t_min], and an exponential tail fitted on the last nodes.
    """
    if phi.n != psi.n or phi.box != psi.box:
        raise ValueError("fields must share a grid")
    n, box = phi.n, phi.box
    ring = np.concatenate([
        np.abs(phi.values[0, :]), np.abs(phi.values[-1, :]),
        np.abs(psi.values[0, :]), np.abs(psi.values[-1, :]),
        np.abs(phi.values[:, 0]), np.abs(phi.values[:, -1]),
        np.abs(psi.values[:, 0]), np.abs(psi.values[:, -1])])
    scale = max(np.abs(phi.values).max(), np.abs(psi.values).max())
    boundary_warning = bool(np.max(ring) > 1e-12 * scale)

    dA = phi.cell_area
    k1, k2 = _freq_grids(n, box)
    ksq = k1 ** 2 + k2 ** 2
    P = np.fft.fft2(phi.values)
    S = np.fft.fft2(psi.values)
    lhs = float(np.real(np.sum(
        apply_multiplier(riesz_sq_multiplier(1), phi).values * psi.values) * dA))

    def g(t):
        damp = np.exp(-t * ksq / 4.0)
        d1p = np.fft.ifft2(1j * k1 * damp * P)
        d1s = np.fft.ifft2(1j * k1 * damp * S)
        return float(np.real(np.sum(d1p * d1s)) * dA)

    tmin = (box / n) ** 2
    nt |= 1  # Simpson wants an odd count
    s = np.linspace(np.log(tmin), np.log(tmax), nt)
    ts = np.exp(s)
    gs = np.array([g(t) for t in ts])
    body = float(simpson(gs * ts, x=s))
    head = (tmin / 6.0) * (g(0.0) + 4.0 * g(tmin / 2.0) + gs[0])
    ntail = max(5, nt // 8)
    tail = 0.0
    tt, gg = ts[-ntail:], gs[-ntail:]
    if np.all(gg > 0):
        coeffs, *_ = np.linalg.lstsq(
            np.vstack([np.ones_like(tt), -tt]).T, np.log(gg), rcond=None)
        if coeffs[1] > 0:
            tail = float(gs[-1] / coeffs[1])
    total = head + body + tail
    rhs = 0.5 * total
    gap = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    return Identity113Report(
        lhs=lhs, rhs=rhs, gap_rel=gap,
        tail_fraction=tail / total if total else 0.0,
        boundary_warning=boundary_warning)


# ---------------------------------------------------------------------------
# Planar weight characteristics


@dataclass
class PlanarWeight:
    """Positive real field together with the exponent p it is used at."""

    field: GridField
    p: float = 2.0

    def __post_init__(self):
        v = self.field.values
        if np.any(v.real <= 0) or np.any(v.imag != 0):
            raise ValueError("weight must be strictly positive and real")
        if self.p <= 1:
            raise ValueError("p must exceed 1")

    @property
    def values(self) -> np.ndarray:
        return self.field.values.real


@dataclass(frozen=True)
class DiscSampling:
    """Disc centers on every stride-th grid point; dyadic radii
    box/2^j for j = radius_min_level .. radius_max_level."""

    stride: int = 8
    radius_min_level: int = 1
    radius_max_level: int = 5

    def refine(self) -> "DiscSampling":
        return DiscSampling(max(1, self.stride // 2),
                            self.radius_min_level, self.radius_max_level + 1)


@dataclass(frozen=True)
class HeatSampling:
    """Heat-extension times box^2/4^j for j = 0 .. levels, centers on a
    stride-subgrid."""

    stride: int = 4
    levels: int = 8

    def refine(self) -> "HeatSampling":
        return HeatSampling(max(1, self.stride // 2), self.levels + 1)


def _disc_average(values: np.ndarray, box: float, radius: float) -> np.ndarray:
    """Periodic disc averages of `values` around every grid point (FFT
    convolution with the normalized disc indicator)."""
    n = values.shape[0]
    X, Y = grid_coordinates(n, box)
    # indicator centered at the origin of the torus
    mask = (np.roll(np.roll(X, n // 2, 0), n // 2, 1) ** 2
            + np.roll(np.roll(Y, n // 2, 0), n // 2, 1) ** 2) <= radius ** 2
    count = mask.sum()
    if count == 0:
        raise ValueError("radius below grid resolution")
    conv = np.real(np.fft.ifft2(np.fft.fft2(values) * np.fft.fft2(mask)))
    return conv / count


def ap_class(w: PlanarWeight, p: float | None = None,
             sampling: DiscSampling = DiscSampling()) -> float:
    """sup over sampled discs of <w>_B <w^{-1/(p-1)}>_B^{p-1}."""
    p = w.p if p is None else p
    v = w.values
    dual = v ** (-1.0 / (p - 1.0))
    best = 1.0
    s = sampling.stride
    for j in range(sampling.radius_min_level, sampling.radius_max_level + 1):
        r = w.field.box / 2 ** j
        try:
            aw = _disc_average(v, w.field.box, r)
            ad = _disc_average(dual, w.field.box, r)
        except ValueError:
            continue
        char = aw[::s, ::s] * ad[::s, ::s] ** (p - 1.0)
        best = max(best, float(np.max(char)))
    return best


def ap_heat(w: PlanarWeight, p: float | None = None,
            sampling: HeatSampling = HeatSampling()) -> float:
    """sup over sampled (x, t) of w(x,t) (w^{-1/(p-1)}(x,t))^{p-1}, the
    extensions taken with this module's heat kernel."""
    p = w.p if p is None else p
    v = w.values
    dual = v ** (-1.0 / (p - 1.0))
    wf = GridField(w.field.box, v)
    df = GridField(w.field.box, dual)
    best = 1.0
    s = sampling.stride
    for j in range(sampling.levels + 1):
        t = w.field.box ** 2 / 4.0 ** j
        aw = heat_extension(wf, t).values.real
        ad = heat_extension(df, t).values.real
        char = aw[::s, ::s] * ad[::s, ::s] ** (p - 1.0)
        best = max(best, float(np.max(char)))
    return best


# ---------------------------------------------------------------------------
# Lower bounds on multiplier norms by ascent


@dataclass
class AscentResult:
    ratio: float
    witness: GridField
    curve: np.ndarray  # best ratio after each accepted iteration (monotone)


def _pnorm(v: np.ndarray, p: float) -> float:
    return float(np.mean(np.abs(v) ** p) ** (1.0 / p))


def norm_ratio_ascent(op: SpectralMultiplier, p: float, n: int = 256,
                      iters: int = 500, seed: int = 0, box: float = 1.0,
                      p_continuation: bool = True) -> AscentResult:
    """Maximize ||op f||_p / ||f||_p over mean-zero grid fields.

    Nonlinear power iterations with a mixing line search; a step is kept
    only if the ratio increases, so the reported curve is nondecreasing
    and its last value is an achieved ratio, hence a certified lower bound
    for the discretized operator norm.  By default the iteration budget is
    split over a continuation ladder in p starting near 2, which escapes
    the weakest fixed points.
    """
    if p < 2:
        raise ValueError("ascent is set up for p >= 2")
    m = op.array(n, box)
    madj = np.conj(m)
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    f -= f.mean()
    f /= _pnorm(f, p)

    def apply_(mm, v):
        return np.fft.ifft2(mm * np.fft.fft2(v))

    def ratio_of(v, pp):
        return _pnorm(apply_(m, v), pp) / _pnorm(v, pp)

    ladder = [p]
    if p_continuation and p > 2.25:
        ladder = list(np.linspace(2.25, p, max(2, int(2 * (p - 2)) + 2)))
    per_stage = max(10, iters // len(ladder))

    curve = []
    for stage_p in ladder:
        q = stage_p / (stage_p - 1.0)
        r = ratio_of(f, stage_p)
        for _ in range(per_stage):
            g = apply_(m, f)
            u = np.abs(g) ** (stage_p - 2.0) * g
            v = apply_(madj, u)
            cand = np.abs(v) ** (q - 2.0) * v
            cand -= cand.mean()
            nc = _pnorm(cand, stage_p)
            if nc == 0:
                break
            cand /= nc
            rc = ratio_of(cand, stage_p)
            if rc > r:
                f, r = cand, rc
            else:
                accepted = False
                for tmix in (0.5, 0.2, 0.05, 0.01):
                    trial = (1 - tmix) * f + tmix * cand
                    trial -= trial.mean()
                    tn = _pnorm(trial, stage_p)
                    if tn == 0:
                        continue
                    trial /= tn
                    rt = ratio_of(trial, stage_p)
                    if rt > r:
                        f, r, accepted = trial, rt, True
                        break
                if not accepted:
                    break
            if stage_p == ladder[-1]:
                curve.append(r)
    final = ratio_of(f, p)
    curve.append(final)
    return AscentResult(ratio=final, witness=GridField(box, f),
                        curve=np.maximum.accumulate(np.array(curve)))


# ---------------------------------------------------------------------------
# Field files: magic, N, L header then N^2 little-endian (re, im) pairs


_MAGIC = b"BLF1"


def write_field(path, f: GridField) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", f.n))
        fh.write(struct.pack("<d", f.box))
        inter = np.empty((f.n, f.n, 2))
        inter[:, :, 0] = f.values.real
        inter[:, :, 1] = f.values.imag
        fh.write(inter.astype("<f8").tobytes())


def read_field(path) -> GridField:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError("not a field file")
        n = struct.unpack("<I", fh.read(4))[0]
        box = struct.unpack("<d", fh.read(8))[0]
        raw = np.frombuffer(fh.read(16 * n * n), dtype="<f8").reshape(n, n, 2)
        return GridField(box, raw[:, :, 0] + 1j * raw[:, :, 1])
