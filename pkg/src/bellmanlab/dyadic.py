"""Dyadic lattice machinery on [0, 1].

Functions and weights are exact step functions: 2**depth samples, each
constant on a finest-level interval.  All interval averages are then exact
(up to floating point), and every operation below works level by level on
arrays of per-interval averages.

Interval convention: the interval at (level, index) is
[index * 2**-level, (index + 1) * 2**-level); its left half is the child
(level+1, 2*index) and its right half is (level+1, 2*index+1).  The Haar
function h_I is L2(dx)-normalized, negative on the left half and positive
on the right half, so that (f, h_I) = sqrt(|I|)/2 * (<f>_right - <f>_left).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DyadicInterval",
    "DyadicFunction",
    "DyadicWeight",
    "CarlesonSequence",
    "haar_coefficients",
    "haar_synthesis",
    "martingale_transform",
    "constant_signs",
    "random_signs",
    "a2_dyadic",
    "weighted_haar",
    "caral_sequence",
    "carleson_intensity",
    "carleson_embedding_check",
    "buckley_sum",
    "a_infinity_constant",
    "weighted_mt_ratio",
    "power_weight",
    "two_value_weight",
]


@dataclass(frozen=True)
class DyadicInterval:
    """Dyadic subinterval of [0,1]: [index/2^level, (index+1)/2^level)."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.index < 2 ** self.level:
            raise ValueError(f"bad dyadic interval ({self.level}, {self.index})")

    @property
    def length(self) -> float:
        return 2.0 ** (-self.level)

    @property
    def left(self) -> "DyadicInterval":
        return DyadicInterval(self.level + 1, 2 * self.index)

    @property
    def right(self) -> "DyadicInterval":
        return DyadicInterval(self.level + 1, 2 * self.index + 1)


class DyadicFunction:
    """Step function on [0,1] with 2**depth equal-width pieces."""

    def __init__(self, values):
        values = np.asarray(values)
        n = values.size
        depth = int(round(np.log2(n)))
        if 2 ** depth != n:
            raise ValueError("sample count must be a power of two")
        self.values = values.astype(complex if np.iscomplexobj(values) else float)
        self.depth = depth

    @classmethod
    def from_callable(cls, fn, depth: int) -> "DyadicFunction":
        """Sample fn at midpoints of the finest-level intervals."""
        x = (np.arange(2 ** depth) + 0.5) * 2.0 ** (-depth)
        return cls(fn(x))

    def averages(self, level: int) -> np.ndarray:
        """Per-interval averages at the given level (0 <= level <= depth)."""
        if not 0 <= level <= self.depth:
            raise ValueError("level out of range")
        v = self.values
        for _ in range(self.depth - level):
            v = 0.5 * (v[0::2] + v[1::2])
        return v

    def all_averages(self) -> list[np.ndarray]:
        """Averages at every level, index 0 (root) .. depth (samples)."""
        out = [self.values]
        v = self.values
        for _ in range(self.depth):
            v = 0.5 * (v[0::2] + v[1::2])
            out.append(v)
        out.reverse()
        return out

    def average_on(self, interval: DyadicInterval) -> float:
        return self.averages(interval.level)[interval.index]

    @property
    def mean(self):
        return self.values.mean()

    def norm(self, p: float = 2.0, weight: "DyadicWeight | None" = None) -> float:
        """L^p([0,1]) norm; integrals are plain sample means since the grid
        is uniform.  With a weight, the L^p(w dx) norm."""
        a = np.abs(self.values) ** p
        if weight is not None:
            a = a * weight.values
        return float(np.mean(a) ** (1.0 / p))


class DyadicWeight(DyadicFunction):
    """Strictly positive step function; <w>_I <1/w>_I >= 1 for every I."""

    def __init__(self, values):
        super().__init__(values)
        if np.iscomplexobj(self.values) or np.any(self.values <= 0):
            raise ValueError("weight samples must be real and strictly positive")

    def inverse(self) -> "DyadicWeight":
        return DyadicWeight(1.0 / self.values)


def power_weight(a: float, depth: int) -> DyadicWeight:
    """w(x) = |x - 1/2|^a, midpoint-sampled (never hits the zero at 1/2)."""
    x = (np.arange(2 ** depth) + 0.5) * 2.0 ** (-depth)
    return DyadicWeight(np.abs(x - 0.5) ** a)


def two_value_weight(u: float, v: float, depth: int) -> DyadicWeight:
    """w = u on [0, 1/2), v on [1/2, 1), constant below that scale."""
    n = 2 ** depth
    w = np.full(n, float(v))
    w[: n // 2] = u
    return DyadicWeight(w)


# ---------------------------------------------------------------------------
# Haar analysis / synthesis


def haar_coefficients(f: DyadicFunction) -> list[np.ndarray]:
    """Haar coefficients (f, h_I), one array per level 0 .. depth-1.

    Together with the mean these satisfy Parseval:
    sum_I (f,h_I)^2 + <f>^2 = ||f||_2^2.
    """
    if f.depth < 1:
        raise ValueError("need depth >= 1")
    avgs = f.all_averages()
    coeffs = []
    for lev in range(f.depth):
        child = avgs[lev + 1]
        scale = 2.0 ** (-lev / 2.0) / 2.0  # sqrt(|I|)/2
        coeffs.append(scale * (child[1::2] - child[0::2]))
    return coeffs


def haar_synthesis(coeffs: list[np.ndarray], mean=0.0) -> DyadicFunction:
    """Inverse of haar_coefficients (mean supplied separately)."""
    dtype = complex if any(np.iscomplexobj(c) for c in coeffs) else float
    cur = np.array([mean], dtype=dtype)
    for lev, c in enumerate(coeffs):
        step = np.asarray(c) * 2.0 ** (lev / 2.0)  # coefficient times h value
        nxt = np.empty(2 * cur.size, dtype=dtype)
        nxt[0::2] = cur - step
        nxt[1::2] = cur + step
        cur = nxt
    return DyadicFunction(cur)


def constant_signs(depth: int, sign: int = 1) -> list[np.ndarray]:
    return [np.full(2 ** lev, float(sign)) for lev in range(depth)]


def random_signs(depth: int, rng) -> list[np.ndarray]:
    return [rng.choice([-1.0, 1.0], size=2 ** lev) for lev in range(depth)]


def _signs_as_levels(signs, depth: int) -> list[np.ndarray]:
    """Accept per-level arrays or a {DyadicInterval/(level,index): +-1} map."""
    if isinstance(signs, dict):
        out = [np.full(2 ** lev, np.nan) for lev in range(depth)]
        for key, s in signs.items():
            lev, idx = (key.level, key.index) if isinstance(key, DyadicInterval) else key
            out[lev][idx] = s
        return out
    out = [np.asarray(s, dtype=float) for s in signs]
    if len(out) != depth or any(a.size != 2 ** lev for lev, a in enumerate(out)):
        raise ValueError("sign arrays must match the coefficient tree shape")
    return out


def martingale_transform(f: DyadicFunction, signs) -> DyadicFunction:
    """T_sigma f = sum_I sigma(I) (f, h_I) h_I.

    The mean of f is dropped (the result is mean zero).  A sign must be
    supplied for every interval carrying a nonzero coefficient.
    """
    coeffs = haar_coefficients(f)
    sgn = _signs_as_levels(signs, f.depth)
    flipped = []
    for lev, (c, s) in enumerate(zip(coeffs, sgn)):
        missing = np.isnan(s) & (c != 0)
        if np.any(missing):
            idx = int(np.argmax(missing))
            raise ValueError(
                f"missing sign for interval ({lev}, {idx}) with nonzero coefficient"
            )
        flipped.append(np.where(np.isnan(s), 0.0, s) * c)
    return haar_synthesis(flipped, mean=0.0)


# ---------------------------------------------------------------------------
# Weight characteristics


def a2_dyadic(w: DyadicWeight) -> float:
    """sup_I <w>_I <1/w>_I over the finite tree (all levels 0..depth)."""
    wi = w.inverse()
    best = 1.0
    aw, ai = w.all_averages(), wi.all_averages()
    for lev in range(w.depth + 1):
        best = max(best, float(np.max(aw[lev] * ai[lev])))
    return best


def a_infinity_constant(w: DyadicWeight) -> float:
    """sup_J <w>_J exp(-<log w>_J); >= 1 by Jensen."""
    lw = DyadicFunction(np.log(w.values))
    aw, al = w.all_averages(), lw.all_averages()
    best = 1.0
    for lev in range(w.depth + 1):
        best = max(best, float(np.max(aw[lev] * np.exp(-al[lev]))))
    return best


def buckley_sum(w: DyadicWeight, interval: DyadicInterval | None = None) -> float:
    """(1/|I|) sum over dyadic l inside I of (Delta_l w / <w>_l)^2 |l|,
    Delta_l w = <w>_{l_right} - <w>_{l_left}."""
    if interval is None:
        interval = DyadicInterval(0, 0)
    aw = w.all_averages()
    total = 0.0
    for lev in range(interval.level, w.depth):
        lo = interval.index * 2 ** (lev - interval.level)
        hi = (interval.index + 1) * 2 ** (lev - interval.level)
        parent = aw[lev][lo:hi]
        child = aw[lev + 1][2 * lo: 2 * hi]
        delta = child[1::2] - child[0::2]
        total += float(np.sum((delta / parent) ** 2)) * 2.0 ** (-lev)
    return total / interval.length


# ---------------------------------------------------------------------------
# Weighted Haar system


def weighted_haar(w: DyadicWeight, interval: DyadicInterval):
    """Decompose h_I = alpha_I h_I^w + beta_I chi_I / sqrt(|I|).

    h_I^w is two-valued on the halves of I, has zero w-mean and unit
    L2(w) norm.  Solving the 2x2 system gives
    beta = Delta_I w / (2 <w>_I) and alpha = sqrt(<w>_I (1 - beta^2)),
    hence |alpha| <= sqrt(<w>_I) and |beta| <= |Delta_I w| / <w>_I.

    Returns (alpha, beta, h_I^w) with h_I^w a DyadicFunction at w's depth.
    """
    if interval.level >= w.depth:
        raise ValueError("interval has no children at this resolution")
    child = w.averages(interval.level + 1)
    w_left = child[2 * interval.index]
    w_right = child[2 * interval.index + 1]
    if w_left <= 0 or w_right <= 0:
        raise ValueError("degenerate weight: a half of I has no mass")
    w_avg = 0.5 * (w_left + w_right)
    beta = (w_right - w_left) / (2.0 * w_avg)
    alpha = np.sqrt(w_avg * (1.0 - beta ** 2))

    n = 2 ** w.depth
    block = n // 2 ** interval.level
    sq = 2.0 ** (interval.level / 2.0)  # 1/sqrt(|I|)
    hw = np.zeros(n)
    lo = interval.index * block
    hw[lo: lo + block // 2] = (-sq - beta * sq) / alpha
    hw[lo + block // 2: lo + block] = (sq - beta * sq) / alpha
    return float(alpha), float(beta), DyadicFunction(hw)


# ---------------------------------------------------------------------------
# Carleson sequences


class CarlesonSequence:
    """Nonnegative values indexed by dyadic intervals, stored per level."""

    def __init__(self, levels: list[np.ndarray]):
        self.levels = [np.asarray(a, dtype=float) for a in levels]
        for lev, a in enumerate(self.levels):
            if a.size != 2 ** lev:
                raise ValueError("level arrays must have sizes 1, 2, 4, ...")
            if np.any(a < 0):
                raise ValueError("Carleson sequence values must be >= 0")

    @classmethod
    def from_dict(cls, d: dict, depth: int) -> "CarlesonSequence":
        levels = [np.zeros(2 ** lev) for lev in range(depth + 1)]
        for key, val in d.items():
            lev, idx = (key.level, key.index) if isinstance(key, DyadicInterval) else key
            levels[lev][idx] = val
        return cls(levels)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, interval: DyadicInterval) -> float:
        return float(self.levels[interval.level][interval.index])


def caral_sequence(w: DyadicWeight, alpha: float) -> CarlesonSequence:
    """mu_I = (<w>_I <1/w>_I)^alpha (Delta_I w^2/<w>_I^2
    + Delta_I sigma^2/<sigma>_I^2) |I|, with sigma = 1/w.

    Defined for every interval with children; the finest sampled level gets
    zeros (the step function is constant there).
    """
    if not 0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    s = w.inverse()
    aw, asg = w.all_averages(), s.all_averages()
    levels = []
    for lev in range(w.depth):
        pw, ps = aw[lev], asg[lev]
        dw = aw[lev + 1][1::2] - aw[lev + 1][0::2]
        ds = asg[lev + 1][1::2] - asg[lev + 1][0::2]
        mu = (pw * ps) ** alpha * ((dw / pw) ** 2 + (ds / ps) ** 2) * 2.0 ** (-lev)
        levels.append(mu)
    levels.append(np.zeros(2 ** w.depth))
    return CarlesonSequence(levels)


def carleson_intensity(seq: CarlesonSequence) -> float:
    """sup_J (sum over I inside J of seq(I)) / |J|."""
    depth = seq.depth
    subtree = seq.levels[depth].copy()
    best = float(np.max(subtree)) * 2.0 ** depth if depth >= 0 else 0.0
    for lev in range(depth - 1, -1, -1):
        subtree = seq.levels[lev] + subtree[0::2] + subtree[1::2]
        best = max(best, float(np.max(subtree)) * 2.0 ** lev)
    return best


@dataclass
class EmbeddingCheck:
    """Both sides of the two Carleson embedding inequalities (G = F)."""

    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    intensity: float
    c2: float = 4.0

    @property
    def holds1(self) -> bool:
        return self.lhs1 <= self.rhs1 * (1 + 1e-12)

    @property
    def holds2(self) -> bool:
        return self.lhs2 <= self.rhs2 * (1 + 1e-12)


def carleson_embedding_check(
    seq: CarlesonSequence, f: DyadicFunction, w: DyadicWeight, c2: float = 4.0
) -> EmbeddingCheck:
    """Evaluate sum_L (inf_L F) alpha_L vs 2 B int F and
    sum_L (inf_L F)/<w>_L alpha_L vs c2 B int F/w, B = intensity(seq).

    The constant 2 in the first inequality is fixed; c2 defaults to 4 and
    the actual observed ratio can be read off the returned sides.
    """
    if np.any(np.real(f.values) < 0) or np.iscomplexobj(f.values):
        raise ValueError("F must be real and nonnegative")
    depth = min(seq.depth, f.depth)
    if w.depth != f.depth:
        raise ValueError("weight and function depths must match")
    intensity = carleson_intensity(seq)

    mins = [f.values]
    cur = f.values
    for _ in range(f.depth):
        cur = np.minimum(cur[0::2], cur[1::2])
        mins.append(cur)
    mins.reverse()  # mins[lev]

    aw = w.all_averages()
    lhs1 = 0.0
    lhs2 = 0.0
    for lev in range(depth + 1):
        a = seq.levels[lev]
        lhs1 += float(np.sum(mins[lev] * a))
        lhs2 += float(np.sum(mins[lev] / aw[lev] * a))
    int_f = float(np.mean(f.values))
    int_f_over_w = float(np.mean(f.values / w.values))
    return EmbeddingCheck(
        lhs1=lhs1,
        rhs1=2.0 * intensity * int_f,
        lhs2=lhs2,
        rhs2=c2 * intensity * int_f_over_w,
        intensity=intensity,
        c2=c2,
    )


# ---------------------------------------------------------------------------
# Monte-Carlo transform ratio


def weighted_mt_ratio(
    w: DyadicWeight, trials: int, p: float = 2.0, seed: int = 0
) -> float:
    """Max over random (f, sigma) of ||T_sigma f||_Lp(w) / ||f||_Lp(w).

    Trials draw independent Gaussian step functions and sign patterns from
    per-trial child seeds, so the result is reproducible and the trial
    space can be partitioned across workers.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    best = 0.0
    seeds = np.random.SeedSequence(seed).spawn(trials)
    for s in seeds:
        rng = np.random.default_rng(s)
        f = DyadicFunction(rng.standard_normal(2 ** w.depth))
        tf = martingale_transform(f, random_signs(w.depth, rng))
        best = max(best, tf.norm(p, w) / f.norm(p, w))
    return best
