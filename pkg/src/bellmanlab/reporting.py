"""Machine-readable run reports.

Every check emits a CheckResult carrying a stable identifier from the
registry below, the measured value, the target and tolerance that decide
pass/fail, and a kind flag ('bound', 'match', 'report').  'report' entries
never fail a run.  A RunReport serializes deterministically: the canonical
payload (config echo + entries) is byte-stable for a fixed (config, seed);
wall time and version are emitted outside the canonical section.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field, asdict

__all__ = ["CheckResult", "RunReport", "CHECK_REGISTRY", "registry_describe"]

# stable identifiers for every quantity the laboratory certifies or reports
CHECK_REGISTRY = {
    "dyadic.parseval": "Haar coefficients satisfy the energy identity",
    "dyadic.transform-contraction": "sign flips never increase the mean-zero L2 norm",
    "dyadic.transform-lp-bound": "transform Lp ratio stays under p*-1",
    "dyadic.weighted-haar-bounds": "weighted Haar coefficients obey the two bounds",
    "dyadic.weighted-haar-gram": "weighted Haar system is orthonormal in L2(w)",
    "dyadic.carleson-intensity-slope": "intensity grows no faster than char^alpha",
    "dyadic.embedding-1": "level-set embedding holds with constant 2",
    "dyadic.embedding-2": "weighted embedding holds with the working constant",
    "dyadic.buckley-bounded": "flat-weight square sums stay bounded in depth",
    "dyadic.a-infinity-vs-a2": "exponential characteristic below the product one",
    "dyadic.weighted-mt-envelope": "weighted transform ratio under the envelope",
    "bellman.zigzag": "diagonal midpoint concavity of the majorant",
    "bellman.majorant": "the majorant dominates the power difference",
    "bellman.hessian-identity": "analytic vs finite-difference quadratic form",
    "bellman.hessian-order": "finite differences converge at order two",
    "bellman.section-inequality": "slope-section expression stays nonpositive",
    "bellman.feasibility-transition": "linear majorants appear exactly at p*-1",
    "bellman.tau-quadrature": "angular average matches the Gamma closed form",
    "bellman.interp-sweep": "interpolated norm chain stays under 1.7 per unit",
    "bellman.power-hessian": "power candidate Hessian lower bound",
    "bellman.strip-determinant": "strip candidate matrix is degenerate",
    "bellman.strip-eigenvalue": "strip candidate matrix is negative semidefinite",
    "bellman.strip-obstacle": "strip candidate dominates the exponential",
    "planar.fft-roundtrip": "transform round trip at machine precision",
    "planar.ab-isometry": "mean-zero L2 isometry of the transform",
    "planar.ab-decomposition": "transform equals its three-term Riesz form",
    "planar.dbar-to-d": "the transform maps dbar-data to d-data",
    "planar.heat-identity": "time-integrated gradient form matches the operator",
    "planar.heat-identity-monotone": "the representation gap shrinks under refinement",
    "planar.ap-two-sided": "heat and disc characteristics stay comparable",
    "planar.ascent-monotone": "ascent never loses ground across iterations",
    "planar.ascent-ratio": "achieved lower bound for the operator norm",
    "laminate.mass-baricenter": "ray pair integrates to a centered unit mass",
    "laminate.closed-vs-quad": "power-test ray integrals match quadrature",
    "laminate.jensen": "Jensen inequality against the bi-concave battery",
    "laminate.ratio-limit": "ratio root approaches p-1 as the tail flattens",
    "laminate.ratio-monotone": "ratio sweep is monotone in the tail parameter",
    "laminate.reflection": "reflecting the measure swaps the two tests",
    "stoch.variance": "ensemble variance tracks the clock",
    "stoch.riemann-gap": "left and right sums disagree by the quadratic variation",
    "stoch.isometry": "integral second moment equals the time integral",
    "stoch.product": "product of integrals averages the integrand product",
    "stoch.terminal-order": "terminal gap decays at strong order one half",
    "stoch.conformality": "transform rows stay orthogonal with equal norms",
    "stoch.subordination": "transform rows stay dominated pathwise",
    "stoch.conditioning": "binned conditional means match the spectral oracle",
    "stoch.plain-constant": "moment ratio under p*-1",
    "stoch.conformal-constant": "moment ratio under sqrt(p(p-1)/2)",
    "qc.beltrami": "sampled dilatation matches (K-1)/(K+1)",
    "qc.distortion-slope": "area distortion exponent equals 1/K",
    "qc.sobolev-boundary": "integrability threshold sits at 1 + k",
    "qc.weight-monotone": "Jacobian weight characteristic grows with p",
    "suite.reproducible": "identical seeds give identical canonical reports",
}


def registry_describe(check_id: str) -> str:
    return CHECK_REGISTRY[check_id]


@dataclass
class CheckResult:
    check_id: str
    value: float
    target: float | None = None
    tolerance: float | None = None
    kind: str = "bound"       # 'bound': value <= target (+tolerance);
                              # 'match': |value - target| <= tolerance;
                              # 'report': informational only
    detail: str = ""

    def __post_init__(self):
        if self.check_id not in CHECK_REGISTRY:
            raise KeyError(f"unregistered check id {self.check_id!r}")
        if self.kind not in ("bound", "match", "report"):
            raise ValueError("kind must be bound, match or report")
        self.value = float(self.value)
        self.target = None if self.target is None else float(self.target)
        self.tolerance = None if self.tolerance is None else float(self.tolerance)

    @property
    def passed(self) -> bool:
        if self.kind == "report":
            return True
        tol = self.tolerance or 0.0
        if self.kind == "bound":
            return bool(self.value <= self.target + tol)
        return bool(abs(self.value - self.target) <= tol)


@dataclass
class RunReport:
    config: dict
    entries: list = field(default_factory=list)
    wall_time: float = 0.0
    version: str = "0.1.0"

    def add(self, result: CheckResult):
        self.entries.append(result)

    def extend(self, results):
        self.entries.extend(results)

    def sort(self):
        self.entries.sort(key=lambda e: e.check_id)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def pass_pattern(self) -> list:
        return [(e.check_id, e.passed) for e in sorted(self.entries, key=lambda x: x.check_id)]

    def canonical_payload(self) -> dict:
        """Everything that must be byte-stable for a fixed (config, seed);
        wall time and version live outside."""
        return {
            "config": {k: self.config[k] for k in sorted(self.config)},
            "entries": [
                {**asdict(e), "passed": e.passed, "description": CHECK_REGISTRY[e.check_id]}
                for e in sorted(self.entries, key=lambda x: (x.check_id, x.detail))
            ],
        }

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_payload(), sort_keys=True, allow_nan=True)

    def to_json(self) -> str:
        return json.dumps(
            {**self.canonical_payload(),
             "wall_time_s": self.wall_time, "version": self.version},
            sort_keys=True, indent=2, allow_nan=True)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["check_id", "value", "target", "tolerance", "kind",
                         "passed", "detail"])
        for e in sorted(self.entries, key=lambda x: (x.check_id, x.detail)):
            writer.writerow([e.check_id, repr(e.value), repr(e.target),
                             repr(e.tolerance), e.kind, int(e.passed), e.detail])
        return out.getvalue()


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
