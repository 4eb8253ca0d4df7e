"""Height estimates from sampled Hilbert functions.

Normalized values ``(n+1)! * H(D) / D^(n+1)`` tend to the normalized height
as ``D`` grows, with no known rate.  Estimates are therefore intervals that
combine the bracket width at the last degree with the residual of a
``c + beta/D`` fit; the fit is a pragmatic correction term, not a claimed
error model.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hilbert import DEFAULT_KS, HilbertSample, hilbert_sample
from .ideal import InsufficientSamples, VarietyInput, infer_dimension
from .metrics import MetricParameter, QuadratureBudgetExceeded, metric_label
from .oracles import OracleValue
from .place_norms import DEFAULT_MINOR_BUDGET, MinorBudgetExceeded

__all__ = [
    "SampleFailure",
    "Estimate",
    "NormalizedSample",
    "HeightReport",
    "sample_range",
    "normalize",
    "extrapolate",
    "interval_distance",
    "estimate_height",
]


@dataclass(frozen=True)
class SampleFailure:
    D: int
    reason: str

    def to_dict(self) -> dict:
        return {"D": self.D, "error": self.reason}


def _one(args):
    V, D, ks, mode, budget, tol = args
    try:
        return hilbert_sample(V, D, ks, mode, budget, tol)
    except (MinorBudgetExceeded, QuadratureBudgetExceeded):
        # refusals are a configuration problem, not a per-degree failure
        raise
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        return SampleFailure(D, f"{type(exc).__name__}: {exc}")


def sample_range(
    V: VarietyInput,
    Ds: Sequence[int],
    ks: Sequence[MetricParameter] = DEFAULT_KS,
    mode: str = "auto",
    budget: int = DEFAULT_MINOR_BUDGET,
    tol: float = 1e-8,
    jobs: int = 1,
) -> list[HilbertSample | SampleFailure]:
    """One sample per degree; a failing degree yields a :class:`SampleFailure`."""
    Ds = list(Ds)
    if any(D < 1 for D in Ds) or any(b <= a for a, b in zip(Ds, Ds[1:])):
        raise ValueError("degrees must be strictly increasing and >= 1")
    tasks = [(V, D, tuple(ks), mode, budget, tol) for D in Ds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_one, tasks))
    return [_one(t) for t in tasks]


@dataclass(frozen=True)
class NormalizedSample:
    D: int
    lo: float
    hi: float
    harith: dict[str, float] = field(default_factory=dict)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {"D": self.D, "lo": self.lo, "hi": self.hi, "mid": self.mid, "harith": dict(self.harith)}


def normalize(samples: Sequence[HilbertSample], n: int) -> list[NormalizedSample]:
    f = math.factorial(n + 1)
    out = []
    for s in samples:
        scale = f / s.D ** (n + 1)
        out.append(
            NormalizedSample(
                s.D,
                scale * s.hnorm_lo,
                scale * s.hnorm_hi,
                {k: scale * v for k, v in s.harith.items()},
            )
        )
    return out


@dataclass(frozen=True)
class Estimate:
    lo: float
    hi: float
    fitted: float
    model: str
    notice: str = ""

    def to_dict(self) -> dict:
        d = {"lo": self.lo, "hi": self.hi, "fitted": self.fitted, "model": self.model}
        if self.notice:
            d["notice"] = self.notice
        return d


def extrapolate(values: Sequence[NormalizedSample], model: str = "fit") -> Estimate:
    """Estimate the limit of normalized samples.

    ``last`` returns the final bracket.  ``fit`` least-squares fits
    ``c + beta/D`` to the midpoints and returns ``c`` with a half-width equal
    to the larger of the fit's standard error and half the final bracket
    width, so the interval is never narrower than the last bracket.
    """
    if not values:
        raise ValueError("no samples to extrapolate")
    last = values[-1]
    if model == "last":
        return Estimate(last.lo, last.hi, last.mid, "last")
    if model != "fit":
        raise ValueError("model must be 'last' or 'fit'")
    if len(values) < 2:
        return Estimate(last.lo, last.hi, last.mid, "last", "fewer than 2 samples; fell back to last value")
    D = np.array([v.D for v in values], dtype=float)
    y = np.array([v.mid for v in values])
    A = np.column_stack([np.ones_like(D), 1.0 / D])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    c = float(coef[0])
    resid = y - A @ coef
    dof = len(values) - 2
    se = 0.0
    if dof > 0:
        s2 = float(resid @ resid) / dof
        cov = s2 * np.linalg.inv(A.T @ A)
        se = math.sqrt(max(cov[0, 0], 0.0))
    half = max(se, 0.5 * last.width)
    return Estimate(c - half, c + half, c, "fit")


def interval_distance(lo: float, hi: float, x: float) -> float:
    if x < lo:
        return lo - x
    if x > hi:
        return x - hi
    return 0.0


@dataclass
class HeightReport:
    variety: str
    n: int
    samples: list[HilbertSample]
    failures: list[SampleFailure]
    normalized: list[NormalizedSample]
    estimate: Estimate
    oracle: OracleValue | None = None
    diagnostics: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def oracle_gap(self) -> float | None:
        if self.oracle is None:
            return None
        return abs(self.estimate.fitted - self.oracle.value)

    def to_dict(self) -> dict:
        oracle = None
        if self.oracle is not None:
            oracle = self.oracle.to_dict()
            oracle["gap"] = self.oracle_gap()
        return {
            "config": dict(self.config),
            "variety": self.variety,
            "n": self.n,
            "samples": [s.to_dict() for s in self.samples],
            "failures": [f.to_dict() for f in self.failures],
            "normalized": [v.to_dict() for v in self.normalized],
            "estimate": self.estimate.to_dict(),
            "oracle": oracle,
            "diagnostics": self.diagnostics,
        }


def _non_increasing(xs: Sequence[float], slop: float = 1e-12) -> bool:
    return all(b <= a + slop for a, b in zip(xs, xs[1:]))


def estimate_height(
    V: VarietyInput,
    Ds: Sequence[int],
    ks: Sequence[MetricParameter] = DEFAULT_KS,
    mode: str = "auto",
    model: str = "fit",
    oracle: OracleValue | None = None,
    budget: int = DEFAULT_MINOR_BUDGET,
    tol: float = 1e-8,
    jobs: int = 1,
) -> HeightReport:
    results = sample_range(V, Ds, ks, mode, budget, tol, jobs)
    samples = [r for r in results if isinstance(r, HilbertSample)]
    failures = [r for r in results if isinstance(r, SampleFailure)]
    if not samples:
        raise RuntimeError("every degree failed: " + "; ".join(f.reason for f in failures))

    pairs = [(s.D, s.h_geom) for s in samples]
    try:
        inferred = infer_dimension(pairs)
    except InsufficientSamples:
        inferred = None
    if V.dimension is not None:
        if inferred is not None and inferred != V.dimension:
            raise ValueError(f"declared dimension {V.dimension} contradicts inferred dimension {inferred}")
        n = V.dimension
    elif inferred is None:
        raise InsufficientSamples(
            "insufficient samples to infer the dimension; declare it or sample more degrees"
        )
    else:
        n = inferred

    normalized = normalize(samples, n)
    est = extrapolate(normalized, model)
    f = math.factorial(n + 1)
    widths = [v.width for v in normalized]
    diag: dict = {
        "successive_differences": [b.mid - a.mid for a, b in zip(normalized, normalized[1:])],
        "normalized_width": widths,
        "width_decreasing": _non_increasing(widths),
        "slack_normalized": [f * s.arch.slack / s.D ** (n + 1) for s in samples],
        "methods": [s.method for s in samples],
        "dimension_source": "declared" if V.dimension is not None else "inferred",
        "rate_notice": "no convergence rate is known; the c + beta/D fit is a pragmatic correction",
    }
    if oracle is not None:
        dist = [interval_distance(v.lo, v.hi, oracle.value) for v in normalized]
        diag["oracle_distance"] = dist
        diag["oracle_distance_non_increasing"] = _non_increasing(dist)
        gaps = [abs(v.mid - oracle.value) for v in normalized]
        diag["midpoint_gap"] = gaps
        diag["midpoint_gap_non_increasing"] = _non_increasing(gaps)
    return HeightReport(
        variety=V.name,
        n=n,
        samples=samples,
        failures=failures,
        normalized=normalized,
        estimate=est,
        oracle=oracle,
        diagnostics=diag,
        config={
            "degrees": list(Ds),
            "ks": [metric_label(k) for k in ks],
            "mode": mode,
            "model": model,
            "budget": budget,
            "tol": tol,
        },
    )
