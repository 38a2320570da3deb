"""Closed-form comparison-count predictors, matched against measured counters.

The predictors take the measured run total T (runs_created) rather than
assuming a distribution, because T depends entirely on how much presorted
structure the input has. Predictions are counts of comparisons:

    best            n                 (single run, no merging)
    average         n * T / (L - 1)
    worst_insertion n * L
    worst_merging   n^2 / (8 * L)

Values are computed exactly; `round_sig` renders them at the 3 significant
figures used for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import SortReport

REGIME_BEST = "best"
REGIME_AVERAGE = "average"
REGIME_WORST = "worst"

_REGIME_BY_PATTERN = {
    "asc": REGIME_BEST,
    "desc": REGIME_BEST,
    "random": REGIME_AVERAGE,
    "chunks": REGIME_AVERAGE,
    "worst": REGIME_WORST,
}


@dataclass(frozen=True)
class Prediction:
    best: float
    average: float
    worst_insertion: float
    worst_merging: float


@dataclass(frozen=True)
class PredictionRatio:
    """Measured comparisons over the predicted count for one regime.

    Carries no judgment; thresholds live with the tests that consume it.
    """

    regime: str
    predicted: float
    measured: int
    ratio: float


def round_sig(x: float, digits: int = 3) -> float:
    """Round to `digits` significant figures."""
    if x == 0:
        return 0.0
    exp = math.floor(math.log10(abs(x)))
    return round(x, digits - 1 - exp)


def predict(n: int, runs_created: int, capacity: int) -> Prediction:
    """Evaluate all four predictors for n elements, T runs, capacity L."""
    if n < 0:
        raise ValueError(f"element count must be non-negative, got {n}")
    if runs_created < 1:
        raise ValueError(f"runs_created must be at least 1, got {runs_created}")
    if capacity < 2:
        raise ValueError(f"capacity must be at least 2, got {capacity}")
    return Prediction(
        best=float(n),
        average=n * runs_created / (capacity - 1),
        worst_insertion=float(n) * capacity,
        worst_merging=n * n / (8.0 * capacity),
    )


def regime_for_pattern(pattern_name: str) -> str:
    kind = pattern_name.split(":", 1)[0]
    try:
        return _REGIME_BY_PATTERN[kind]
    except KeyError:
        raise ValueError(f"no regime defined for pattern {pattern_name!r}") from None


def compare_prediction(report: SortReport, pred: Prediction) -> PredictionRatio:
    """Relate a run-pool sort report to the prediction for its regime.

    best and average compare against their own predictor; the worst regime
    compares against insertion and merging work combined.
    """
    regime = regime_for_pattern(report.pattern)
    if regime == REGIME_BEST:
        predicted = pred.best
    elif regime == REGIME_AVERAGE:
        predicted = pred.average
    else:
        predicted = pred.worst_insertion + pred.worst_merging
    measured = report.metrics.comparisons
    return PredictionRatio(
        regime=regime,
        predicted=round_sig(predicted, 3),
        measured=measured,
        ratio=measured / predicted if predicted else math.inf,
    )
