import numpy as np
import pytest

from listsort import kernels
from listsort.analysis import (
    PredictionRatio,
    compare_prediction,
    predict,
    regime_for_pattern,
    round_sig,
)
from listsort.core import SortReport
from listsort.datagen import generate_values, parse_pattern


def report_for(pattern: str, n: int, capacity=None) -> SortReport:
    vals = generate_values(parse_pattern(pattern), n)
    out_v, out_t, c = kernels.sort_arrays("listsort", vals, capacity=capacity)
    return SortReport(
        algorithm="listsort",
        pattern=pattern,
        n=n,
        seed=0,
        trial=0,
        elapsed_ns=1,
        metrics=kernels.metrics_from_counters(c),
    )


def test_round_sig():
    assert round_sig(4081632.65, 3) == 4080000.0
    assert round_sig(8333.33, 3) == 8330.0
    assert round_sig(0.0) == 0.0
    assert round_sig(-1234.5, 2) == -1200.0


def test_predict_average_case_example():
    pred = predict(100000, 2000, 50)
    assert round_sig(pred.average, 3) == 4.08e6
    assert pred.average == pytest.approx(100000 * 2000 / 49)


def test_predict_best_case_example():
    assert predict(10, 1, 15).best == 10


def test_predict_worst_merging_example():
    pred = predict(1000, 1, 15)
    assert round_sig(pred.worst_merging, 3) == 8.33e3
    assert pred.worst_merging == pytest.approx(1000**2 / (8 * 15))


def test_predict_worst_insertion():
    assert predict(1000, 1, 15).worst_insertion == 15000.0


def test_predict_validates_arguments():
    with pytest.raises(ValueError):
        predict(10, 1, 1)  # L - 1 division needs L >= 2
    with pytest.raises(ValueError):
        predict(10, 0, 15)
    with pytest.raises(ValueError):
        predict(-1, 1, 15)


def test_predict_is_pure():
    assert predict(5000, 700, 15) == predict(5000, 700, 15)


@pytest.mark.parametrize(
    "pattern,regime",
    [("asc", "best"), ("desc", "best"), ("random", "average"),
     ("chunks:64", "average"), ("worst", "worst")],
)
def test_regime_mapping(pattern, regime):
    assert regime_for_pattern(pattern) == regime


def test_regime_rejects_unknown():
    with pytest.raises(ValueError):
        regime_for_pattern("bogo")


def test_best_case_ratio_at_most_two():
    # the two end probes cost at most 2 comparisons per key, so measured
    # comparisons over the best-case predictor n stays in [0, 2]
    for pattern in ("asc", "desc"):
        for n in (100, 1000, 10000):
            rep = report_for(pattern, n)
            pred = predict(n, rep.metrics.runs_created, rep.metrics.capacity_used)
            ratio = compare_prediction(rep, pred)
            assert ratio.regime == "best"
            assert ratio.ratio <= 2.0


def test_best_case_comparisons_exact_shape():
    # ascending pays both probes, descending only the head probe; the
    # first key pays nothing
    for n in (2, 10, 1000):
        asc = report_for("asc", n)
        desc = report_for("desc", n)
        assert asc.metrics.comparisons == 2 * (n - 1)
        assert desc.metrics.comparisons == n - 1


def test_worst_regime_combines_both_predictors():
    rep = report_for("worst", 1000, capacity=15)
    pred = predict(1000, rep.metrics.runs_created, 15)
    ratio = compare_prediction(rep, pred)
    assert ratio.regime == "worst"
    assert ratio.predicted == round_sig(pred.worst_insertion + pred.worst_merging, 3)
    assert np.isfinite(ratio.ratio)
    assert ratio.measured == rep.metrics.comparisons


def test_average_regime_uses_measured_runs():
    rep = report_for("random", 20000)
    m = rep.metrics
    pred = predict(20000, m.runs_created, m.capacity_used)
    ratio = compare_prediction(rep, pred)
    assert ratio.regime == "average"
    assert ratio.ratio == pytest.approx(m.comparisons / pred.average)


def test_worst_pattern_comparisons_grow_quadratically():
    # with capacity pinned, doubling n roughly quadruples the merge work
    counts = {}
    for n in (2000, 4000, 8000):
        counts[n] = report_for("worst", n, capacity=15).metrics.comparisons
    assert 3.0 <= counts[4000] / counts[2000] <= 5.0
    assert 3.0 <= counts[8000] / counts[4000] <= 5.0


def test_prediction_ratio_is_plain_record():
    r = PredictionRatio(regime="best", predicted=10.0, measured=20, ratio=2.0)
    assert r.ratio == 2.0
