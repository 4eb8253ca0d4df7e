import math

import pytest

from hilbheight.estimation import (
    NormalizedSample,
    estimate_height,
    extrapolate,
    interval_distance,
    normalize,
    sample_range,
)
from hilbheight.ideal import InsufficientSamples, VarietyInput
from hilbheight.oracles import weil_height_point
from hilbheight.place_norms import MinorBudgetExceeded

from conftest import point


def flat(values):
    return [NormalizedSample(D, v, v) for D, v in values]


class TestExtrapolate:
    def test_two_point_solve(self):
        e = extrapolate(flat([(10, 0.5 + 1 / 10), (20, 0.5 + 1 / 20)]))
        assert e.fitted == pytest.approx(0.5, abs=1e-14)

    def test_constant(self):
        e = extrapolate(flat([(D, math.log(2)) for D in range(1, 8)]))
        assert e.fitted == pytest.approx(math.log(2), abs=1e-15)
        assert e.lo <= math.log(2) <= e.hi

    def test_last(self):
        e = extrapolate([NormalizedSample(1, 0.0, 1.0), NormalizedSample(2, 0.2, 0.4)], "last")
        assert (e.lo, e.hi, e.model) == (0.2, 0.4, "last")

    def test_never_narrower_than_last_bracket(self):
        vals = [NormalizedSample(D, 1 / D, 1 / D + 0.1) for D in (4, 8, 16)]
        e = extrapolate(vals)
        assert e.hi - e.lo >= 0.1 - 1e-15

    def test_single_sample_falls_back(self):
        e = extrapolate(flat([(3, 1.0)]))
        assert e.model == "last" and e.notice

    def test_bad_model(self):
        with pytest.raises(ValueError):
            extrapolate(flat([(1, 1.0)]), "spline")


def test_interval_distance():
    assert interval_distance(0, 1, 0.5) == 0
    assert interval_distance(0, 1, 1.5) == 0.5
    assert interval_distance(0, 1, -2) == 2


@pytest.mark.parametrize("c", [2, 3, 10])
def test_point_family_estimate(c):
    V = point(c)
    rep = estimate_height(V, range(1, 21), oracle=weil_height_point([1, c]))
    assert rep.n == 0
    for v in rep.normalized:
        assert v.lo == v.hi == pytest.approx(math.log(c), abs=1e-12)
    assert rep.estimate.fitted == pytest.approx(math.log(c), abs=1e-12)
    assert rep.oracle_gap() <= 1e-12
    assert rep.diagnostics["dimension_source"] == "inferred"


def test_normalize_uses_dimension(line):
    samples = [s for s in sample_range(line, [2, 4])]
    out = normalize(samples, 1)
    assert out[0].lo == pytest.approx(2 * samples[0].hnorm_lo / 4)


def test_width_decreasing_for_line(line):
    rep = estimate_height(line, [4, 8, 12, 16], mode="bracket")
    widths = rep.diagnostics["normalized_width"]
    assert rep.diagnostics["width_decreasing"]
    assert all(b < a for a, b in zip(widths, widths[1:]))


def test_declared_dimension_conflict():
    V = VarietyInput.from_strings(2, ["x1 - 2*x0"], dimension=1)
    with pytest.raises(ValueError, match="contradicts"):
        estimate_height(V, range(1, 6))


def test_insufficient_samples_without_declared_dimension(point12):
    with pytest.raises(InsufficientSamples):
        estimate_height(point12, [1, 2])
    V = VarietyInput.from_strings(2, ["x1 - 2*x0"], dimension=0)
    assert estimate_height(V, [1, 2]).n == 0


def test_refusal_propagates(line):
    with pytest.raises(MinorBudgetExceeded):
        sample_range(line, [6], mode="exact", budget=10)


def test_degrees_validated(point12):
    with pytest.raises(ValueError):
        sample_range(point12, [3, 2])
    with pytest.raises(ValueError):
        sample_range(point12, [0, 1])


def test_parallel_matches_serial(line):
    a = estimate_height(line, [2, 3, 4, 5], jobs=1).to_dict()
    b = estimate_height(line, [2, 3, 4, 5], jobs=2).to_dict()
    assert a == b
