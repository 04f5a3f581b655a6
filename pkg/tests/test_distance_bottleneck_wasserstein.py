"""
tests/test_distance_bottleneck_wasserstein.py
=============================================
Unit tests for bottleneck_distance, wasserstein_distance and
distance_series.  Bottleneck values are checked against an exhaustive
search over partial matchings on small random diagrams.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from pphx import (
    SpecMismatch,
    bottleneck_distance,
    compute_field_diagram,
    distance_series,
    wasserstein_distance,
)
from pphx.models import PersistenceDiagram, PersistencePair
from tests.helpers import make_random_field, make_spiral


def make_pd(*points: tuple[float, float]) -> PersistenceDiagram:
    return PersistenceDiagram(tuple(PersistencePair(b, d, k) for k, (b, d) in enumerate(points)))


def random_pd(rng: np.random.Generator, n: int) -> PersistenceDiagram:
    births = rng.uniform(0, 2, n)
    return make_pd(*((float(b), float(b + rng.uniform(0.01, 1.5))) for b in births))


def brute_bottleneck(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    """Least max-cost over every partial matching, unmatched points going to the diagonal."""
    half = lambda p: (p[1] - p[0]) / 2
    linf = lambda p, q: max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    def search(k: int, used: frozenset[int]) -> float:
        if k == len(a):
            return max((half(b[j]) for j in range(len(b)) if j not in used), default=0.0)
        best = max(half(a[k]), search(k + 1, used))
        for j in range(len(b)):
            if j not in used:
                best = min(best, max(linf(a[k], b[j]), search(k + 1, used | {j})))
        return best

    return search(0, frozenset())


# ─── Bottleneck ───────────────────────────────────────────────────────────────

class TestBottleneck:

    def test_identical_is_zero(self):
        pd = make_pd((0.1, 0.5), (0.2, math.inf), (0.3, 0.35))
        assert bottleneck_distance(pd, pd).value == 0.0

    def test_point_against_empty(self):
        assert bottleneck_distance(make_pd((0.0, 2.0)), make_pd()).value == pytest.approx(1.0)

    def test_essential_shift(self):
        assert bottleneck_distance(make_pd((1.0, math.inf)), make_pd((1.5, math.inf))).value == \
               pytest.approx(0.5)

    def test_unequal_essential_counts(self):
        assert bottleneck_distance(make_pd((1.0, math.inf)), make_pd()).value == math.inf

    def test_both_empty(self):
        assert bottleneck_distance(make_pd(), make_pd()).value == 0.0

    def test_matching_covers_every_point(self):
        a = make_pd((0.0, 1.0), (0.5, 0.6), (1.0, math.inf))
        b = make_pd((0.1, 1.1), (2.0, math.inf))
        matching = bottleneck_distance(a, b).matching
        assert sorted(i for i, _ in matching if i is not None) == [0, 1, 2]
        assert sorted(j for _, j in matching if j is not None) == [0, 1]
        assert (2, 1) in matching

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            a = random_pd(rng, int(rng.integers(0, 7)))
            b = random_pd(rng, int(rng.integers(0, 7)))
            assert bottleneck_distance(a, b).value == pytest.approx(brute_bottleneck(a.points, b.points))

    def test_metric_properties(self):
        rng = np.random.default_rng(100)
        for _ in range(100):
            a, b, c = (random_pd(rng, int(rng.integers(0, 7))) for _ in range(3))
            ab = bottleneck_distance(a, b).value
            assert ab == pytest.approx(bottleneck_distance(b, a).value)
            assert ab <= bottleneck_distance(a, c).value + bottleneck_distance(c, b).value + 1e-12

    def test_scale_equivariance(self):
        rng = np.random.default_rng(7)
        a, b = random_pd(rng, 5), random_pd(rng, 4)
        scaled = lambda pd: make_pd(*((3 * x, 3 * y) for x, y in pd.points))
        assert bottleneck_distance(scaled(a), scaled(b)).value == \
               pytest.approx(3 * bottleneck_distance(a, b).value)


# ─── Wasserstein ──────────────────────────────────────────────────────────────

class TestWasserstein:

    def test_extra_short_bar(self):
        a = make_pd((0.0, 2.0))
        b = make_pd((0.0, 2.0), (1.0, 1.2))
        assert wasserstein_distance(a, b, q=1).value == pytest.approx(0.1)

    def test_identical_is_zero(self):
        pd = make_pd((0.1, 0.5), (0.2, math.inf))
        assert wasserstein_distance(pd, pd, q=2).value == pytest.approx(0.0)

    def test_essential_contribution(self):
        a = make_pd((1.0, math.inf), (2.0, math.inf))
        b = make_pd((1.3, math.inf), (2.4, math.inf))
        assert wasserstein_distance(a, b, q=1).value == pytest.approx(0.7)
        assert wasserstein_distance(a, b, q=2).value == pytest.approx(0.5)

    def test_unequal_essential_counts(self):
        assert wasserstein_distance(make_pd((0.0, math.inf)), make_pd()).value == math.inf

    def test_order_below_one(self):
        with pytest.raises(ValueError):
            wasserstein_distance(make_pd(), make_pd(), q=0.5)

    @pytest.mark.parametrize("seed", range(5))
    def test_bounded_by_bottleneck(self, seed):
        rng = np.random.default_rng(200 + seed)
        a, b = random_pd(rng, 5), random_pd(rng, 5)
        bn = bottleneck_distance(a, b).value
        w16 = wasserstein_distance(a, b, q=16).value
        assert bn - 1e-12 <= w16 <= 10 ** (1 / 16) * bn + 1e-12

    @pytest.mark.parametrize("seed", range(3))
    def test_large_order_approaches_bottleneck(self, seed):
        rng = np.random.default_rng(300 + seed)
        a, b = random_pd(rng, 5), random_pd(rng, 5)
        bn = bottleneck_distance(a, b).value
        assert wasserstein_distance(a, b, q=64).value == pytest.approx(bn, rel=0.05)


# ─── Field diagrams and series ────────────────────────────────────────────────

def drift_then_jump() -> list:
    centers = [(4.40 + 0.02 * k, 4.45 + 0.02 * k) for k in range(5)] + [(7.08, 7.10)]
    return [make_spiral(center=c, cols=10, rows=10) for c in centers]


class TestDistanceSeries:

    def test_constant_sequence(self):
        field = make_spiral()
        assert distance_series([field] * 4) == [(1, 0.0), (2, 0.0), (3, 0.0)]

    def test_empty_and_single(self):
        assert distance_series([]) == []
        assert distance_series([make_spiral()]) == []

    def test_quarter_turn_step_is_zero(self):
        field = make_random_field(6, 6, seed=60)
        assert distance_series([field, field.rotated(math.pi / 2)]) == [(1, 0.0)]

    def test_generic_rotation_step_is_negligible(self):
        field = make_spiral()
        [(step, value)] = distance_series([field, field.rotated(0.3)])
        assert step == 1
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_jump_exceeds_drift(self):
        series = distance_series(drift_then_jump())
        drift = [v for _, v in series[:-1]]
        assert series[-1][1] > float(np.median(drift))

    def test_pool_matches_serial(self):
        fields = drift_then_jump()[:3]
        assert distance_series(fields, pool_size=2) == distance_series(fields)

    def test_spec_mismatch(self):
        with pytest.raises(SpecMismatch):
            distance_series([make_spiral(), make_spiral(cols=9)])

    def test_compute_field_diagram(self):
        pd = compute_field_diagram(make_spiral())
        assert len(pd.essential) == 13
