"""
tests/test_field_generators_and_validation.py
=============================================
Unit tests for gen_spiral, compose_spirals, sample_field and
validate_assumptions.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from pphx import (
    CenterOnGridPoint,
    compose_spirals,
    gen_spiral,
    sample_field,
    validate_assumptions,
)
from pphx.models import GridField, SpiralParams
from tests.helpers import make_spec, make_spiral, make_random_field


# ─── SpiralParams ─────────────────────────────────────────────────────────────

class TestSpiralParams:

    @pytest.mark.parametrize("kwargs", [
        dict(a=0.0, alpha=1.0, rho=1.0),
        dict(a=1.0, alpha=0.0, rho=1.0),
        dict(a=1.0, alpha=math.pi, rho=1.0),
        dict(a=1.0, alpha=1.0, rho=0.0),
        dict(a=1.0, alpha=1.0, rho=-2.0),
    ])
    def test_invalid_raises(self, kwargs):
        with pytest.raises(ValueError):
            SpiralParams(**kwargs)

    def test_center_coerced_to_float(self):
        assert SpiralParams(a=1, alpha=1.0, rho=1.0, center=(1, 2)).center == (1.0, 2.0)


# ─── gen_spiral ───────────────────────────────────────────────────────────────

class TestGenSpiral:

    def test_quarter_pitch_is_pure_rotation(self):
        spec = make_spec(4, 4, origin=(-1.5, -1.5))
        field = gen_spiral(SpiralParams(a=1, alpha=math.pi / 2, rho=1.0), spec)
        xs, ys = spec.coordinates()
        np.testing.assert_array_equal(field.vectors, np.column_stack([-ys, xs]))

    def test_known_vector(self):
        spec = make_spec(2, 2, origin=(1.0, 0.0))
        field = gen_spiral(SpiralParams(a=1, alpha=math.pi / 4, rho=1.0), spec)
        assert field.vector(0, 0) == pytest.approx([1.0, 1.0])

    def test_positive_a_circulates_counterclockwise(self):
        field = make_spiral(center=(3.3, 4.6), a=1.0)
        assert field.vector(5, 4)[1] > 0       # right of the centre, flowing up
        assert field.vector(1, 5)[1] < 0       # left of the centre, flowing down

    def test_negative_a_reverses_every_vector(self):
        pos = make_spiral(a=2.5)
        neg = make_spiral(a=-0.5)
        np.testing.assert_array_equal(neg.vectors, -pos.vectors)

    def test_centre_on_grid_point_raises(self):
        with pytest.raises(CenterOnGridPoint):
            gen_spiral(SpiralParams(a=1, alpha=1.0, rho=1.0, center=(2.0, 3.0)), make_spec(5, 5))

    def test_centre_outside_grid_allowed(self):
        field = gen_spiral(SpiralParams(a=1, alpha=1.0, rho=1.0, center=(10.5, 10.5)), make_spec(3, 3))
        assert field.vectors.shape == (9, 2)


# ─── compose_spirals ──────────────────────────────────────────────────────────

class TestComposeSpirals:

    def test_single_factor_matches_gen_spiral(self):
        spec = make_spec(6, 5)
        params = SpiralParams(a=1, alpha=1.1, rho=1.0, center=(2.4, 2.7))
        np.testing.assert_array_equal(compose_spirals([params], spec).vectors,
                                      gen_spiral(params, spec).vectors)

    def test_product_of_two(self):
        spec = make_spec(3, 3)
        p1 = SpiralParams(a=1, alpha=math.pi / 2, rho=1.0, center=(0.5, 0.5))
        p2 = SpiralParams(a=1, alpha=math.pi / 2, rho=1.0, center=(1.5, 1.5))
        field = compose_spirals([p1, p2], spec)
        z1 = complex(*gen_spiral(p1, spec).vector(2, 0))
        z2 = complex(*gen_spiral(p2, spec).vector(2, 0))
        assert complex(*field.vector(2, 0)) == pytest.approx(z1 * z2)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            compose_spirals([], make_spec(3, 3))


# ─── sample_field ─────────────────────────────────────────────────────────────

class TestSampleField:

    def test_evaluates_row_major(self):
        spec = make_spec(3, 2, eps=0.5, origin=(1.0, -1.0))
        field = sample_field(lambda x, y: (x, y), spec)
        xs, ys = spec.coordinates()
        np.testing.assert_array_equal(field.vectors, np.column_stack([xs, ys]))


# ─── validate_assumptions ─────────────────────────────────────────────────────

class TestValidateAssumptions:

    def test_constant_field_flags_every_adjacency(self):
        spec = make_spec(3, 3)
        report = validate_assumptions(GridField(spec, np.tile([1.0, 0.0], (9, 1))))
        assert not report.ok
        assert len(report.of_kind("A1")) == spec.n_edges
        assert report.of_kind("A3") == []

    def test_spiral_off_grid_is_clean(self):
        report = validate_assumptions(make_spiral())
        assert report.ok
        assert report.unverifiable == ("A4",)

    def test_random_field_is_clean(self):
        assert validate_assumptions(make_random_field(6, 6, seed=5)).ok

    def test_zero_vector_reported(self):
        spec = make_spec(2, 2)
        field = GridField(spec, [[0, 0], [1, 0], [0, 1], [-1, 1]])
        report = validate_assumptions(field)
        zeros = report.of_kind("A3")
        assert len(zeros) == 1
        assert zeros[0].points == ((0, 0),)
        assert "A4" in report.unverifiable

    def test_anti_parallel_reported(self):
        spec = make_spec(2, 2)
        field = GridField(spec, [[1, 0], [-1, 0], [0, 1], [-0.5, -1]])
        kinds = [v.detail for v in validate_assumptions(field).of_kind("A1")]
        assert kinds == ["anti-parallel"]

    def test_tolerance_widens_detection(self):
        spec = make_spec(2, 2)
        th = [0.0, 1e-6, 1.0, 2.0]
        field = GridField(spec, np.column_stack([np.cos(th), np.sin(th)]))
        assert validate_assumptions(field).ok
        assert len(validate_assumptions(field, tol=1e-5).of_kind("A1")) == 1
