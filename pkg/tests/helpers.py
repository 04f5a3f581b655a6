"""
tests/helpers.py
================
Fixture builders shared by the test modules.  Pure in-memory, deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from pphx.models import GridDigraph, GridField, GridSpec, SmallDigraph, SpiralParams
from pphx._field import compose_spirals, gen_spiral


def make_spec(cols: int = 8, rows: int = 8, eps: float = 1.0, origin=(0.0, 0.0)) -> GridSpec:
    return GridSpec(origin=origin, spacing=eps, cols=cols, rows=rows)


def make_spiral(
    center=(3.3, 4.6),
    cols: int = 8,
    rows: int = 8,
    alpha: float = math.pi / 3,
    rho: float = 1.0,
    a: float = 1.0,
    eps: float = 1.0,
    origin=(0.0, 0.0),
) -> GridField:
    """Single spiral; the default centre lies strictly inside square (3, 4)."""
    spec = make_spec(cols, rows, eps, origin)
    return gen_spiral(SpiralParams(a=a, alpha=alpha, rho=rho, center=center), spec)


def make_two_spirals() -> tuple[GridField, list[tuple[float, float]]]:
    """Two index +1 zeros in opposite halves of a 12×12 grid, ~8ε apart."""
    centers = [(1.35, 5.6), (9.6, 5.3)]
    spec = make_spec(12, 12)
    params = [SpiralParams(a=1.0, alpha=math.pi / 3, rho=1.0, center=c) for c in centers]
    return compose_spirals(params, spec), centers


def make_angle_field(spec: GridSpec, angles) -> GridField:
    """Unit vectors at the given row-major angles (radians)."""
    th = np.asarray(angles, dtype=float)
    return GridField(spec, np.column_stack([np.cos(th), np.sin(th)]))


def make_random_field(cols: int, rows: int, seed: int) -> GridField:
    """Unit vectors at uniformly random angles, fixed seed."""
    rng = np.random.default_rng(seed)
    return make_angle_field(make_spec(cols, rows), rng.uniform(-math.pi, math.pi, cols * rows))


def make_boundary_square_field() -> GridField:
    """2×2 field whose single square is a boundary square (all edges forward)."""
    return make_angle_field(make_spec(2, 2), [0.0, 0.3, 0.5, 0.9])


def make_translation_field(cols: int = 6, rows: int = 6) -> GridField:
    """Nearly uniform flow to the right, bent just enough to avoid parallel neighbours."""
    spec = make_spec(cols, rows)
    th = [0.05 * i + 0.11 * j for j in range(rows) for i in range(cols)]
    return make_angle_field(spec, th)


def make_square_digraph(forward, weights) -> GridDigraph:
    """
    2×2 digraph; slots are bottom=0, top=1, left=2, right=3.
    """
    return GridDigraph(make_spec(2, 2), forward, weights)


# forward flags (bottom, top, left, right) for each square shape
COHERENT_CCW = [True, False, False, True]
BOUNDARY = [True, True, True, True]
ALTERNATING = [True, False, True, False]
THREE_ONE = [True, False, True, True]


def worked_example_digraph() -> SmallDigraph:
    """Seven vertices a..g; e is isolated."""
    a, b, c, d, e, f, g = range(7)
    return SmallDigraph(7, ((b, a), (c, a), (d, b), (d, c), (d, g), (f, c), (g, f)))


def cycle_digraph(n: int) -> SmallDigraph:
    return SmallDigraph(n, tuple((k, (k + 1) % n) for k in range(n)))
