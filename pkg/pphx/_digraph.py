"""
pphx._digraph
=============
Angle-based ε-grid digraph.

Every horizontal or vertical adjacency A–B (A the lesser-index endpoint)
becomes one directed edge: A → B when the field vector turns
counterclockwise from A to B, B → A when it turns clockwise.  The weight is
the absolute turning angle.

rotation_angle(v1, v2)   → signed angle in (−π, 0) ∪ (0, π)
build_grid_digraph(field) → GridDigraph
classify_square(dg, s)   → SquareShape
line_coherence(dg)       → LineCoherence
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from ._errors import DegenerateAngle
from ._field import PARALLEL_TOL
from ._log import dbg, c, C
from .models import (
    Direction,
    GridDigraph,
    GridField,
    LineCoherence,
    SquareRef,
    SquareShape,
)


# ─── Angles ───────────────────────────────────────────────────────────────────

def rotation_angle(v1, v2, tol: float = PARALLEL_TOL) -> float:
    """
    Signed angle that rotates *v1* onto the direction of *v2*.

    Positive for counterclockwise turns.  Raises DegenerateAngle when either
    vector is zero or the two are parallel / anti-parallel within *tol*.
    """
    x1, y1 = float(v1[0]), float(v1[1])
    x2, y2 = float(v2[0]), float(v2[1])
    if (x1 == 0 and y1 == 0) or (x2 == 0 and y2 == 0):
        raise DegenerateAngle("zero vector has no direction")
    angle = math.atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2)
    if abs(angle) <= tol or math.pi - abs(angle) <= tol:
        raise DegenerateAngle(f"vectors {(x1, y1)} and {(x2, y2)} are (anti-)parallel")
    return angle


# ─── Digraph construction ─────────────────────────────────────────────────────

def _slot_angles(field: GridField) -> tuple[np.ndarray, np.ndarray]:
    """Signed angle per slot and the product of the endpoint norms."""
    g = field.grid()                                   # (rows, cols, 2)
    a_h, b_h = g[:, :-1, :].reshape(-1, 2), g[:, 1:, :].reshape(-1, 2)
    a_v, b_v = g[:-1, :, :].reshape(-1, 2), g[1:, :, :].reshape(-1, 2)
    a = np.vstack([a_h, a_v])
    b = np.vstack([b_h, b_v])
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    return np.arctan2(cross, dot), np.hypot(a[:, 0], a[:, 1]) * np.hypot(b[:, 0], b[:, 1])


def build_grid_digraph(field: GridField, tol: float = PARALLEL_TOL) -> GridDigraph:
    """
    Convert a sampled field into its angle-based grid digraph.

    Raises DegenerateAngle naming the first offending adjacency if a vector
    is zero or two neighbours are (anti-)parallel.
    """
    spec = field.spec
    angles, norm_products = _slot_angles(field)
    bad = (norm_products == 0) | (np.abs(angles) <= tol) | (math.pi - np.abs(angles) <= tol)
    if bad.any():
        slot = int(np.flatnonzero(bad)[0])
        a, b = spec.slot_endpoints(slot)
        raise DegenerateAngle("degenerate rotation angle", where=f"adjacency {a}–{b} (slot {slot})")

    dg = GridDigraph(spec, angles > 0, np.abs(angles))
    dbg(c(f"  ▸ digraph: {dg.n_edges} edges, weights in "
          f"[{dg.weights.min():.4g}, {dg.weights.max():.4g}]", C.DIM))
    return dg


# ─── Square shapes ────────────────────────────────────────────────────────────

def _ccw_flags(dg: GridDigraph, s: SquareRef) -> tuple[bool, bool, bool, bool]:
    """For (bottom, right, top, left): does the edge run counterclockwise around s?"""
    bottom, right, top, left = dg.square_edges(s)
    return (
        bool(dg.forward[bottom]),
        bool(dg.forward[right]),
        not dg.forward[top],
        not dg.forward[left],
    )


def classify_square(dg: GridDigraph, s: SquareRef) -> SquareShape:
    """
    Orientation class of the four edges around *s*, up to rotation and
    reflection of the square.  Only BOUNDARY_SQUARE (two directed 2-paths
    between opposite corners) has trivial one-dimensional path homology.
    """
    if not dg.spec.has_square(s):
        raise IndexError(f"{s} outside {dg.spec}")
    flags = _ccw_flags(dg, s)
    k = sum(flags)
    if k in (0, 4):
        return SquareShape.COHERENT_CYCLE
    if k in (1, 3):
        return SquareShape.THREE_ONE
    if flags[0] == flags[2]:
        return SquareShape.ALTERNATING_SOURCE_SINK
    return SquareShape.BOUNDARY_SQUARE


def count_shapes(dg: GridDigraph) -> Counter[SquareShape]:
    return Counter(classify_square(dg, s) for s in dg.spec.squares())


# ─── Line coherence ───────────────────────────────────────────────────────────

def line_coherence(dg: GridDigraph) -> LineCoherence:
    """
    Shared direction of the edges on every horizontal row and vertical
    column, ``None`` for lines whose edges disagree.
    """
    m, n = dg.spec.cols, dg.spec.rows

    def shared(slots) -> Direction | None:
        dirs = {dg.direction(k) for k in slots}
        return dirs.pop() if len(dirs) == 1 else None

    rows = tuple(shared(dg.horiz_slot(i, j) for i in range(m - 1)) for j in range(n))
    cols = tuple(shared(dg.vert_slot(i, j) for j in range(n - 1)) for i in range(m))
    return LineCoherence(rows=rows, columns=cols)
