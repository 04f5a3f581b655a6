"""
pphx._singular
==============
Winding numbers and singularity detection.

The index of a closed grid loop is the sum of the signed rotation angles
between consecutive vectors along it, divided by 2π.  Loops are traversed
counterclockwise; unit squares start at their lower-left corner.

Detection walks the essential classes of the diagram in order of birth.
Every edge whose weight equals an essential birth is checked on its one or
two adjacent squares, and each square of index +1 is reported once with a
weighted-centre position estimate.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ._digraph import rotation_angle
from ._errors import SpecMismatch, WindingResidualError
from ._log import dbg, warn, c, C
from .models import (
    GridDigraph,
    GridField,
    PersistenceDiagram,
    SingularityReport,
    SquareRef,
)

RESIDUAL_TOL = 0.25


# ─── Winding numbers ──────────────────────────────────────────────────────────

def loop_winding_number(field: GridField, loop: Sequence[tuple[int, int]]) -> int:
    """
    Index of the closed grid loop *loop* (first vertex not repeated at the end).

    Consecutive vertices must be grid neighbours.  Raises WindingResidualError
    when the angle sum is not within RESIDUAL_TOL turns of an integer and
    DegenerateAngle for zero or (anti-)parallel neighbours.
    """
    pts = list(loop)
    if len(pts) < 3:
        raise ValueError(f"a closed loop needs at least 3 vertices, got {len(pts)}")
    for (ia, ja), (ib, jb) in zip(pts, pts[1:] + pts[:1]):
        if abs(ia - ib) + abs(ja - jb) != 1:
            raise ValueError(f"({ia},{ja}) and ({ib},{jb}) are not grid neighbours")

    vecs = [field.vector(i, j) for i, j in pts]
    total = math.fsum(rotation_angle(u, v) for u, v in zip(vecs, vecs[1:] + vecs[:1]))
    turns = total / (2 * math.pi)
    index = round(turns)
    if abs(turns - index) >= RESIDUAL_TOL:
        raise WindingResidualError(
            f"angle sum {total:.6g} is {turns:.4f} turns around loop starting at {pts[0]}"
        )
    return int(index)


def winding_number(field: GridField, s: SquareRef) -> int:
    """Index of the unit square *s*, corners counterclockwise from the lower-left."""
    if not field.spec.has_square(s):
        raise IndexError(f"{s} outside {field.spec}")
    return loop_winding_number(field, s.corners())


def rectangle_loop(i0: int, j0: int, i1: int, j1: int) -> list[tuple[int, int]]:
    """Counterclockwise boundary of the grid rectangle [i0, i1] × [j0, j1]."""
    bottom = [(i, j0) for i in range(i0, i1)]
    right = [(i1, j) for j in range(j0, j1)]
    top = [(i, j1) for i in range(i1, i0, -1)]
    left = [(i0, j) for j in range(j1, j0, -1)]
    return bottom + right + top + left


def rectangle_winding_number(field: GridField, i0: int, j0: int, i1: int, j1: int) -> int:
    """
    Index of the outer boundary of the block of squares [i0, i1) × [j0, j1).

    Equals the sum of the unit-square indices inside it.
    """
    spec = field.spec
    if not (0 <= i0 < i1 <= spec.cols - 1 and 0 <= j0 < j1 <= spec.rows - 1):
        raise IndexError(f"rectangle [{i0},{i1}) × [{j0},{j1}) outside {spec}")
    return loop_winding_number(field, rectangle_loop(i0, j0, i1, j1))


# ─── Position estimate ────────────────────────────────────────────────────────

def weighted_center(field: GridField, s: SquareRef, dg: GridDigraph) -> tuple[float, float]:
    """Average of the four edge midpoints of *s*, weighted by edge weight."""
    if field.spec != dg.spec:
        raise SpecMismatch(f"field on {field.spec} but digraph on {dg.spec}")
    if not dg.spec.has_square(s):
        raise IndexError(f"{s} outside {dg.spec}")
    slots = dg.square_edges(s)
    w = np.array([dg.weights[k] for k in slots])
    mid = np.array([dg.slot_midpoint(k) for k in slots])
    x, y = (w @ mid) / w.sum()
    return float(x), float(y)


# ─── Detection ────────────────────────────────────────────────────────────────

def locate_singularities(
    field: GridField,
    dg: GridDigraph,
    pd: PersistenceDiagram,
) -> list[SingularityReport]:
    """
    Singular squares of index +1, in order of the essential birth that
    exposed them.

    Squares of index −1 are announced with a warning and left out.
    """
    if field.spec != dg.spec:
        raise SpecMismatch(f"field on {field.spec} but digraph on {dg.spec}")

    reports: list[SingularityReport] = []
    checked: set[SquareRef] = set()
    for birth in sorted({p.birth for p in pd.essential}):
        for slot in np.flatnonzero(dg.weights == birth):
            for s in dg.adjacent_squares(int(slot)):
                if s in checked:
                    continue
                checked.add(s)
                index = winding_number(field, s)
                dbg(c(f"  ▸ slot {int(slot)} (w={birth:.6g}) → {s} index {index:+d}", C.DIM))
                if index == 1:
                    reports.append(SingularityReport(
                        square=s,
                        index=1,
                        center=weighted_center(field, s, dg),
                        trigger_weight=birth,
                        edge_weights=tuple(float(dg.weights[k]) for k in dg.square_edges(s)),
                    ))
                elif index == -1:
                    warn(f"{s} has index −1 (saddle); not reported")
    dbg(c(f"  ▸ {len(reports)} singular square(s) after checking {len(checked)}", C.DIM))
    return reports
