"""
pphx._field
===========
Field validation and synthetic generators.

validate_assumptions(field)        → ValidationReport
gen_spiral(params, spec)           → GridField   (logarithmic-spiral model)
compose_spirals(params_list, spec) → GridField   (several index +1 zeros)
sample_field(fn, spec)             → GridField   (any closed-form field)
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence

import numpy as np

from ._errors import CenterOnGridPoint
from ._log import dbg, c, C
from .models import GridField, GridSpec, SpiralParams, ValidationReport, Violation

PARALLEL_TOL = 1e-9   # radians


# ─── Validation ───────────────────────────────────────────────────────────────

def _adjacent_pairs(spec: GridSpec):
    """Yield ((i, j), (i', j')) for every horizontal, then vertical adjacency."""
    m, n = spec.cols, spec.rows
    for j in range(n):
        for i in range(m - 1):
            yield (i, j), (i + 1, j)
    for j in range(n - 1):
        for i in range(m):
            yield (i, j), (i, j + 1)


def validate_assumptions(field: GridField, tol: float = PARALLEL_TOL) -> ValidationReport:
    """
    Report every violation of the sampling assumptions.

    A1  adjacent vectors parallel or anti-parallel within *tol* radians
    A3  zero vector at a sample point
    A4  (at most one singularity per square) cannot be checked from the
        samples and is always listed as unverifiable.

    Never raises.
    """
    spec = field.spec
    report = ValidationReport()
    norms = np.hypot(field.vectors[:, 0], field.vectors[:, 1])

    for k in np.flatnonzero(norms == 0):
        report.violations.append(Violation("A3", (spec.unindex(int(k)),), "zero vector"))

    for a, b in _adjacent_pairs(spec):
        ka, kb = spec.index(*a), spec.index(*b)
        if norms[ka] == 0 or norms[kb] == 0:
            continue
        u, v = field.vectors[ka], field.vectors[kb]
        cross = u[0] * v[1] - u[1] * v[0]
        dot = u[0] * v[0] + u[1] * v[1]
        angle = math.atan2(cross, dot)
        if abs(angle) <= tol or math.pi - abs(angle) <= tol:
            kind = "parallel" if abs(angle) <= tol else "anti-parallel"
            report.violations.append(Violation("A1", (a, b), kind))

    dbg(c(f"  ▸ validate: {len(report.violations)} violation(s) on {spec}", C.DIM))
    return report


# ─── Generators ───────────────────────────────────────────────────────────────

def sample_field(fn: Callable[[float, float], tuple[float, float]], spec: GridSpec) -> GridField:
    """Evaluate ``fn(x, y) -> (u, v)`` at every grid point (row-major)."""
    xs, ys = spec.coordinates()
    vectors = [fn(float(x), float(y)) for x, y in zip(xs, ys)]
    return GridField(spec, vectors)


def _spiral_vectors(params: SpiralParams, spec: GridSpec) -> np.ndarray:
    xs, ys = spec.coordinates()
    dx = xs - params.center[0]
    dy = ys - params.center[1]
    hit = np.flatnonzero((dx == 0) & (dy == 0))
    if hit.size:
        i, j = spec.unindex(int(hit[0]))
        raise CenterOnGridPoint(f"spiral centre {params.center} coincides with grid point ({i},{j})")
    cot = math.cos(params.alpha) / math.sin(params.alpha)
    # cos(π/2) is not exactly zero in floating point
    if params.alpha == math.pi / 2:
        cot = 0.0
    u = dx * cot - params.rho * dy
    v = dy * cot + dx / params.rho
    return math.copysign(1.0, params.a) * np.column_stack([u, v])


def gen_spiral(params: SpiralParams, spec: GridSpec) -> GridField:
    """
    Sample the logarithmic-spiral field around ``params.center``.

    Each vector is ``(Δx·cot α − ρ·Δy, Δy·cot α + Δx/ρ)`` with (Δx, Δy) the
    offset of the grid point from the centre.  The sign of *a* selects the
    sense of circulation (negative *a* reverses every vector); its magnitude
    does not enter the closed form.
    """
    field = GridField(spec, _spiral_vectors(params, spec))
    dbg(c(f"  ▸ spiral α={params.alpha:.4g} ρ={params.rho:.4g} "
          f"centre={params.center} on {spec}", C.DIM))
    return field


def compose_spirals(params_list: Sequence[SpiralParams], spec: GridSpec) -> GridField:
    """
    Pointwise complex product of several spiral fields.

    Every factor vanishes only at its own centre, so the product has exactly
    one zero per centre, each of index +1, and no saddles in between.
    """
    if not params_list:
        raise ValueError("compose_spirals needs at least one spiral")
    prod = np.ones(spec.n_points, dtype=complex)
    for params in params_list:
        vec = _spiral_vectors(params, spec)
        prod *= vec[:, 0] + 1j * vec[:, 1]
    return GridField(spec, np.column_stack([prod.real, prod.imag]))
