"""
pphx
====
Public API for PPHx: singularities and singular polygons of planar vector
fields via persistent path homology of angle-based grid digraphs.

Quick start
-----------
    from pphx import GridSpec, SpiralParams, gen_spiral, analyze

    spec  = GridSpec(origin=(-1.125, -1.125), spacing=0.25, cols=10, rows=10)
    field = gen_spiral(SpiralParams(a=1, alpha=1.0472, rho=1.0), spec)

    # ── Whole pipeline ────────────────────────────────────────────────────────
    result = analyze(field)
    print(result)                     # GridField(10×10, …): Dgm₁ …, 1 singularity, 1 polygon(s)
    result.reports[0].center          # weighted-centre estimate of the singularity
    result.polygons[0].loop           # counterclockwise grid loop around it

    # ── Step by step ──────────────────────────────────────────────────────────
    dg      = build_grid_digraph(field)
    pd      = compute_pd1(dg)
    reports = locate_singularities(field, dg, pd)
    poly    = extract_singular_polygon(field, dg, pd, reports[0])

    # ── Change over time ──────────────────────────────────────────────────────
    bottleneck_distance(pd, compute_pd1(build_grid_digraph(field.rotated(0.3))))
    distance_series([f0, f1, f2])     # [(1, d10), (2, d21)]

    # ── Files ─────────────────────────────────────────────────────────────────
    store_field(field, "spiral.csv")
    field2 = load_field("spiral.csv")

Debug
    set_debug(True)          verbose progress on stderr
"""

from __future__ import annotations

from importlib.metadata import version as _pkg_version, PackageNotFoundError as _PNF

try:
    __version__ = _pkg_version("PPHx")
except _PNF:
    __version__ = "0.0.0.dev"

# ── Re-export public dataclasses ──────────────────────────────────────────────
from .models import (
    Analysis,
    DiagramDistanceResult,
    Direction,
    EdgeInfo,
    Face,
    Filtration,
    GridDigraph,
    GridField,
    GridSpec,
    LineCoherence,
    PersistenceDiagram,
    PersistencePair,
    ReducedDigraph,
    SingularPolygon,
    SingularityReport,
    SmallDigraph,
    SpiralParams,
    SquareRef,
    SquareShape,
    ValidationReport,
    Violation,
)
from ._errors import (
    CenterOnGridPoint,
    DegenerateAngle,
    DomainError,
    FormatError,
    GridError,
    InputError,
    ParseError,
    PolygonNotFound,
    PPHxError,
    ScaleError,
    SpecMismatch,
    WindingResidualError,
)

# ── Internal engine ───────────────────────────────────────────────────────────
from ._field import PARALLEL_TOL, compose_spirals, gen_spiral, sample_field, validate_assumptions
from ._io import dump_digraph, load_digraph, load_field, store_field
from ._digraph import build_grid_digraph, classify_square, count_shapes, line_coherence, rotation_angle
from ._pph import build_filtration, compute_pd1
from ._oracle import ORACLE_MAX_VERTICES, oracle_betti_curve, oracle_h1_dim, to_small_digraph
from ._singular import (
    RESIDUAL_TOL,
    locate_singularities,
    loop_winding_number,
    rectangle_winding_number,
    weighted_center,
    winding_number,
)
from ._polygon import extract_singular_polygon, faces_of_subgraph, reduce_digraph, threshold_subgraph
from ._distance import bottleneck_distance, compute_field_diagram, distance_series, wasserstein_distance
from ._log import set_debug, warn

__all__ = [
    # Public functions
    "analyze",
    "validate_assumptions",
    "gen_spiral",
    "compose_spirals",
    "sample_field",
    "load_field",
    "store_field",
    "dump_digraph",
    "load_digraph",
    "rotation_angle",
    "build_grid_digraph",
    "classify_square",
    "count_shapes",
    "line_coherence",
    "build_filtration",
    "compute_pd1",
    "oracle_h1_dim",
    "oracle_betti_curve",
    "to_small_digraph",
    "winding_number",
    "loop_winding_number",
    "rectangle_winding_number",
    "locate_singularities",
    "weighted_center",
    "reduce_digraph",
    "faces_of_subgraph",
    "threshold_subgraph",
    "extract_singular_polygon",
    "bottleneck_distance",
    "wasserstein_distance",
    "distance_series",
    "compute_field_diagram",
    "set_debug",
    # Constants
    "PARALLEL_TOL",
    "ORACLE_MAX_VERTICES",
    "RESIDUAL_TOL",
    # Dataclasses
    "Analysis",
    "DiagramDistanceResult",
    "Direction",
    "EdgeInfo",
    "Face",
    "Filtration",
    "GridDigraph",
    "GridField",
    "GridSpec",
    "LineCoherence",
    "PersistenceDiagram",
    "PersistencePair",
    "ReducedDigraph",
    "SingularPolygon",
    "SingularityReport",
    "SmallDigraph",
    "SpiralParams",
    "SquareRef",
    "SquareShape",
    "ValidationReport",
    "Violation",
    # Errors
    "PPHxError",
    "InputError",
    "ParseError",
    "GridError",
    "FormatError",
    "DomainError",
    "DegenerateAngle",
    "CenterOnGridPoint",
    "ScaleError",
    "PolygonNotFound",
    "SpecMismatch",
    "WindingResidualError",
]


# ─────────────────────────────────────────────────────────────────────────────
#  analyze()
# ─────────────────────────────────────────────────────────────────────────────

def analyze(field: GridField, tol: float = PARALLEL_TOL) -> Analysis:
    """
    Run the whole extraction on one field.

    Builds the grid digraph and its diagram, locates every index +1 square
    and extracts a singular polygon for each.  A singularity whose polygon
    cannot be found keeps ``None`` in ``polygons`` and is announced with a
    warning.

    Parameters
    ----------
    field:
        The sampled vector field.
    tol:
        Angle tolerance (radians) below which neighbours count as parallel.

    Example
    -------
    ::

        result = analyze(gen_spiral(SpiralParams(1, 1.0472, 1.0), spec))
        for r, poly in zip(result.reports, result.polygons):
            print(r.square, r.center, poly and poly.loop)
    """
    dg = build_grid_digraph(field, tol)
    pd = compute_pd1(dg)
    reports = locate_singularities(field, dg, pd)
    polygons: list[SingularPolygon | None] = []
    for r in reports:
        try:
            polygons.append(extract_singular_polygon(field, dg, pd, r))
        except PolygonNotFound as exc:
            warn(str(exc))
            polygons.append(None)
    return Analysis(field, dg, pd, tuple(reports), tuple(polygons))
