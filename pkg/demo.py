"""
PPHx feature demo
─────────────────
Exercises every public API function on synthetic spiral fields.

Usage:
    python demo.py                     # runs all demos (spiral centred at 3.3, 4.6)
    python demo.py 3.8 4.2             # move the spiral centre
    python demo.py 3.8 4.2 --debug     # with verbose output
"""

from __future__ import annotations

import argparse
import math
import tempfile
from pathlib import Path

import pphx
from pphx import (
    GridSpec,
    SpiralParams,
    SquareRef,
    SquareShape,
    gen_spiral,
    compose_spirals,
    validate_assumptions,
    build_grid_digraph,
    count_shapes,
    compute_pd1,
    oracle_betti_curve,
    locate_singularities,
    extract_singular_polygon,
    bottleneck_distance,
    wasserstein_distance,
    distance_series,
    store_field,
    load_field,
    dump_digraph,
    load_digraph,
    set_debug,
    GridField,
    GridDigraph,
    PersistenceDiagram,
)

SPEC = GridSpec(origin=(0.0, 0.0), spacing=1.0, cols=8, rows=8)


# ── helpers ───────────────────────────────────────────────────────────────────

def banner(text: str) -> None:
    print(f"\n{'─' * 60}")
    print(f"  {text}")
    print('─' * 60)

def ok(label: str, value=None) -> None:
    suffix = f"  →  {value}" if value is not None else ""
    print(f"  ✓  {label}{suffix}")

def check(condition: bool, label: str) -> None:
    icon = "✓" if condition else "✗"
    print(f"  {icon}  {label}")
    assert condition, f"FAILED: {label}"


# ── 1. gen_spiral() / validate_assumptions() ──────────────────────────────────

def demo_field(center: tuple[float, float]) -> GridField:
    banner("1 · gen_spiral()  /  validate_assumptions()")
    field = gen_spiral(SpiralParams(a=1, alpha=math.pi / 3, rho=1.0, center=center), SPEC)
    assert isinstance(field, GridField)
    ok("returns GridField", repr(field))
    check(field.vectors.shape == (SPEC.n_points, 2), f"vectors shape = {field.vectors.shape}")

    report = validate_assumptions(field)
    check(report.ok, "no A1 / A3 violations")
    ok("unverifiable", report.unverifiable)
    return field


# ── 2. build_grid_digraph() ───────────────────────────────────────────────────

def demo_digraph(field: GridField) -> GridDigraph:
    banner("2 · build_grid_digraph()  — one directed edge per segment")
    dg = build_grid_digraph(field)
    check(dg.n_edges == SPEC.n_edges, f"n_edges = {dg.n_edges}")
    check(bool((dg.weights > 0).all() and (dg.weights < math.pi).all()),
          "every weight lies in (0, π)")
    shapes = count_shapes(dg)
    for shape in SquareShape:
        ok(shape.value, shapes[shape])
    check(shapes[SquareShape.COHERENT_CYCLE] == 1, "exactly one coherent square")
    return dg


# ── 3. compute_pd1() / oracle_betti_curve() ───────────────────────────────────

def demo_persistence(dg: GridDigraph) -> PersistenceDiagram:
    banner("3 · compute_pd1()  — one-dimensional persistence")
    pd = compute_pd1(dg)
    ok("diagram", pd)
    expected = SPEC.cols + SPEC.rows - 3
    check(len(pd.essential) == expected, f"{len(pd.essential)} essential classes (m + n − 3)")
    check(all(p.birth < p.death for p in pd.pairs), "every pair has birth < death")

    small = build_grid_digraph(gen_spiral(SpiralParams(1, math.pi / 3, 1.0, (2.4, 1.7)),
                                          GridSpec((0.0, 0.0), 1.0, 5, 5)))
    small_pd = compute_pd1(small)
    curve = oracle_betti_curve(small)
    check(all(small_pd.betti_at(d) == b for d, b in curve.items()),
          f"brute-force oracle agrees at {len(curve)} thresholds")
    return pd


# ── 4. locate_singularities() / extract_singular_polygon() ────────────────────

def demo_singularities(field: GridField, dg: GridDigraph, pd: PersistenceDiagram) -> None:
    banner("4 · locate_singularities()  /  extract_singular_polygon()")
    reports = locate_singularities(field, dg, pd)
    check(len(reports) == 1, f"{len(reports)} singular square(s)")
    r = reports[0]
    ok("report", r)
    check(SPEC.locate_square(*r.center) == r.square, "weighted centre lies inside its square")

    poly = extract_singular_polygon(field, dg, pd, r)
    ok("loop", poly.loop)
    check(r.square in poly.enclosed, "polygon encloses the singular square")
    check(poly.birth_weight in {p.birth for p in pd.essential}, "polygon born at an essential birth")

    two = compose_spirals([SpiralParams(1, math.pi / 3, 1.0, (1.35, 5.6)),
                           SpiralParams(1, math.pi / 3, 1.0, (9.6, 5.3))],
                          GridSpec((0.0, 0.0), 1.0, 12, 12))
    result = pphx.analyze(two)
    ok("two spirals", result)
    check(sorted(r.square for r in result.reports) == [SquareRef(1, 5), SquareRef(9, 5)],
          "both centres found")


# ── 5. distances ──────────────────────────────────────────────────────────────

def demo_distances(field: GridField, pd: PersistenceDiagram) -> None:
    banner("5 · bottleneck_distance()  /  wasserstein_distance()  /  distance_series()")
    check(bottleneck_distance(pd, pd).value == 0.0, "d_B(D, D) = 0")

    turned = compute_pd1(build_grid_digraph(field.rotated(math.pi / 2)))
    check(bottleneck_distance(pd, turned).value == 0.0, "quarter turn leaves the diagram unchanged")

    cx, cy = SPEC.square_center(SquareRef(3, 4))
    drift = [gen_spiral(SpiralParams(1, math.pi / 3, 1.0, (cx - 0.2 + 0.05 * k, cy)), SPEC)
             for k in range(4)]
    series = distance_series(drift)
    ok("series", [(k, round(v, 4)) for k, v in series])
    check([k for k, _ in series] == [1, 2, 3], "one distance per step")

    w = wasserstein_distance(pd, compute_pd1(build_grid_digraph(drift[0])), q=2).value
    ok("W₂ to first drift frame", w)


# ── 6. store_field() / load_field() / dump_digraph() ──────────────────────────

def demo_io(field: GridField, dg: GridDigraph) -> None:
    banner("6 · store_field()  /  load_field()  /  dump_digraph()")
    with tempfile.TemporaryDirectory() as tmp:
        for name in ("field.csv", "field.json"):
            path = store_field(field, Path(tmp) / name)
            check(load_field(path) == field, f"{name} round-trips exactly")
        path = dump_digraph(dg, Path(tmp) / "digraph.json")
        check(load_digraph(path) == dg, "digraph JSON round-trips exactly")
    ok("temp files cleaned up")


# ── main ──────────────────────────────────────────────────────────────────────

def main() -> None:
    parser = argparse.ArgumentParser(description="PPHx feature demo")
    parser.add_argument("center", nargs="*", type=float, default=[3.3, 4.6],
                        help="Spiral centre X Y (default: 3.3 4.6)")
    parser.add_argument("--debug", action="store_true",
                        help="Enable verbose PPHx debug output")
    args = parser.parse_args()
    if len(args.center) != 2:
        parser.error("centre needs exactly two coordinates")

    if args.debug:
        set_debug(True)

    center = (args.center[0], args.center[1])
    print(f"\nPPHx v{pphx.__version__}  —  spiral centred at {center} on {SPEC}\n")

    field = demo_field(center)
    dg    = demo_digraph(field)
    pd    = demo_persistence(dg)
    demo_singularities(field, dg, pd)
    demo_distances(field, pd)
    demo_io(field, dg)

    print(f"\n{'═' * 60}")
    print(f"  All demos passed  ✓")
    print(f"{'═' * 60}\n")


if __name__ == "__main__":
    main()
