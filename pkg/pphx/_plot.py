"""
pphx._plot
==========
SVG rendering of grid digraphs, singular squares and polygons.

Figures are built with the object-oriented matplotlib API (no pyplot state)
and written without a creation date and with a fixed id salt, so the same
input always produces the same file.
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Polygon, Rectangle

from ._log import dbg, c, C
from .models import GridDigraph, ReducedDigraph, SingularPolygon, SingularityReport

_EDGE = "#4a4a4a"
_REDUCED = "#1f77b4"
_POLYGON = "#f4a6c6"
_SINGULAR = "#d62728"


def _xy(dg: GridDigraph, p: tuple[int, int]) -> tuple[float, float]:
    return dg.spec.point(*p)


def render_digraph_svg(
    dg: GridDigraph,
    path: str | Path,
    *,
    reports: Iterable[SingularityReport] = (),
    polygon: SingularPolygon | None = None,
    reduced: ReducedDigraph | None = None,
    title: str | None = None,
) -> Path:
    """
    Draw every edge of *dg* as an arrow from tail to head.

    Optional overlays: the reduced sub-graph in blue, the polygon filled in
    pink, and each reported square outlined in red with its weighted centre.
    """
    spec = dg.spec
    eps = spec.spacing
    fig = Figure(figsize=(0.6 * spec.cols + 1.5, 0.6 * spec.rows + 1.5))
    ax = fig.add_subplot(1, 1, 1)
    ax.set_aspect("equal")

    if polygon is not None:
        ax.add_patch(Polygon([_xy(dg, p) for p in polygon.loop], closed=True,
                             facecolor=_POLYGON, edgecolor="none", alpha=0.7, zorder=0))

    highlighted = reduced.edges if reduced is not None else frozenset()
    for slot in range(dg.n_edges):
        on = slot in highlighted
        ax.annotate(
            "",
            xy=_xy(dg, dg.head(slot)),
            xytext=_xy(dg, dg.tail(slot)),
            arrowprops=dict(
                arrowstyle="-|>",
                color=_REDUCED if on else _EDGE,
                lw=1.6 if on else 0.8,
                shrinkA=3,
                shrinkB=3,
            ),
            zorder=2,
        )

    xs, ys = spec.coordinates()
    ax.scatter(xs, ys, s=6, color="black", zorder=3)

    for r in reports:
        x, y = spec.point(r.square.i, r.square.j)
        ax.add_patch(Rectangle((x, y), eps, eps, fill=False, edgecolor=_SINGULAR, lw=1.8, zorder=4))
        ax.plot(*r.center, marker="x", color=_SINGULAR, markersize=7, zorder=5)

    x0, y0 = spec.origin
    ax.set_xlim(x0 - eps / 2, x0 + (spec.cols - 0.5) * eps)
    ax.set_ylim(y0 - eps / 2, y0 + (spec.rows - 0.5) * eps)
    if title:
        ax.set_title(title)

    dest = Path(path)
    with matplotlib.rc_context({"svg.hashsalt": "pphx", "svg.fonttype": "none"}):
        fig.savefig(dest, format="svg", metadata={"Date": None}, bbox_inches="tight")
    dbg(c(f"  ▸ wrote {dest}", C.DIM))
    return dest
