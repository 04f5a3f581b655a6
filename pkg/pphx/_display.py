"""
pphx._display
=============
Terminal summaries for the CLI.

Everything here writes to stderr so that CSV/JSON on stdout stays clean.
Purely cosmetic: no logic lives here.
"""

from __future__ import annotations

import re
import sys
from collections.abc import Sequence

from ._digraph import count_shapes
from ._log import c, C
from .models import (
    GridDigraph,
    PersistenceDiagram,
    SingularPolygon,
    SingularityReport,
    SquareShape,
    ValidationReport,
)

W = 64


def _out(*parts: str) -> None:
    print(*parts, file=sys.stderr)


def _box_row(content: str, width: int = W, color: str = C.BCYAN) -> None:
    """Print a single ║ … ║ row, padding content to *width*."""
    raw_len = len(re.sub(r"\033\[[^m]*m", "", content))
    pad = width - 2 - raw_len
    _out(c("║", color) + content + " " * max(pad, 0) + c("║", color))


def _box(title: str, rows: Sequence[str]) -> None:
    _out(c("╔" + "═" * (W - 2) + "╗", C.BCYAN, C.BOLD))
    _box_row(c(f"  {title}", C.BWHITE, C.BOLD))
    for row in rows:
        _box_row("  " + row)
    _out(c("╚" + "═" * (W - 2) + "╝", C.BCYAN, C.BOLD))


# ─── Public helpers ───────────────────────────────────────────────────────────

def print_validation(report: ValidationReport) -> None:
    status = c("ok", C.BGREEN, C.BOLD) if report.ok else c(f"{len(report.violations)} violation(s)", C.BRED, C.BOLD)
    rows = [
        f"A1 parallel neighbours: {c(len(report.of_kind('A1')), C.BYELLOW)}",
        f"A3 zero vectors:        {c(len(report.of_kind('A3')), C.BYELLOW)}",
        c(f"unverifiable: {', '.join(report.unverifiable)}", C.DIM),
    ]
    _box(f"Validation  ·  {status}", rows)


def print_diagram_summary(dg: GridDigraph, pd: PersistenceDiagram) -> None:
    shapes = count_shapes(dg)
    spec = dg.spec
    rows = [
        c(f"{spec.cols}×{spec.rows} grid  ·  ε={spec.spacing:g}  ·  {dg.n_edges} edges", C.DIM),
        "  ".join(f"{s.value}: {c(shapes.get(s, 0), C.BYELLOW)}" for s in SquareShape),
        f"finite pairs: {c(len(pd.finite), C.BYELLOW, C.BOLD)}   "
        f"essential: {c(len(pd.essential), C.BYELLOW, C.BOLD)}",
    ]
    _box("Dgm₁", rows)


def print_reports(reports: Sequence[SingularityReport]) -> None:
    if not reports:
        _out(c("  no singular square found", C.DIM))
        return
    for r in reports:
        x, y = r.center
        _out(
            c("  │ ", C.BCYAN) + c(str(r.square), C.BCYAN, C.BOLD)
            + c(f"  index {r.index:+d}", C.BGREEN)
            + f"  at ({x:.6g}, {y:.6g})"
            + c(f"  w={r.trigger_weight:.6g}", C.DIM)
        )


def print_polygon(poly: SingularPolygon) -> None:
    _out(
        c("  ▸ polygon", C.BGREEN, C.BOLD)
        + f" around {c(str(poly.enclosed_square), C.BCYAN)}: "
        + f"{len(poly.loop)} vertices, {len(poly.enclosed) or '?'} square(s), "
        + c(f"born at w={poly.birth_weight:.6g}", C.DIM)
    )
