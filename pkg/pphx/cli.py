"""
pphx.cli
========
Command-line interface for PPHx.  Installed as the ``pphx`` command.

Every command reads field files (CSV or JSON, chosen by suffix) and writes
CSV/JSON either to ``-o FILE`` or to stdout.  Summaries and diagnostics go
to stderr.

Usage
-----
    pphx gen --alpha 1.0472 --rho 1 --a 1 --grid 10x10 --eps 0.25 -o spiral.csv
    pphx validate spiral.csv
    pphx dump-digraph spiral.csv -o spiral.digraph.json --svg spiral.svg
    pphx persistence spiral.csv                       # birth,death CSV
    pphx persistence --digraph spiral.digraph.json    # same diagram, offline
    pphx locate spiral.csv --svg located.svg
    pphx polygon spiral.csv -o polygon.json --svg polygon.svg
    pphx compare a.csv b.csv [--wasserstein 2]
    pphx series manifest.txt --pool-size 4 -o series.csv

Exit status: 0 success, 1 domain error (including validation violations and
missing polygons), 2 input / file error.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import analyze, set_debug
from ._digraph import build_grid_digraph
from ._display import print_diagram_summary, print_polygon, print_reports, print_validation
from ._distance import bottleneck_distance, compute_field_diagram, distance_series, wasserstein_distance
from ._errors import DomainError, InputError, PolygonNotFound
from ._field import PARALLEL_TOL, gen_spiral, validate_assumptions
from ._io import (
    diagram_csv,
    diagram_json,
    digraph_json,
    field_csv,
    fmt_float,
    load_digraph,
    load_field,
    polygon_json,
    read_manifest,
    reports_csv,
    resolve_format,
    series_csv,
    store_field,
)
from ._log import c, C
from ._pph import compute_pd1
from ._plot import render_digraph_svg
from ._polygon import reduce_digraph, threshold_subgraph
from ._singular import locate_singularities
from .models import GridSpec, SpiralParams

COMMANDS = ("validate", "dump-digraph", "persistence", "locate", "polygon", "compare", "series", "gen")


# ─────────────────────────────────────────────────────────────────────────────
#  Configuration
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RunConfig:
    """One fully parsed invocation."""

    command:     str
    inputs:      tuple[Path, ...] = ()
    output:      Optional[Path] = None
    format:      Optional[str] = None
    svg:         Optional[Path] = None
    digraph:     Optional[Path] = None
    tol:         float = PARALLEL_TOL
    wasserstein: Optional[float] = None
    pool_size:   int = 1
    spiral:      Optional[SpiralParams] = None
    grid:        Optional[GridSpec] = None
    debug:       bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")


def _parse_grid(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*[xX×]\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected MxN, e.g. 10x10, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Turn parsed arguments into a RunConfig; raises ValueError on bad values."""
    command = args.command
    inputs: tuple[Path, ...] = ()
    if command == "compare":
        inputs = (Path(args.first), Path(args.second))
    elif command == "series":
        inputs = (Path(args.manifest),)
    elif command != "gen" and getattr(args, "field", None):
        inputs = (Path(args.field),)

    wasserstein = getattr(args, "wasserstein", None)
    if wasserstein is not None and not wasserstein >= 1:
        raise ValueError(f"--wasserstein needs q ≥ 1, got {wasserstein!r}")
    pool_size = getattr(args, "pool_size", 1)
    if pool_size < 1:
        raise ValueError(f"--pool-size must be at least 1, got {pool_size}")

    spiral = grid = None
    if command == "gen":
        cols, rows = args.grid
        eps = args.eps
        origin = tuple(args.origin) if args.origin else (-(cols - 1) * eps / 2, -(rows - 1) * eps / 2)
        grid = GridSpec(origin=origin, spacing=eps, cols=cols, rows=rows)
        spiral = SpiralParams(a=args.a, alpha=args.alpha, rho=args.rho, center=tuple(args.center))

    return RunConfig(
        command     = command,
        inputs      = inputs,
        output      = Path(args.output) if getattr(args, "output", None) else None,
        format      = getattr(args, "format", None),
        svg         = Path(args.svg) if getattr(args, "svg", None) else None,
        digraph     = Path(args.digraph) if getattr(args, "digraph", None) else None,
        tol         = args.tol,
        wasserstein = wasserstein,
        pool_size   = pool_size,
        spiral      = spiral,
        grid        = grid,
        debug       = args.debug,
    )


# ─────────────────────────────────────────────────────────────────────────────
#  Commands
# ─────────────────────────────────────────────────────────────────────────────

def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.write_text(text, encoding="utf-8")
    print(f"{c('▸  Saved', C.BGREEN, C.BOLD)} → {c(str(output), C.BCYAN)}", file=sys.stderr)


def _cmd_validate(cfg: RunConfig) -> int:
    report = validate_assumptions(load_field(cfg.inputs[0]), cfg.tol)
    _emit("".join(f"{v}\n" for v in report.violations), cfg.output)
    print_validation(report)
    return 0 if report.ok else 1


def _cmd_dump_digraph(cfg: RunConfig) -> int:
    dg = build_grid_digraph(load_field(cfg.inputs[0]), cfg.tol)
    _emit(digraph_json(dg), cfg.output)
    if cfg.svg:
        render_digraph_svg(dg, cfg.svg)
    return 0


def _cmd_persistence(cfg: RunConfig) -> int:
    if cfg.digraph is not None:
        dg = load_digraph(cfg.digraph)
    else:
        dg = build_grid_digraph(load_field(cfg.inputs[0]), cfg.tol)
    pd = compute_pd1(dg)
    fmt = resolve_format(cfg.output, cfg.format) if cfg.output else (cfg.format or "csv")
    _emit(diagram_csv(pd) if fmt == "csv" else diagram_json(pd), cfg.output)
    print_diagram_summary(dg, pd)
    return 0


def _cmd_locate(cfg: RunConfig) -> int:
    field = load_field(cfg.inputs[0])
    dg = build_grid_digraph(field, cfg.tol)
    reports = locate_singularities(field, dg, compute_pd1(dg))
    _emit(reports_csv(reports), cfg.output)
    print_reports(reports)
    if cfg.svg:
        render_digraph_svg(dg, cfg.svg, reports=reports)
    return 0


def _cmd_polygon(cfg: RunConfig) -> int:
    result = analyze(load_field(cfg.inputs[0]), cfg.tol)
    if not result.reports:
        raise PolygonNotFound("no singular square to enclose")
    found = [p for p in result.polygons if p is not None]
    if found:
        _emit(polygon_json(found[0] if len(found) == 1 else found), cfg.output)
        for poly in found:
            print_polygon(poly)
    if cfg.svg:
        first = found[0] if found else None
        reduced = None
        if first is not None:
            reduced = reduce_digraph(threshold_subgraph(result.digraph, first.birth_weight),
                                     result.digraph.spec)
        render_digraph_svg(result.digraph, cfg.svg, reports=result.reports,
                           polygon=first, reduced=reduced)
    if len(found) < len(result.reports):
        missing = [str(r.square) for r, p in zip(result.reports, result.polygons) if p is None]
        raise PolygonNotFound(f"no singular polygon for {', '.join(missing)}")
    return 0


def _cmd_compare(cfg: RunConfig) -> int:
    pd1 = compute_field_diagram(load_field(cfg.inputs[0]), cfg.tol)
    pd2 = compute_field_diagram(load_field(cfg.inputs[1]), cfg.tol)
    if cfg.wasserstein is not None:
        result = wasserstein_distance(pd1, pd2, cfg.wasserstein)
    else:
        result = bottleneck_distance(pd1, pd2)
    _emit(fmt_float(result.value) + "\n", cfg.output)
    return 0


def _cmd_series(cfg: RunConfig) -> int:
    paths = read_manifest(cfg.inputs[0])
    fields = [load_field(p) for p in paths]
    _emit(series_csv(distance_series(fields, pool_size=cfg.pool_size, tol=cfg.tol)), cfg.output)
    return 0


def _cmd_gen(cfg: RunConfig) -> int:
    field = gen_spiral(cfg.spiral, cfg.grid)
    if cfg.output is None:
        sys.stdout.write(field_csv(field))
        return 0
    saved = store_field(field, cfg.output, cfg.format)
    print(f"{c('▸  Saved', C.BGREEN, C.BOLD)} → {c(str(saved), C.BCYAN)}", file=sys.stderr)
    return 0


_HANDLERS = {
    "validate":     _cmd_validate,
    "dump-digraph": _cmd_dump_digraph,
    "persistence":  _cmd_persistence,
    "locate":       _cmd_locate,
    "polygon":      _cmd_polygon,
    "compare":      _cmd_compare,
    "series":       _cmd_series,
    "gen":          _cmd_gen,
}


def run(config: RunConfig) -> int:
    """
    Execute one command and return the exit status.

    0 on success, 1 for domain errors, 2 for input and file errors.  The
    error is printed to stderr; nothing is raised.
    """
    if config.debug:
        set_debug(True)
    try:
        for path in (*config.inputs, *([config.digraph] if config.digraph else [])):
            if not path.is_file():
                raise FileNotFoundError(f"no such file: {path}")
        return _HANDLERS[config.command](config)
    except (InputError, OSError) as exc:
        print(f"{c('✗ ', C.BRED, C.BOLD)} {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{c('✗ ', C.BRED, C.BOLD)} {exc}", file=sys.stderr)
        return 1


# ─────────────────────────────────────────────────────────────────────────────
#  main()
# ─────────────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    # shared by the main parser and every sub-command so flags work in either position
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-d", "--debug",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Print verbose progress (digraph sizes, reductions, matchings) to stderr.",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=argparse.SUPPRESS,
        metavar="RAD",
        help=(
            "Angle tolerance in radians below which neighbouring vectors count as "
            f"parallel or anti-parallel.  Default: {PARALLEL_TOL:g}."
        ),
    )

    parser = argparse.ArgumentParser(
        prog="pphx",
        parents=[common],
        description=(
            f"{c('PPHx', C.BWHITE, C.BOLD)}\n"
            f"{c('Singularities and singular polygons of planar vector fields.', C.DIM)}\n\n"
            f"{c('Examples:', C.BYELLOW)}\n"
            f"  pphx gen --alpha 1.0472 --rho 1 --a 1 --grid 10x10 --eps 0.25 -o f.csv\n"
            f"  pphx locate f.csv                 {c('# singular squares as CSV', C.DIM)}\n"
            f"  pphx polygon f.csv --svg p.svg    {c('# singular polygon + plot', C.DIM)}\n"
            f"  pphx compare f.csv g.csv          {c('# bottleneck distance', C.DIM)}\n\n"
            f"{c('Environment:', C.BYELLOW)}  PPHX_PRECISION  significant digits in output (default 17)"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def field_arg(p: argparse.ArgumentParser, nargs: Optional[str] = None) -> None:
        p.add_argument("field", nargs=nargs, metavar="FIELD",
                       help="Field file, CSV or JSON (chosen by suffix).")

    def output_arg(p: argparse.ArgumentParser, what: str) -> None:
        p.add_argument("-o", "--output", default=None, metavar="FILE",
                       help=f"Write {what} to FILE instead of stdout.")

    def svg_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--svg", default=None, metavar="FILE",
                       help="Also render the grid digraph (with overlays) as an SVG file.")

    p = sub.add_parser("validate", parents=[common], help="Report sampling-assumption violations.")
    field_arg(p)
    output_arg(p, "the violation list")

    p = sub.add_parser("dump-digraph", parents=[common], help="Export the angle-based grid digraph as JSON.")
    field_arg(p)
    output_arg(p, "the digraph JSON")
    svg_arg(p)

    p = sub.add_parser("persistence", parents=[common], help="One-dimensional persistence diagram.")
    field_arg(p, nargs="?")
    p.add_argument("--digraph", default=None, metavar="FILE",
                   help="Read a digraph written by dump-digraph instead of a field.")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="Output format.  Default: from the -o suffix, else csv.")
    output_arg(p, "the diagram")

    p = sub.add_parser("locate", parents=[common], help="Singular squares and their weighted centres.")
    field_arg(p)
    output_arg(p, "the singularity CSV")
    svg_arg(p)

    p = sub.add_parser("polygon", parents=[common], help="Singular polygon around each singularity.")
    field_arg(p)
    output_arg(p, "the polygon JSON")
    svg_arg(p)

    p = sub.add_parser("compare", parents=[common], help="Distance between the diagrams of two fields.")
    p.add_argument("first", metavar="FIELD_A")
    p.add_argument("second", metavar="FIELD_B")
    p.add_argument("--wasserstein", type=float, default=None, metavar="Q",
                   help="Use the q-Wasserstein distance (q ≥ 1) instead of bottleneck.")
    output_arg(p, "the distance")

    p = sub.add_parser("series", parents=[common], help="Bottleneck distance between consecutive fields.")
    p.add_argument("manifest", metavar="MANIFEST",
                   help="Text file listing field files in time order, one per line.")
    p.add_argument("-p", "--pool-size", type=int, default=1, dest="pool_size", metavar="N",
                   help="Worker processes for the diagrams.  Default: 1.")
    output_arg(p, "the step,bottleneck CSV")

    p = sub.add_parser("gen", parents=[common], help="Sample a logarithmic-spiral field.")
    p.add_argument("--alpha", type=float, required=True, help="Pitch angle in (0, π).")
    p.add_argument("--rho", type=float, default=1.0, help="Aspect ratio ρ > 0.  Default: 1.")
    p.add_argument("--a", type=float, default=1.0,
                   help="Chirality: positive for counterclockwise flow.  Default: 1.")
    p.add_argument("--grid", type=_parse_grid, required=True, metavar="MxN",
                   help="Columns × rows, e.g. 10x10.")
    p.add_argument("--eps", type=float, required=True, help="Grid spacing ε.")
    p.add_argument("--center", type=float, nargs=2, default=(0.0, 0.0), metavar=("X", "Y"),
                   help="Spiral centre.  Default: 0 0.")
    p.add_argument("--origin", type=float, nargs=2, default=None, metavar=("X0", "Y0"),
                   help="Lower-left grid point.  Default: grid centred on the origin.")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="Output format.  Default: from the -o suffix.")
    output_arg(p, "the field (CSV on stdout)")

    return parser


def main(argv: Optional[list[str]] = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.debug = getattr(args, "debug", False)
    args.tol = getattr(args, "tol", PARALLEL_TOL)

    if args.command == "persistence" and not (args.field or args.digraph):
        parser.error("persistence needs FIELD or --digraph")
    try:
        config = config_from_args(args)
    except (ValueError, InputError) as exc:
        parser.error(str(exc))

    sys.exit(run(config))


if __name__ == "__main__":
    main()
