"""
pphx._io
========
File formats.

Fields
------
CSV   first line ``m=<int>,n=<int>,eps=<float>,x0=<float>,y0=<float>``,
      then m·n rows ``i,j,u,v`` in any order.
JSON  ``{"spec": {"m", "n", "eps", "x0", "y0"}, "vectors": [[u, v], ...]}``
      with vectors row-major.

Digraphs, diagrams, singularity reports, polygons and distance series are
written with the ``*_csv`` / ``*_json`` renderers below.  Every float goes
through `fmt_float`, which prints ``PPHX_PRECISION`` significant digits
(default 17, enough for an exact round trip).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import numpy as np

from ._errors import FormatError, GridError, ParseError
from ._log import dbg, warn, c, C
from .models import (
    GridDigraph,
    GridField,
    GridSpec,
    PersistenceDiagram,
    SingularPolygon,
    SingularityReport,
)

PRECISION_ENV = "PPHX_PRECISION"
DEFAULT_PRECISION = 17

_SPEC_KEYS = ("m", "n", "eps", "x0", "y0")
_FORMATS = {".csv": "csv", ".json": "json"}


# ─── Number formatting ────────────────────────────────────────────────────────

def output_precision() -> int:
    """Significant digits for numeric output, from ``PPHX_PRECISION``."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw == "":
        return DEFAULT_PRECISION
    try:
        prec = int(raw)
    except ValueError:
        prec = 0
    if not 1 <= prec <= 17:
        warn(f"ignoring {PRECISION_ENV}={raw!r}; expected an integer in 1..17")
        return DEFAULT_PRECISION
    return prec


def fmt_float(x: float, precision: int | None = None) -> str:
    """``inf`` / ``-inf`` for infinities, otherwise ``%.<p>g``."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, f".{precision or output_precision()}g")


def _round_json(value: Any, precision: int) -> Any:
    """Recursively round floats for JSON output; infinities become ``"inf"``."""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(format(value, f".{precision}g"))
    if isinstance(value, dict):
        return {k: _round_json(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_json(v, precision) for v in value]
    return value


def to_json(obj: Any) -> str:
    return json.dumps(_round_json(obj, output_precision()), indent=2) + "\n"


def _parse_float(token: str) -> float:
    """Accepts the ``inf`` spellings written by `fmt_float` and `to_json`."""
    if isinstance(token, str) and token.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return float(token)


# ─── Format resolution ────────────────────────────────────────────────────────

def _read_text(path: str | Path) -> str:
    """UTF-8 contents of *path*; undecodable bytes are a ParseError."""
    raw = Path(path).read_bytes()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = raw.count(b"\n", 0, exc.start) + 1
        raise ParseError(f"{path} is not UTF-8 text (byte {exc.start})", line) from exc


def resolve_format(path: str | Path, fmt: str | None = None) -> str:
    """``"csv"`` or ``"json"``; inferred from the suffix when *fmt* is None."""
    if fmt is None:
        suffix = Path(path).suffix.lower()
        if suffix not in _FORMATS:
            raise FormatError(f"cannot infer a format from {str(path)!r}; use .csv or .json")
        return _FORMATS[suffix]
    tag = fmt.lower()
    if tag not in _FORMATS.values():
        raise FormatError(f"unknown format {fmt!r}; expected 'csv' or 'json'")
    return tag


# ─── Field: parsing ───────────────────────────────────────────────────────────

def _spec_from_mapping(values: dict[str, Any], line: int | None = None) -> GridSpec:
    missing = [k for k in _SPEC_KEYS if k not in values]
    if missing:
        raise ParseError(f"grid header lacks {', '.join(missing)}", line)
    try:
        m_raw, n_raw, eps, x0, y0 = (float(values[k]) for k in _SPEC_KEYS)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad grid header value ({exc})", line) from exc
    if not (m_raw.is_integer() and n_raw.is_integer()):
        raise GridError(f"m and n must be integers, got m={values['m']!r}, n={values['n']!r}")
    return GridSpec(origin=(x0, y0), spacing=eps, cols=int(m_raw), rows=int(n_raw))


def parse_field_csv(text: str) -> GridField:
    """Parse the CSV field format; raises ParseError / GridError."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("empty file: expected a grid header", 1)

    header: dict[str, str] = {}
    for part in lines[0].split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"grid header entry {part.strip()!r} is not key=value", 1)
        header[key.strip()] = value.strip()
    spec = _spec_from_mapping(header, line=1)

    vectors = np.full((spec.n_points, 2), np.nan)
    seen = np.zeros(spec.n_points, dtype=bool)
    for lineno, row in enumerate(csv.reader(lines[1:]), start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 columns i,j,u,v, got {len(row)}", lineno)
        try:
            i, j = int(row[0]), int(row[1])
            u, v = float(row[2]), float(row[3])
        except ValueError as exc:
            raise ParseError(f"cannot parse row {row!r} ({exc})", lineno) from exc
        if not (0 <= i < spec.cols and 0 <= j < spec.rows):
            raise GridError(f"line {lineno}: point ({i},{j}) outside the {spec.cols}×{spec.rows} grid")
        k = spec.index(i, j)
        if seen[k]:
            raise GridError(f"line {lineno}: duplicate point ({i},{j})")
        seen[k] = True
        vectors[k] = (u, v)

    if not seen.all():
        missing = [spec.unindex(int(k)) for k in np.flatnonzero(~seen)]
        shown = ", ".join(f"({i},{j})" for i, j in missing[:5])
        more = f" and {len(missing) - 5} more" if len(missing) > 5 else ""
        raise GridError(f"expected {spec.n_points} points, missing {shown}{more}")
    return GridField(spec, vectors)


def parse_field_json(text: str) -> GridField:
    """Parse the JSON field format; raises ParseError / GridError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    if not isinstance(data, dict) or "spec" not in data or "vectors" not in data:
        raise ParseError("expected an object with 'spec' and 'vectors'")
    if not isinstance(data["spec"], dict):
        raise ParseError("'spec' must be an object")
    spec = _spec_from_mapping(data["spec"])
    try:
        vectors = np.array(data["vectors"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise GridError(f"'vectors' is not a list of [u, v] pairs ({exc})") from exc
    return GridField(spec, vectors)


# ─── Field: load / store ──────────────────────────────────────────────────────

def load_field(path: str | Path, format: str | None = None) -> GridField:
    """
    Read a field from *path*.

    *format* is ``"csv"`` or ``"json"``; by default it follows the suffix.
    File-system failures propagate as ``OSError``.
    """
    fmt = resolve_format(path, format)
    text = _read_text(path)
    field = parse_field_csv(text) if fmt == "csv" else parse_field_json(text)
    dbg(c(f"  ▸ loaded {field!r} from {path}", C.DIM))
    return field


def field_csv(field: GridField) -> str:
    spec = field.spec
    x0, y0 = spec.origin
    out = [
        f"m={spec.cols},n={spec.rows},eps={fmt_float(spec.spacing)},"
        f"x0={fmt_float(x0)},y0={fmt_float(y0)}"
    ]
    for k, (u, v) in enumerate(field.vectors):
        i, j = spec.unindex(k)
        out.append(f"{i},{j},{fmt_float(u)},{fmt_float(v)}")
    return "\n".join(out) + "\n"


def store_field(field: GridField, path: str | Path, format: str | None = None) -> Path:
    """Write *field* to *path* in the CSV or JSON field format; returns the path."""
    fmt = resolve_format(path, format)
    if field.vectors.shape[0] != field.spec.n_points:
        raise GridError("field does not match its grid")
    text = field_csv(field) if fmt == "csv" else to_json(field.to_dict())
    dest = Path(path)
    dest.write_text(text, encoding="utf-8")
    dbg(c(f"  ▸ stored {field!r} → {dest}", C.DIM))
    return dest


# ─── Digraph ──────────────────────────────────────────────────────────────────

def digraph_json(dg: GridDigraph) -> str:
    return to_json(dg.to_dict())


def dump_digraph(dg: GridDigraph, path: str | Path) -> Path:
    dest = Path(path)
    dest.write_text(digraph_json(dg), encoding="utf-8")
    return dest


def parse_digraph_json(text: str) -> GridDigraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    if not isinstance(data, dict) or not {"spec", "horiz_edges", "vert_edges"} <= data.keys():
        raise ParseError("expected an object with 'spec', 'horiz_edges' and 'vert_edges'")
    if not isinstance(data["spec"], dict):
        raise ParseError("'spec' must be an object")
    for kind in ("horiz_edges", "vert_edges"):
        if not isinstance(data[kind], list):
            raise ParseError(f"'{kind}' must be a list of edges")
    spec = _spec_from_mapping(data["spec"])

    forward: list[bool] = []
    weights: list[float] = []
    for kind in ("horiz_edges", "vert_edges"):
        for k, edge in enumerate(data[kind]):
            try:
                tag, w = edge["dir"], _parse_float(edge["w"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"{kind}[{k}] must be {{'dir': 'F'|'B', 'w': <float>}}") from exc
            if tag not in ("F", "B"):
                raise ParseError(f"{kind}[{k}] has direction {tag!r}; expected 'F' or 'B'")
            if not 0 < w < math.pi:
                raise GridError(f"{kind}[{k}] has weight {w!r}; expected an angle in (0, π)")
            forward.append(tag == "F")
            weights.append(w)
    return GridDigraph(spec, forward, weights)


def load_digraph(path: str | Path) -> GridDigraph:
    return parse_digraph_json(_read_text(path))


# ─── Diagram, reports, polygon, series ────────────────────────────────────────

def diagram_csv(pd: PersistenceDiagram) -> str:
    """``birth,death`` rows in diagram order, ``inf`` for essential classes."""
    buf = io.StringIO()
    buf.write("birth,death\n")
    for p in pd.pairs:
        buf.write(f"{fmt_float(p.birth)},{fmt_float(p.death)}\n")
    return buf.getvalue()


def diagram_json(pd: PersistenceDiagram) -> str:
    return to_json({
        "pairs": [
            {
                "birth":     p.birth,
                "death":     p.death,
                "creator":   p.creator,
                "destroyer": None if p.destroyer is None else list(p.destroyer),
            }
            for p in pd.pairs
        ]
    })


def reports_csv(reports: Iterable[SingularityReport]) -> str:
    buf = io.StringIO()
    buf.write("square_i,square_j,index,center_x,center_y,trigger_weight\n")
    for r in reports:
        x, y = r.center
        buf.write(
            f"{r.square.i},{r.square.j},{r.index},"
            f"{fmt_float(x)},{fmt_float(y)},{fmt_float(r.trigger_weight)}\n"
        )
    return buf.getvalue()


def polygon_json(polygons: SingularPolygon | list[SingularPolygon]) -> str:
    """One polygon as an object, several as a list of objects."""
    if isinstance(polygons, SingularPolygon):
        return to_json(polygons.to_dict())
    return to_json([p.to_dict() for p in polygons])


def series_csv(series: Iterable[tuple[int, float]]) -> str:
    buf = io.StringIO()
    buf.write("step,bottleneck\n")
    for step, value in series:
        buf.write(f"{step},{fmt_float(value)}\n")
    return buf.getvalue()


def read_manifest(path: str | Path) -> list[Path]:
    """
    Field paths listed one per line; blank lines and ``#`` comments skipped.
    Relative entries resolve against the manifest's directory.
    """
    base = Path(path).parent
    out: list[Path] = []
    for line in _read_text(path).splitlines():
        entry = line.split("#", 1)[0].strip()
        if entry:
            p = Path(entry).expanduser()
            out.append(p if p.is_absolute() else base / p)
    return out
