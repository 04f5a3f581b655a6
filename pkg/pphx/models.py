"""
pphx.models
===========
Typed dataclasses that represent every piece of data this package returns.

These are the objects you work with after calling any public API function:

    from pphx import gen_spiral, build_grid_digraph, compute_pd1

    field = gen_spiral(params, spec)      → GridField
    dg    = build_grid_digraph(field)     → GridDigraph
    pd    = compute_pd1(dg)               → PersistenceDiagram
    pd.pairs[0]                           → PersistencePair

Grid conventions
----------------
Point (i, j) is column i, row j, at coordinate (x0 + i·ε, y0 + j·ε).
Vectors are stored row-major: index = j·m + i.
Edge slots: horizontal (i, j) → j·(m−1) + i, then vertical (i, j) →
H + j·m + i with H = (m−1)·n.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from numbers import Integral
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from ._errors import GridError


# ─── SquareRef ────────────────────────────────────────────────────────────────

class SquareRef(NamedTuple):
    """A unit square, named by its lower-left grid point."""

    i: int
    j: int

    def corners(self) -> tuple[tuple[int, int], ...]:
        """Corners counterclockwise from the lower-left."""
        i, j = self
        return ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1))

    def __str__(self) -> str:
        return f"□({self.i},{self.j})"


# ─── GridSpec ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GridSpec:
    """Uniform axis-aligned sampling grid with m columns and n rows."""

    origin:  tuple[float, float]     # (x0, y0)
    spacing: float                   # ε
    cols:    int                     # m
    rows:    int                     # n

    def __post_init__(self) -> None:
        x0, y0 = (float(v) for v in self.origin)
        if not (math.isfinite(x0) and math.isfinite(y0)):
            raise GridError(f"origin must be finite, got {self.origin!r}")
        object.__setattr__(self, "origin", (x0, y0))
        for name in ("cols", "rows"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Integral):
                raise GridError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise GridError(f"spacing must be a positive number, got {self.spacing!r}")
        if self.cols < 2 or self.rows < 2:
            raise GridError(f"grid must be at least 2×2, got {self.cols}×{self.rows}")

    # ── Sizes ─────────────────────────────────────────────────────────────────

    @property
    def n_points(self) -> int:
        return self.cols * self.rows

    @property
    def n_horiz(self) -> int:
        return (self.cols - 1) * self.rows

    @property
    def n_vert(self) -> int:
        return self.cols * (self.rows - 1)

    @property
    def n_edges(self) -> int:
        return self.n_horiz + self.n_vert

    @property
    def n_squares(self) -> int:
        return (self.cols - 1) * (self.rows - 1)

    # ── Indexing ──────────────────────────────────────────────────────────────

    def index(self, i: int, j: int) -> int:
        return j * self.cols + i

    def unindex(self, k: int) -> tuple[int, int]:
        return k % self.cols, k // self.cols

    def point(self, i: int, j: int) -> tuple[float, float]:
        x0, y0 = self.origin
        return x0 + i * self.spacing, y0 + j * self.spacing

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Row-major x and y coordinate arrays of length m·n."""
        x0, y0 = self.origin
        jj, ii = np.divmod(np.arange(self.n_points), self.cols)
        return x0 + ii * self.spacing, y0 + jj * self.spacing

    def horiz_slot(self, i: int, j: int) -> int:
        return j * (self.cols - 1) + i

    def vert_slot(self, i: int, j: int) -> int:
        return self.n_horiz + j * self.cols + i

    def square_sides(self, s: SquareRef) -> tuple[int, int, int, int]:
        """Slots of a square's (bottom, right, top, left) edges."""
        i, j = s
        return (
            self.horiz_slot(i, j),
            self.vert_slot(i + 1, j),
            self.horiz_slot(i, j + 1),
            self.vert_slot(i, j),
        )

    def slot_endpoints(self, slot: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """(lesser, greater) grid points of an adjacency slot."""
        m = self.cols
        if slot < self.n_horiz:
            j, i = divmod(slot, m - 1)
            return (i, j), (i + 1, j)
        j, i = divmod(slot - self.n_horiz, m)
        return (i, j), (i, j + 1)

    def has_square(self, s: SquareRef) -> bool:
        return 0 <= s.i < self.cols - 1 and 0 <= s.j < self.rows - 1

    def squares(self) -> Iterator[SquareRef]:
        """All unit squares, row by row."""
        for j in range(self.rows - 1):
            for i in range(self.cols - 1):
                yield SquareRef(i, j)

    def square_center(self, s: SquareRef) -> tuple[float, float]:
        x, y = self.point(s.i, s.j)
        return x + self.spacing / 2, y + self.spacing / 2

    def locate_square(self, x: float, y: float) -> Optional[SquareRef]:
        """The square whose closed area contains (x, y), or None outside the grid."""
        x0, y0 = self.origin
        i = math.floor((x - x0) / self.spacing)
        j = math.floor((y - y0) / self.spacing)
        # points on the far edges belong to the last square
        if i == self.cols - 1:
            i -= 1
        if j == self.rows - 1:
            j -= 1
        s = SquareRef(i, j)
        return s if self.has_square(s) else None

    def to_dict(self) -> dict:
        x0, y0 = self.origin
        return {"m": self.cols, "n": self.rows, "eps": self.spacing, "x0": x0, "y0": y0}

    def __str__(self) -> str:
        return f"{self.cols}×{self.rows} grid, ε={self.spacing:g}, origin={self.origin}"


# ─── GridField ────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class GridField:
    """
    A planar vector field sampled on a GridSpec.

    ``vectors`` is a read-only float64 array of shape (m·n, 2), row-major.
    Zero vectors and parallel neighbours are accepted here; use
    ``validate_assumptions`` to report them.
    """

    spec:    GridSpec
    vectors: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.vectors, dtype=float)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GridError(f"vectors must have shape (m·n, 2), got {arr.shape}")
        if arr.shape[0] != self.spec.n_points:
            raise GridError(
                f"expected {self.spec.n_points} vectors for a "
                f"{self.spec.cols}×{self.spec.rows} grid, got {arr.shape[0]}"
            )
        if not np.all(np.isfinite(arr)):
            raise GridError("vectors must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "vectors", arr)

    def vector(self, i: int, j: int) -> np.ndarray:
        return self.vectors[self.spec.index(i, j)]

    def grid(self) -> np.ndarray:
        """Vectors reshaped to (rows, cols, 2)."""
        return self.vectors.reshape(self.spec.rows, self.spec.cols, 2)

    # ── Transforms ────────────────────────────────────────────────────────────

    def rotated(self, theta: float) -> GridField:
        """
        Rotate every vector by the same angle *theta* (radians).

        Multiples of π/2 are applied exactly (component swaps and sign flips).
        """
        quarter = float(theta) / (math.pi / 2)
        if quarter.is_integer():
            vec = self.vectors
            for _ in range(int(quarter) % 4):
                vec = np.column_stack([-vec[:, 1], vec[:, 0]])
            return GridField(self.spec, vec)
        c, s = math.cos(theta), math.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        return GridField(self.spec, self.vectors @ rot.T)

    def scaled(self, factor: float) -> GridField:
        return GridField(self.spec, self.vectors * factor)

    def negated(self) -> GridField:
        return GridField(self.spec, -self.vectors)

    def mirrored(self) -> GridField:
        """Mirror across the vertical centre line of the grid (x ↦ −x)."""
        g = self.grid()[:, ::-1, :] * np.array([-1.0, 1.0])
        return GridField(self.spec, g.reshape(-1, 2))

    # ── Serialisation ─────────────────────────────────────────────────────────

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "vectors": self.vectors.tolist()}

    # ── Dunder helpers ────────────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridField):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.vectors, other.vectors)

    def __repr__(self) -> str:
        return f"GridField({self.spec.cols}×{self.spec.rows}, eps={self.spec.spacing:g})"


# ─── SpiralParams ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SpiralParams:
    """Logarithmic-spiral field model: chirality *a*, pitch *alpha*, aspect *rho*."""

    a:      float
    alpha:  float
    rho:    float
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.a == 0:
            raise ValueError("spiral parameter a must be non-zero")
        if not 0 < self.alpha < math.pi:
            raise ValueError(f"alpha must lie in (0, π), got {self.alpha!r}")
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho!r}")
        cx, cy = self.center
        object.__setattr__(self, "center", (float(cx), float(cy)))


# ─── Validation ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Violation:
    kind:   str                          # "A1" | "A3"
    points: tuple[tuple[int, int], ...]  # one point (A3) or an adjacent pair (A1)
    detail: str = ""

    def __str__(self) -> str:
        where = " – ".join(f"({i},{j})" for i, j in self.points)
        return f"{self.kind} {where}  {self.detail}".rstrip()


@dataclass
class ValidationReport:
    violations:   list[Violation] = field(default_factory=list)
    unverifiable: tuple[str, ...] = ("A4",)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


# ─── Digraph ──────────────────────────────────────────────────────────────────

class Direction(Enum):
    FORWARD  = "F"   # left → right, bottom → top
    BACKWARD = "B"

    def reversed(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


class EdgeInfo(NamedTuple):
    direction: Direction
    weight:    float


class SquareShape(Enum):
    COHERENT_CYCLE          = "coherent-cycle"
    THREE_ONE               = "three-one"
    BOUNDARY_SQUARE         = "boundary-square"
    ALTERNATING_SOURCE_SINK = "alternating-source-sink"

    @property
    def is_boundary(self) -> bool:
        return self is SquareShape.BOUNDARY_SQUARE


@dataclass(frozen=True, eq=False)
class GridDigraph:
    """
    Angle-based ε-grid digraph: one directed, weighted edge per adjacency slot.

    ``forward[k]`` tells whether slot k points left→right / bottom→top,
    ``weights[k]`` is the absolute rotation angle in (0, π).
    """

    spec:    GridSpec
    forward: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        fwd = np.array(self.forward, dtype=bool)
        w = np.array(self.weights, dtype=float)
        if fwd.shape != (self.spec.n_edges,) or w.shape != (self.spec.n_edges,):
            raise GridError(
                f"expected {self.spec.n_edges} edge slots, "
                f"got {fwd.shape[0] if fwd.ndim else 0} directions / {w.shape[0] if w.ndim else 0} weights"
            )
        fwd.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "weights", w)

    @property
    def n_edges(self) -> int:
        return self.spec.n_edges

    # ── Slot arithmetic ───────────────────────────────────────────────────────

    def horiz_slot(self, i: int, j: int) -> int:
        return self.spec.horiz_slot(i, j)

    def vert_slot(self, i: int, j: int) -> int:
        return self.spec.vert_slot(i, j)

    def is_horizontal(self, slot: int) -> bool:
        return slot < self.spec.n_horiz

    def endpoints(self, slot: int) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.spec.slot_endpoints(slot)

    def tail(self, slot: int) -> tuple[int, int]:
        a, b = self.endpoints(slot)
        return a if self.forward[slot] else b

    def head(self, slot: int) -> tuple[int, int]:
        a, b = self.endpoints(slot)
        return b if self.forward[slot] else a

    def direction(self, slot: int) -> Direction:
        return Direction.FORWARD if self.forward[slot] else Direction.BACKWARD

    def square_edges(self, s: SquareRef) -> tuple[int, int, int, int]:
        """Slots of a square's (bottom, right, top, left) edges."""
        return self.spec.square_sides(s)

    def adjacent_squares(self, slot: int) -> list[SquareRef]:
        """The one or two unit squares that have *slot* on their boundary."""
        (i, j), _ = self.endpoints(slot)
        if self.is_horizontal(slot):
            cands = [SquareRef(i, j - 1), SquareRef(i, j)]
        else:
            cands = [SquareRef(i - 1, j), SquareRef(i, j)]
        return [s for s in cands if self.spec.has_square(s)]

    def slot_midpoint(self, slot: int) -> tuple[float, float]:
        (ia, ja), (ib, jb) = self.endpoints(slot)
        xa, ya = self.spec.point(ia, ja)
        xb, yb = self.spec.point(ib, jb)
        return (xa + xb) / 2, (ya + yb) / 2

    # ── Export views ──────────────────────────────────────────────────────────

    @property
    def horiz_edges(self) -> list[EdgeInfo]:
        return [EdgeInfo(self.direction(k), float(self.weights[k]))
                for k in range(self.spec.n_horiz)]

    @property
    def vert_edges(self) -> list[EdgeInfo]:
        return [EdgeInfo(self.direction(k), float(self.weights[k]))
                for k in range(self.spec.n_horiz, self.spec.n_edges)]

    def to_dict(self) -> dict:
        def enc(edges: list[EdgeInfo]) -> list[dict]:
            return [{"dir": e.direction.value, "w": e.weight} for e in edges]
        return {
            "spec":        self.spec.to_dict(),
            "horiz_edges": enc(self.horiz_edges),
            "vert_edges":  enc(self.vert_edges),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridDigraph):
            return NotImplemented
        return (self.spec == other.spec
                and np.array_equal(self.forward, other.forward)
                and np.array_equal(self.weights, other.weights))

    def __repr__(self) -> str:
        return f"GridDigraph({self.spec.cols}×{self.spec.rows}, {self.n_edges} edges)"


@dataclass(frozen=True)
class LineCoherence:
    """Shared direction of every row / column of edges, or None where mixed."""

    rows:    tuple[Optional[Direction], ...]   # horizontal line j
    columns: tuple[Optional[Direction], ...]   # vertical line i

    @property
    def coherent(self) -> bool:
        return all(d is not None for d in (*self.rows, *self.columns))


# ─── Persistence ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Filtration:
    edges_sorted: tuple[int, ...]     # slot order of insertion
    thresholds:   tuple[float, ...]   # distinct weights, ascending


@dataclass(frozen=True)
class PersistencePair:
    birth:     float
    death:     float                      # math.inf for essential classes
    creator:   int                        # edge slot
    destroyer: Optional[SquareRef] = None

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    """One-dimensional persistence diagram, zero-persistence pairs excluded."""

    pairs: tuple[PersistencePair, ...] = ()

    @property
    def points(self) -> list[tuple[float, float]]:
        return [(p.birth, p.death) for p in self.pairs]

    @property
    def essential(self) -> list[PersistencePair]:
        return [p for p in self.pairs if p.essential]

    @property
    def finite(self) -> list[PersistencePair]:
        return [p for p in self.pairs if not p.essential]

    def betti_at(self, delta: float) -> int:
        """Number of classes alive at threshold *delta* (b ≤ δ < d)."""
        return sum(1 for p in self.pairs if p.birth <= delta < p.death)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self) -> str:
        return f"Dgm₁: {len(self.finite)} finite, {len(self.essential)} essential"


@dataclass(frozen=True)
class SmallDigraph:
    """Simple digraph on vertices 0..n_vertices−1 (no loops, no multi-edges)."""

    n_vertices: int
    edges:      tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        if len(set(edges)) != len(edges):
            raise GridError("duplicate edge in SmallDigraph")
        for a, b in edges:
            if a == b:
                raise GridError(f"loop at vertex {a} in SmallDigraph")
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise GridError(f"edge ({a}, {b}) outside 0..{self.n_vertices - 1}")
        object.__setattr__(self, "edges", edges)


# ─── Singularities and polygons ───────────────────────────────────────────────

@dataclass(frozen=True)
class SingularityReport:
    square:         SquareRef
    index:          int
    center:         tuple[float, float]
    trigger_weight: float
    edge_weights:   tuple[float, float, float, float]   # bottom, right, top, left

    def __str__(self) -> str:
        x, y = self.center
        return f"{self.square}  index {self.index:+d}  at ({x:.6g}, {y:.6g})"


@dataclass(frozen=True)
class ReducedDigraph:
    spec:  GridSpec
    edges: frozenset[int]


@dataclass(frozen=True)
class Face:
    """Bounded face of a planar grid subgraph."""

    loop:     tuple[tuple[int, int], ...]   # outer boundary, counterclockwise
    squares:  frozenset[SquareRef]          # cells of the face itself
    enclosed: frozenset[SquareRef]          # cells inside the outer boundary


@dataclass(frozen=True)
class SingularPolygon:
    loop:            tuple[tuple[int, int], ...]
    birth_weight:    float
    enclosed_square: SquareRef
    index:           int = 1
    enclosed:        frozenset[SquareRef] = frozenset()

    def to_dict(self) -> dict:
        return {
            "loop":            [list(p) for p in self.loop],
            "birth_weight":    self.birth_weight,
            "enclosed_square": list(self.enclosed_square),
        }


# ─── Distances ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DiagramDistanceResult:
    value:    float
    matching: Optional[tuple[tuple[Optional[int], Optional[int]], ...]] = None

    def __float__(self) -> float:
        return self.value


# ─── Pipeline result ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Analysis:
    """Everything one pass of `pphx.analyze` produces for a single field."""

    field:    GridField
    digraph:  GridDigraph
    diagram:  PersistenceDiagram
    reports:  tuple[SingularityReport, ...]
    polygons: tuple[Optional[SingularPolygon], ...]   # parallel to reports; None if not found

    def __str__(self) -> str:
        found = sum(1 for p in self.polygons if p is not None)
        return (f"{self.field!r}: {self.diagram}, {len(self.reports)} singularit"
                f"{'y' if len(self.reports) == 1 else 'ies'}, {found} polygon(s)")
