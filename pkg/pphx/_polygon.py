"""
pphx._polygon
=============
Reduced digraphs, faces and singular polygons.

reduce_digraph(edges, spec)       → ReducedDigraph   (pendant edges peeled off)
faces_of_subgraph(edges, spec)    → list[Face]       (bounded faces)
threshold_subgraph(dg, w)         → frozenset[int]   (slots with weight ≤ w)
extract_singular_polygon(...)     → SingularPolygon

Faces are found on the dual side: unit squares are flood-filled across the
grid sides that are *not* in the subgraph.  A region that reaches past the
grid border is the unbounded face; every other region is a bounded face.
Its outer boundary is the counterclockwise boundary of the region with its
holes filled in, which is always a simple cycle of subgraph edges.
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable, Iterator

from ._errors import PolygonNotFound, SpecMismatch
from ._log import dbg, c, C
from ._singular import loop_winding_number
from .models import (
    Face,
    GridDigraph,
    GridField,
    GridSpec,
    PersistenceDiagram,
    ReducedDigraph,
    SingularPolygon,
    SingularityReport,
    SquareRef,
)

_OUTSIDE = None   # the virtual square beyond the grid border


# ─── Threshold sub-digraphs ───────────────────────────────────────────────────

def threshold_subgraph(dg: GridDigraph, w: float) -> frozenset[int]:
    """Edge slots of *dg* with weight ≤ *w*."""
    return frozenset(int(k) for k in range(dg.n_edges) if dg.weights[k] <= w)


# ─── Reduction ────────────────────────────────────────────────────────────────

def reduce_digraph(edges: Iterable[int], spec: GridSpec) -> ReducedDigraph:
    """
    Largest sub-graph of *edges* without pendant edges.

    Edges at vertices of degree 1 are removed until none are left; the result
    does not depend on the removal order.
    """
    kept = set(edges)
    for slot in kept:
        if not 0 <= slot < spec.n_edges:
            raise IndexError(f"slot {slot} outside {spec}")

    incident: dict[tuple[int, int], set[int]] = defaultdict(set)
    for slot in kept:
        a, b = spec.slot_endpoints(slot)
        incident[a].add(slot)
        incident[b].add(slot)

    queue = deque(v for v, slots in incident.items() if len(slots) == 1)
    while queue:
        v = queue.popleft()
        if len(incident[v]) != 1:
            continue
        slot = incident[v].pop()
        kept.discard(slot)
        a, b = spec.slot_endpoints(slot)
        other = b if a == v else a
        incident[other].discard(slot)
        if len(incident[other]) == 1:
            queue.append(other)

    return ReducedDigraph(spec, frozenset(kept))


# ─── Faces ────────────────────────────────────────────────────────────────────

def _across(spec: GridSpec, s: SquareRef) -> Iterator[tuple[int, SquareRef | None]]:
    """(side slot, square on the other side) for the four sides of *s*."""
    i, j = s
    bottom, right, top, left = spec.square_sides(s)
    for slot, other in (
        (bottom, SquareRef(i, j - 1)),
        (right,  SquareRef(i + 1, j)),
        (top,    SquareRef(i, j + 1)),
        (left,   SquareRef(i - 1, j)),
    ):
        yield slot, (other if spec.has_square(other) else _OUTSIDE)


def _region(spec: GridSpec, edges: frozenset[int], start: SquareRef) -> tuple[set[SquareRef], bool]:
    """Squares reachable from *start* without crossing *edges*; and whether
    the region escapes past the grid border."""
    seen = {start}
    queue = deque([start])
    unbounded = False
    while queue:
        s = queue.popleft()
        for slot, other in _across(spec, s):
            if slot in edges:
                continue
            if other is _OUTSIDE:
                unbounded = True
            elif other not in seen:
                seen.add(other)
                queue.append(other)
    return seen, unbounded


def _fill_holes(spec: GridSpec, region: set[SquareRef]) -> frozenset[SquareRef]:
    """*region* plus every square it cuts off from the grid border."""
    outside = set()
    queue = deque()
    for s in spec.squares():
        if s in region:
            continue
        if any(other is _OUTSIDE for _, other in _across(spec, s)):
            outside.add(s)
            queue.append(s)
    while queue:
        s = queue.popleft()
        for _, other in _across(spec, s):
            if other is not _OUTSIDE and other not in region and other not in outside:
                outside.add(other)
                queue.append(other)
    return frozenset(s for s in spec.squares() if s not in outside)


def _outer_loop(filled: frozenset[SquareRef]) -> tuple[tuple[int, int], ...]:
    """Counterclockwise boundary of a hole-free square set, from its least vertex."""
    half_edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for s in filled:
        corners = s.corners()
        for k in range(4):
            half_edges.add((corners[k], corners[(k + 1) % 4]))
    succ = {a: b for a, b in half_edges if (b, a) not in half_edges}

    start = min(succ)
    loop = [start]
    v = succ[start]
    while v != start:
        loop.append(v)
        v = succ[v]
    return tuple(loop)


def _make_face(spec: GridSpec, region: set[SquareRef]) -> Face:
    filled = _fill_holes(spec, region)
    return Face(loop=_outer_loop(filled), squares=frozenset(region), enclosed=filled)


def face_containing(edges: Iterable[int], spec: GridSpec, s: SquareRef) -> Face | None:
    """The bounded face whose own squares include *s*, or None if *s* is in the unbounded face."""
    if not spec.has_square(s):
        raise IndexError(f"{s} outside {spec}")
    region, unbounded = _region(spec, frozenset(edges), s)
    return None if unbounded else _make_face(spec, region)


def faces_of_subgraph(edges: Iterable[int], spec: GridSpec) -> list[Face]:
    """Every bounded face of the planar sub-graph *edges*, ordered by least square."""
    edge_set = frozenset(edges)
    faces: list[Face] = []
    assigned: set[SquareRef] = set()
    for s in spec.squares():
        if s in assigned:
            continue
        region, unbounded = _region(spec, edge_set, s)
        assigned |= region
        if not unbounded:
            faces.append(_make_face(spec, region))
    faces.sort(key=lambda f: min(f.squares))
    return faces


# ─── Singular polygon ─────────────────────────────────────────────────────────

def extract_singular_polygon(
    field: GridField,
    dg: GridDigraph,
    pd: PersistenceDiagram,
    report: SingularityReport,
) -> SingularPolygon:
    """
    Earliest face of the reduced threshold sub-graph that contains the
    reported square and has index +1.

    Thresholds are the essential births of *pd*, smallest first.  Raises
    PolygonNotFound when no threshold yields such a face.
    """
    if field.spec != dg.spec:
        raise SpecMismatch(f"field on {field.spec} but digraph on {dg.spec}")
    spec = dg.spec
    s = report.square
    if not spec.has_square(s):
        raise IndexError(f"{s} outside {spec}")

    for w in sorted({p.birth for p in pd.essential}):
        reduced = reduce_digraph(threshold_subgraph(dg, w), spec)
        face = face_containing(reduced.edges, spec, s)
        if face is None:
            continue
        index = loop_winding_number(field, face.loop)
        dbg(c(f"  ▸ w={w:.6g}: face of {s} has {len(face.enclosed)} square(s), index {index:+d}", C.DIM))
        if index == 1:
            return SingularPolygon(
                loop=face.loop,
                birth_weight=w,
                enclosed_square=s,
                index=1,
                enclosed=face.enclosed,
            )
    raise PolygonNotFound(f"no index +1 face around {s} at any essential threshold")
