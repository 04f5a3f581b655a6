"""
pphx._distance
==============
Distances between one-dimensional persistence diagrams.

Finite points are matched with the usual augmented cost matrix: point to
point costs the L∞ distance, point to diagonal costs half its persistence.
Essential points (death = ∞) are matched only among themselves, in order of
birth; diagrams with different numbers of them are infinitely far apart.

bottleneck_distance(pd1, pd2)         binary search + maximum bipartite matching
wasserstein_distance(pd1, pd2, q)     optimal assignment
distance_series(fields)               bottleneck between neighbouring time steps
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial.distance import cdist

from ._digraph import build_grid_digraph
from ._errors import SpecMismatch
from ._field import PARALLEL_TOL
from ._log import dbg, c, C
from ._pph import compute_pd1
from .models import DiagramDistanceResult, GridField, PersistenceDiagram

Matching = tuple[tuple[int | None, int | None], ...]


# ─── Diagram pieces ───────────────────────────────────────────────────────────

def _split(pd: PersistenceDiagram) -> tuple[list[int], np.ndarray, list[int]]:
    """(indices of finite pairs, their (birth, death) array, essential indices by birth)."""
    finite = [k for k, p in enumerate(pd.pairs) if not p.essential]
    points = np.array([[pd.pairs[k].birth, pd.pairs[k].death] for k in finite], dtype=float)
    essential = sorted((k for k, p in enumerate(pd.pairs) if p.essential),
                       key=lambda k: (pd.pairs[k].birth, k))
    return finite, points.reshape(-1, 2), essential


def _augmented_costs(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """
    (n1+n2) × (n2+n1) cost matrix.

    Rows are the points of p1 followed by diagonal slots for p2; columns are
    the points of p2 followed by diagonal slots for p1.
    """
    n1, n2 = len(p1), len(p2)
    cost = np.full((n1 + n2, n2 + n1), np.inf)
    if n1 and n2:
        cost[:n1, :n2] = cdist(p1, p2, metric="chebyshev")
    if n1:
        cost[np.arange(n1), n2 + np.arange(n1)] = (p1[:, 1] - p1[:, 0]) / 2
    if n2:
        cost[n1 + np.arange(n2), np.arange(n2)] = (p2[:, 1] - p2[:, 0]) / 2
    cost[n1:, n2:] = 0.0
    return cost


def _decode(rows, cols, n1: int, n2: int, finite1: list[int], finite2: list[int],
            ess1: list[int], ess2: list[int]) -> Matching:
    out: list[tuple[int | None, int | None]] = []
    for r, col in zip(rows, cols):
        r, col = int(r), int(col)
        if r < n1:
            out.append((finite1[r], finite2[col] if col < n2 else None))
        elif col < n2:
            out.append((None, finite2[col]))
    out.extend(zip(ess1, ess2))
    return tuple(out)


def _essential_gaps(pd1: PersistenceDiagram, ess1: list[int],
                    pd2: PersistenceDiagram, ess2: list[int]) -> np.ndarray:
    return np.array([abs(pd1.pairs[a].birth - pd2.pairs[b].birth) for a, b in zip(ess1, ess2)])


# ─── Bottleneck ───────────────────────────────────────────────────────────────

def _perfect_matching(allowed: np.ndarray) -> np.ndarray | None:
    """Column matched to each row, or None when some row stays unmatched."""
    match = maximum_bipartite_matching(csr_matrix(allowed), perm_type="column")
    return None if (match < 0).any() else match


def bottleneck_distance(pd1: PersistenceDiagram, pd2: PersistenceDiagram) -> DiagramDistanceResult:
    """
    Bottleneck distance with L∞ ground metric.

    The value is the least candidate cost t at which the graph of entries
    ≤ t has a perfect matching.  ``math.inf`` when the essential counts differ.
    """
    finite1, p1, ess1 = _split(pd1)
    finite2, p2, ess2 = _split(pd2)
    if len(ess1) != len(ess2):
        dbg(c(f"  ▸ bottleneck: {len(ess1)} vs {len(ess2)} essential points → ∞", C.DIM))
        return DiagramDistanceResult(math.inf)

    gaps = _essential_gaps(pd1, ess1, pd2, ess2)
    ess_cost = float(gaps.max()) if gaps.size else 0.0

    n1, n2 = len(p1), len(p2)
    if n1 + n2 == 0:
        return DiagramDistanceResult(ess_cost, _decode([], [], 0, 0, [], [], ess1, ess2))

    cost = _augmented_costs(p1, p2)
    candidates = np.unique(cost[np.isfinite(cost)])
    lo, hi = 0, len(candidates) - 1
    best = _perfect_matching(cost <= candidates[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        match = _perfect_matching(cost <= candidates[mid])
        if match is None:
            lo = mid + 1
        else:
            hi, best = mid, match
    finite_cost = float(candidates[hi])

    matching = _decode(np.arange(len(best)), best, n1, n2, finite1, finite2, ess1, ess2)
    value = max(finite_cost, ess_cost)
    dbg(c(f"  ▸ bottleneck over {n1}+{n2} finite points = {value:.6g}", C.DIM))
    return DiagramDistanceResult(value, matching)


# ─── Wasserstein ──────────────────────────────────────────────────────────────

def wasserstein_distance(
    pd1: PersistenceDiagram,
    pd2: PersistenceDiagram,
    q: float = 1.0,
) -> DiagramDistanceResult:
    """
    q-Wasserstein distance with L∞ ground metric, q ≥ 1.

    Essential points contribute |Δbirth|^q.  ``math.inf`` when the essential
    counts differ.
    """
    if not q >= 1:
        raise ValueError(f"Wasserstein order q must be ≥ 1, got {q!r}")
    finite1, p1, ess1 = _split(pd1)
    finite2, p2, ess2 = _split(pd2)
    if len(ess1) != len(ess2):
        return DiagramDistanceResult(math.inf)

    gaps = _essential_gaps(pd1, ess1, pd2, ess2)
    n1, n2 = len(p1), len(p2)
    cost = _augmented_costs(p1, p2)
    finite_entries = cost[np.isfinite(cost)]

    # normalise before raising to the q-th power
    scale = max(float(finite_entries.max()) if finite_entries.size else 0.0,
                float(gaps.max()) if gaps.size else 0.0)
    if scale == 0.0:
        scale = 1.0

    total = float(np.sum((gaps / scale) ** q)) if gaps.size else 0.0
    rows = cols = np.arange(0)
    if n1 + n2:
        allowed = np.isfinite(cost)
        powered = np.zeros_like(cost)
        powered[allowed] = (cost[allowed] / scale) ** q
        powered[~allowed] = float(powered.sum()) + 1.0
        rows, cols = linear_sum_assignment(powered)
        total += float(powered[rows, cols].sum())

    value = scale * total ** (1.0 / q)
    return DiagramDistanceResult(value, _decode(rows, cols, n1, n2, finite1, finite2, ess1, ess2))


# ─── Time series ──────────────────────────────────────────────────────────────

def compute_field_diagram(field: GridField, tol: float = PARALLEL_TOL) -> PersistenceDiagram:
    """field → grid digraph → one-dimensional diagram."""
    return compute_pd1(build_grid_digraph(field, tol))


def distance_series(
    fields: Sequence[GridField],
    pool_size: int = 1,
    tol: float = PARALLEL_TOL,
) -> list[tuple[int, float]]:
    """
    ``(k, bottleneck(Dgm(fields[k]), Dgm(fields[k-1])))`` for k = 1..N−1.

    Diagrams are computed in a process pool of *pool_size* workers when it
    is larger than one.  Raises SpecMismatch unless every field shares the
    first field's grid.
    """
    fields = list(fields)
    if not fields:
        return []
    spec = fields[0].spec
    for k, f in enumerate(fields[1:], start=1):
        if f.spec != spec:
            raise SpecMismatch(f"field {k} is on {f.spec}, field 0 on {spec}")

    work = partial(compute_field_diagram, tol=tol)
    if pool_size > 1 and len(fields) > 1:
        with ProcessPoolExecutor(max_workers=pool_size) as ex:
            diagrams = list(ex.map(work, fields))
    else:
        diagrams = [work(f) for f in fields]

    series = [(k, bottleneck_distance(diagrams[k], diagrams[k - 1]).value)
              for k in range(1, len(diagrams))]
    dbg(c(f"  ▸ series over {len(fields)} fields (pool_size={pool_size})", C.DIM))
    return series
