"""
pphx._pph
=========
One-dimensional persistent path homology of a grid digraph.

A grid digraph has no bigons and no triangles, so its one-dimensional
boundaries are spanned by the BOUNDARY_SQUARE squares alone.  The weight
filtration is therefore computed as ordinary persistence of a 2-complex:

    1-skeleton  every grid edge, entering at its weight
    2-cells     every BOUNDARY_SQUARE square, entering at the largest weight
                among its four edges, after those edges

Births come from a union-find pass (an edge closing a cycle is positive),
deaths from GF(2) reduction of the square columns.

build_filtration(dg)  → Filtration
compute_pd1(dg)       → PersistenceDiagram
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ._digraph import classify_square
from ._log import dbg, c, C
from .models import (
    Filtration,
    GridDigraph,
    PersistenceDiagram,
    PersistencePair,
    SquareRef,
)


# ─── Filtration ───────────────────────────────────────────────────────────────

def _edge_order(dg: GridDigraph, tie_break: Sequence[int] | None) -> np.ndarray:
    slots = np.arange(dg.n_edges)
    if tie_break is None:
        return np.lexsort((slots, dg.weights))
    ranks = np.asarray(tie_break)
    if ranks.shape != (dg.n_edges,):
        raise ValueError(f"tie_break needs one rank per edge slot ({dg.n_edges}), got {ranks.shape}")
    return np.lexsort((slots, ranks, dg.weights))


def build_filtration(dg: GridDigraph, tie_break: Sequence[int] | None = None) -> Filtration:
    """
    Edge slots ordered by (weight, tie rank, slot) and the distinct weights.

    *tie_break* gives one integer rank per slot; it only matters between
    edges of equal weight.  Without it equal weights fall back to slot order.
    """
    order = _edge_order(dg, tie_break)
    return Filtration(
        edges_sorted=tuple(int(k) for k in order),
        thresholds=tuple(float(w) for w in np.unique(dg.weights)),
    )


# ─── Union-find ───────────────────────────────────────────────────────────────

class _UnionFind:
    """Disjoint sets over grid points; path compression and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of *a* and *b*; False when they were already one set."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


# ─── Persistence ──────────────────────────────────────────────────────────────

def compute_pd1(dg: GridDigraph, tie_break: Sequence[int] | None = None) -> PersistenceDiagram:
    """
    One-dimensional persistence diagram of the weight filtration of *dg*.

    Pairs with birth == death are dropped; classes that never die get
    ``death = math.inf``.  Pairs are sorted by (birth, death, creator).
    The (birth, death) multiset does not depend on *tie_break*.
    """
    spec = dg.spec
    weights = dg.weights
    filt = build_filtration(dg, tie_break)

    position = np.empty(dg.n_edges, dtype=np.int64)       # slot → filtration position
    position[np.array(filt.edges_sorted, dtype=np.int64)] = np.arange(dg.n_edges)

    # births
    uf = _UnionFind(spec.n_points)
    positive: list[int] = []
    for slot in filt.edges_sorted:
        a, b = spec.slot_endpoints(slot)
        if not uf.union(spec.index(*a), spec.index(*b)):
            positive.append(slot)

    # 2-cells: boundary squares by (entry weight, lattice order)
    cells: list[tuple[float, int, SquareRef, set[int]]] = []
    for idx, s in enumerate(spec.squares()):
        if not classify_square(dg, s).is_boundary:
            continue
        edges = dg.square_edges(s)
        cells.append((
            max(float(weights[e]) for e in edges),
            idx,
            s,
            {int(position[e]) for e in edges},
        ))
    cells.sort(key=lambda cell: (cell[0], cell[1]))

    # deaths: GF(2) column reduction, low = youngest edge in the column
    pivots: dict[int, set[int]] = {}
    killed: dict[int, tuple[float, SquareRef]] = {}
    for value, _, s, column in cells:
        while column:
            low = max(column)
            if low not in pivots:
                pivots[low] = column
                killed[filt.edges_sorted[low]] = (value, s)
                break
            column = column ^ pivots[low]

    pairs: list[PersistencePair] = []
    dropped = 0
    for slot in positive:
        birth = float(weights[slot])
        if slot in killed:
            death, square = killed[slot]
            if death == birth:
                dropped += 1
                continue
            pairs.append(PersistencePair(birth, death, slot, square))
        else:
            pairs.append(PersistencePair(birth, math.inf, slot))
    pairs.sort(key=lambda p: (p.birth, p.death, p.creator))

    pd = PersistenceDiagram(tuple(pairs))
    dbg(c(f"  ▸ {pd}  ({len(positive)} cycles, {len(cells)} boundary squares, "
          f"{dropped} zero-persistence pairs dropped)", C.DIM))
    return pd
