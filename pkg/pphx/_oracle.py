"""
pphx._oracle
============
Exact path homology of small simple digraphs, by brute force.

This is the reference the fast grid persistence is checked against.  It
enumerates allowed 1- and 2-paths, computes the ∂-invariant 2-paths Ω₂ as an
exact kernel over the rationals and returns

    dim H₁ = dim ker ∂₁ − rank ∂(Ω₂)

oracle_h1_dim(g)             → int
oracle_betti_curve(dg)       → {δ: dim H₁(G^δ)}
to_small_digraph(dg, δ)      → SmallDigraph
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from fractions import Fraction

from ._errors import ScaleError
from ._log import dbg, c, C
from .models import GridDigraph, SmallDigraph

ORACLE_MAX_VERTICES = 64

Vector = dict[int, Fraction]


# ─── Exact sparse linear algebra ──────────────────────────────────────────────

def _eliminate(columns: Sequence[Vector]) -> tuple[int, list[Vector]]:
    """
    Gaussian elimination on sparse rational column vectors.

    Returns the rank and a kernel basis; each kernel vector is a combination
    of the input columns, keyed by column number.
    """
    pivots: dict[int, tuple[Vector, Vector]] = {}     # row → (reduced column, combination)
    kernel: list[Vector] = []
    for k, col in enumerate(columns):
        vec = {r: Fraction(x) for r, x in col.items() if x != 0}
        combo: Vector = {k: Fraction(1)}
        while vec:
            row = max(vec)
            if row not in pivots:
                pivots[row] = (vec, combo)
                break
            pvec, pcombo = pivots[row]
            factor = vec[row] / pvec[row]
            for r, x in pvec.items():
                y = vec.get(r, 0) - factor * x
                if y:
                    vec[r] = y
                else:
                    vec.pop(r, None)
            for r, x in pcombo.items():
                y = combo.get(r, 0) - factor * x
                if y:
                    combo[r] = y
                else:
                    combo.pop(r, None)
        else:
            kernel.append(combo)
    return len(pivots), kernel


def _rank(columns: Sequence[Vector]) -> int:
    return _eliminate(columns)[0]


# ─── Path homology ────────────────────────────────────────────────────────────

def oracle_h1_dim(g: SmallDigraph) -> int:
    """
    Exact dim H₁ of *g* over ℚ (regular GLMY path homology).

    Raises ScaleError above ORACLE_MAX_VERTICES vertices.
    """
    if g.n_vertices > ORACLE_MAX_VERTICES:
        raise ScaleError(
            f"oracle limited to {ORACLE_MAX_VERTICES} vertices, digraph has {g.n_vertices}"
        )
    edges = list(g.edges)
    if not edges:
        return 0
    edge_id = {e: k for k, e in enumerate(edges)}
    out: dict[int, list[int]] = defaultdict(list)
    for a, b in edges:
        out[a].append(b)

    # ∂₁ e_ab = e_b − e_a
    d1 = [{b: Fraction(1), a: Fraction(-1)} for a, b in edges]
    rank_d1 = _rank(d1)

    # allowed 2-paths a→b→c; (a, a, …) terms are non-regular and vanish
    paths2 = [(a, b, cc) for a, b in edges for cc in out[b]]
    boundaries: list[Vector] = []
    outside: dict[tuple[int, int], int] = {}           # non-allowed (a, c) → row
    constraints: list[Vector] = []
    for a, b, cc in paths2:
        bd: Vector = {}
        extra: Vector = {}
        for (x, y), sign in (((b, cc), 1), ((a, cc), -1), ((a, b), 1)):
            if x == y:
                continue
            if (x, y) in edge_id:
                k = edge_id[(x, y)]
                bd[k] = bd.get(k, 0) + sign
            else:
                row = outside.setdefault((x, y), len(outside))
                extra[row] = extra.get(row, 0) + sign
        boundaries.append(bd)
        constraints.append(extra)

    # Ω₂ = kernel of the non-allowed component of ∂
    _, omega2 = _eliminate(constraints)
    images: list[Vector] = []
    for combo in omega2:
        img: Vector = {}
        for p, coeff in combo.items():
            for k, x in boundaries[p].items():
                img[k] = img.get(k, 0) + coeff * x
        images.append(img)
    rank_d2 = _rank(images)

    h1 = (len(edges) - rank_d1) - rank_d2
    dbg(c(f"  ▸ oracle: |V|={g.n_vertices} |E|={len(edges)} |A₂|={len(paths2)} "
          f"dim Ω₂={len(omega2)} → dim H₁={h1}", C.DIM))
    return h1


# ─── Grid bridge ──────────────────────────────────────────────────────────────

def to_small_digraph(dg: GridDigraph, threshold: float = math.inf) -> SmallDigraph:
    """Edges of *dg* with weight ≤ *threshold*, vertices numbered row-major."""
    spec = dg.spec
    edges = []
    for slot in range(dg.n_edges):
        if dg.weights[slot] <= threshold:
            edges.append((spec.index(*dg.tail(slot)), spec.index(*dg.head(slot))))
    return SmallDigraph(spec.n_points, tuple(edges))


def oracle_betti_curve(dg: GridDigraph, thresholds: Iterable[float] | None = None) -> dict[float, int]:
    """
    dim H₁(G^δ) for every distinct edge weight δ of *dg*, or for the given
    *thresholds*.
    """
    if dg.spec.n_points > ORACLE_MAX_VERTICES:
        raise ScaleError(
            f"oracle limited to {ORACLE_MAX_VERTICES} vertices, grid has {dg.spec.n_points}"
        )
    deltas = sorted({float(w) for w in dg.weights}) if thresholds is None else list(thresholds)
    return {float(d): oracle_h1_dim(to_small_digraph(dg, d)) for d in deltas}
