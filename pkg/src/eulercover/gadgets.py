"""Matching gadgets: a second, independent route to r-orientation and r-factor counts.

``build_schrijver_star`` turns r-orientations into perfect matchings of a
bipartite graph (edge-vertices against r_v copies of each vertex);
``build_tutte_doublestar`` does the same for r-factors with split
edge-vertices.  In both cases pm(gadget) = count * prod(r_v!).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .covers import LiftedGraph, induced_degree_vector
from .graph import CapExceeded, Multigraph

PERMANENT_DIM_CAP = 26
MATCHING_VERTEX_CAP = 40


@dataclass(frozen=True)
class BipartiteGraph:
    p: int
    q: int
    matrix: tuple[tuple[int, ...], ...]   # p x q multiplicities

    def as_multigraph(self) -> Multigraph:
        """Left vertices 0..p-1, right vertices p..p+q-1; edges row-major."""
        edges = []
        for i, row in enumerate(self.matrix):
            for j, mult in enumerate(row):
                edges.extend([(i, self.p + j)] * mult)
        return Multigraph(self.p + self.q, tuple(edges))


# provenance entries: ("edge", e) | ("half", e, endpoint) | ("copy", v, i)
GadgetMap = list


def _check_r(G: Multigraph, r: Sequence[int]):
    if len(r) != G.n:
        raise ValueError("degree vector does not match the graph")
    if any(x < 0 for x in r):
        raise ValueError(f"negative entry in degree vector {list(r)}")


def _copies(r: Sequence[int]) -> list[tuple[int, int]]:
    return [(v, i) for v in range(len(r)) for i in range(r[v])]


def build_schrijver_star(G: Multigraph, r: Sequence[int]) -> tuple[BipartiteGraph, GadgetMap]:
    _check_r(G, r)
    copies = _copies(r)
    matrix = tuple(
        tuple(1 if w in (u, v) else 0 for w, _ in copies)
        for u, v in G.edges
    )
    prov = [("edge", e) for e in range(G.m)] + [("copy", v, i) for v, i in copies]
    return BipartiteGraph(G.m, len(copies), matrix), prov


def build_tutte_doublestar(G: Multigraph, r: Sequence[int]) -> tuple[Multigraph, GadgetMap]:
    """Vertex ``2e`` is the half of edge e at its first endpoint, ``2e+1`` at its second.

    The two halves of each edge are joined; every copy of u is joined to each
    half lying at u (one per incident edge instance, so parallel edges give
    separate halves).
    """
    _check_r(G, r)
    copies = _copies(r)
    base = 2 * G.m
    first_copy = {}
    for idx, (v, i) in enumerate(copies):
        first_copy.setdefault(v, base + idx)
    edges = [(2 * e, 2 * e + 1) for e in range(G.m)]
    for e, (u, v) in enumerate(G.edges):
        for side, w in ((0, u), (1, v)):
            for i in range(r[w]):
                edges.append((first_copy[w] + i, 2 * e + side))
    prov = []
    for e, (u, v) in enumerate(G.edges):
        prov += [("half", e, u), ("half", e, v)]
    prov += [("copy", v, i) for v, i in copies]
    return Multigraph(base + len(copies), tuple(edges)), prov


def permanent(M: Sequence[Sequence[int]]) -> int:
    """Ryser's formula, visiting column subsets in Gray-code order.

    Each step toggles one column and updates the row sums in O(n).
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("permanent needs a square matrix")
    if n > PERMANENT_DIM_CAP:
        raise CapExceeded("matrix dimension", n, PERMANENT_DIM_CAP)
    if n == 0:
        return 1
    cols = [[int(M[i][j]) for i in range(n)] for j in range(n)]
    if any(x < 0 for c in cols for x in c):
        raise ValueError("permanent expects nonnegative entries")
    rowsum = [0] * n
    inset = [False] * n
    total = 0
    for step in range(1, 1 << n):
        j = (step & -step).bit_length() - 1
        col = cols[j]
        if inset[j]:
            for i in range(n):
                rowsum[i] -= col[i]
        else:
            for i in range(n):
                rowsum[i] += col[i]
        inset[j] = not inset[j]
        prod = math.prod(rowsum)
        if prod:
            size = bin(step ^ (step >> 1)).count("1")
            total += -prod if size % 2 else prod
    return -total if n % 2 else total


def count_perfect_matchings(G: Multigraph) -> int:
    """Branch on a minimum-degree vertex; split into components, memoized on vertex sets."""
    n = G.n
    if n > MATCHING_VERTEX_CAP:
        raise CapExceeded("vertex count", n, MATCHING_VERTEX_CAP)
    if n % 2:
        return 0
    mult = [dict() for _ in range(n)]
    for u, v in G.edges:
        mult[u][v] = mult[u].get(v, 0) + 1
        mult[v][u] = mult[v].get(u, 0) + 1
    nbr_mask = [sum(1 << w for w in mult[v]) for v in range(n)]

    def split(mask: int) -> list[int]:
        comps = []
        while mask:
            seed = mask & -mask
            comp = frontier = seed
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                v = low.bit_length() - 1
                new = nbr_mask[v] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            mask &= ~comp
        return comps

    @lru_cache(maxsize=None)
    def pm(mask: int) -> int:
        if not mask:
            return 1
        comps = split(mask)
        if any(bin(c).count("1") % 2 for c in comps):
            return 0
        if len(comps) > 1:
            out = 1
            for c in comps:
                out *= pm_connected(c)
                if not out:
                    return 0
            return out
        return pm_connected(mask)

    @lru_cache(maxsize=None)
    def pm_connected(mask: int) -> int:
        best, best_deg = -1, n + 1
        m = mask
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            deg = bin(nbr_mask[v] & mask).count("1")
            if deg < best_deg:
                best, best_deg = v, deg
        if best_deg == 0:
            return 0
        rest = mask & ~(1 << best)
        total = 0
        for w, k in mult[best].items():
            if rest >> w & 1:
                total += k * pm(rest & ~(1 << w))
        return total

    return pm((1 << n) - 1)


def factorial_product(r: Sequence[int]) -> int:
    if any(x < 0 for x in r):
        raise ValueError(f"negative entry in degree vector {list(r)}")
    return math.prod(math.factorial(x) for x in r)


def star_cover_maps(L: LiftedGraph, r: Sequence[int]):
    """Schrijver gadgets of a lift and its base, with the projection between them.

    Returns ``(H_star, G_star, vertex_map, edge_map)`` where both gadgets are
    given as multigraphs (see :meth:`BipartiteGraph.as_multigraph`).
    """
    G, H = L.base, L.H
    rH = induced_degree_vector(r, L)
    g_bip, g_prov = build_schrijver_star(G, r)
    h_bip, h_prov = build_schrijver_star(H, rH)
    g_star, h_star = g_bip.as_multigraph(), h_bip.as_multigraph()
    g_index = {p: i for i, p in enumerate(g_prov)}
    vmap = []
    for p in h_prov:
        if p[0] == "edge":
            vmap.append(g_index[("edge", L.projection[p[1]])])
        else:
            vmap.append(g_index[("copy", L.layer[p[1]][0], p[2])])
    g_edge = {e: i for i, e in enumerate(g_star.edges)}
    emap = [g_edge[(vmap[a], vmap[b])] for a, b in h_star.edges]
    return h_star, g_star, vmap, emap


def gadget_to_json(which: str, r: Sequence[int], graph: Multigraph, prov: GadgetMap,
                   pm: int | None = None) -> dict:
    labels = []
    for i, p in enumerate(prov):
        if p[0] == "edge":
            labels.append({"id": i, "kind": "edge", "edge": p[1]})
        elif p[0] == "half":
            labels.append({"id": i, "kind": "half", "edge": p[1], "at": p[2]})
        else:
            labels.append({"id": i, "kind": "copy", "vertex": p[1], "copy": p[2]})
    out = {
        "which": which,
        "r": list(r),
        "vertices": labels,
        "edges": [[u, v] for u, v in graph.edges],
    }
    if pm is not None:
        out["pm"] = str(pm)
    return out
