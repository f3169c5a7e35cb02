"""Exact counters for r-orientations, r-factors and balanced factorientations.

All optimized counters run through one edge sweep.  Edges are processed in a
fixed order; the state is the vector of residual budgets (how much in-degree
or degree each vertex still has to receive).  A branch dies as soon as a
budget goes negative or exceeds the number of edges still to come at that
vertex.  Branches that reach the same residual vector are merged, so the
sweep never enumerates solutions one by one.

``brute_force_count`` is the independent oracle: it walks every one of the
``2^m`` configurations literally and shares nothing with the sweep.
"""

from __future__ import annotations

import enum
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .graph import (
    COUNT_EDGE_SOFT_CAP,
    SUBSET_EDGE_CAP,
    CapExceeded,
    Multigraph,
    degree_vector,
    subgraph_on,
)

ORIENT = ((1, 0), (0, 1))   # in-degree lands on exactly one endpoint
FACTOR = ((1, 1), (0, 0))   # edge is in the subgraph or not


class SizeWarning(UserWarning):
    pass


class CountKind(enum.Enum):
    EULERIAN_ORIENTATIONS = "eulerian"
    HALF_GRAPHS = "half"
    R_ORIENTATIONS = "r-orient"
    R_FACTORS = "r-factor"
    BALANCED_FACTORIENTATIONS = "g"


def _edge_order(G: Multigraph) -> list[int]:
    # BFS vertex order, edges sorted by their later endpoint: keeps the set of
    # partially processed vertices small.
    adj = [[] for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    pos = [-1] * G.n
    k = 0
    for s in range(G.n):
        if pos[s] >= 0:
            continue
        pos[s] = k
        k += 1
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if pos[y] < 0:
                    pos[y] = k
                    k += 1
                    queue.append(y)

    def key(i):
        u, v = G.edges[i]
        return (max(pos[u], pos[v]), min(pos[u], pos[v]), i)

    return sorted(range(G.m), key=key)


def _sweep(G: Multigraph, target: Sequence[int], moves: Sequence[tuple]) -> int:
    """Number of ways to pick one move per edge so that vertex v receives exactly target[v].

    ``moves[i]`` lists the (gain at u, gain at v) options for edge ``i = (u, v)``.
    """
    if G.m > COUNT_EDGE_SOFT_CAP:
        warnings.warn(f"counting on more than {COUNT_EDGE_SOFT_CAP} edges may be slow",
                      SizeWarning, stacklevel=3)
    remaining = degree_vector(G)
    if any(t < 0 or t > d for t, d in zip(target, remaining)):
        return 0
    states = {tuple(target): 1}
    for i in _edge_order(G):
        u, v = G.edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        ru, rv = remaining[u], remaining[v]
        nxt: dict[tuple, int] = {}
        for state, cnt in states.items():
            for du, dv in moves[i]:
                nu = state[u] - du
                nv = state[v] - dv
                if 0 <= nu <= ru and 0 <= nv <= rv:
                    s = list(state)
                    s[u] = nu
                    s[v] = nv
                    key = tuple(s)
                    nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def _check_len(G: Multigraph, seq, what: str):
    if len(seq) != (G.m if what == "decoration" else G.n):
        raise ValueError(f"{what} length {len(seq)} does not match the graph")


def count_r_orientations(G: Multigraph, r: Sequence[int]) -> int:
    """Orientations with in-degree ``r[v]`` at every vertex (0 if r is infeasible)."""
    _check_len(G, r, "degree vector")
    if sum(r) != G.m:
        return 0
    return _sweep(G, r, [ORIENT] * G.m)


def count_r_factors(G: Multigraph, r: Sequence[int]) -> int:
    """Edge subsets F with d_F(v) = r[v] everywhere."""
    _check_len(G, r, "degree vector")
    if sum(r) % 2:
        return 0
    return _sweep(G, r, [FACTOR] * G.m)


def half_degrees(G: Multigraph) -> list[int] | None:
    d = degree_vector(G)
    if any(x % 2 for x in d):
        return None
    return [x // 2 for x in d]


def count_eulerian_orientations(G: Multigraph) -> int:
    half = half_degrees(G)
    return 0 if half is None else count_r_orientations(G, half)


def count_half_graphs(G: Multigraph) -> int:
    half = half_degrees(G)
    return 0 if half is None else count_r_factors(G, half)


def count_balanced_factorientations(G: Multigraph, dec: Sequence[str]) -> int:
    """Balanced factorientations for the o/s decoration ``dec``.

    An ``o`` edge adds 1 to the in-degree of one endpoint; an ``s`` edge adds 1
    to both endpoints or to neither.  Balanced means every vertex collects
    exactly half its degree.
    """
    _check_len(G, dec, "decoration")
    half = half_degrees(G)
    if half is None:
        return 0
    moves = []
    for role in dec:
        if role == "o":
            moves.append(ORIENT)
        elif role == "s":
            moves.append(FACTOR)
        else:
            raise ValueError(f"unknown role {role!r}")
    return _sweep(G, half, moves)


def count(G: Multigraph, kind: CountKind, r=None, dec=None) -> int:
    """Dispatch to the optimized counter for ``kind``."""
    kind = CountKind(kind)
    if kind is CountKind.EULERIAN_ORIENTATIONS:
        return count_eulerian_orientations(G)
    if kind is CountKind.HALF_GRAPHS:
        return count_half_graphs(G)
    if kind is CountKind.BALANCED_FACTORIENTATIONS:
        if dec is None:
            raise ValueError("balanced factorientations need a decoration")
        return count_balanced_factorientations(G, dec)
    if r is None:
        raise ValueError(f"{kind.value} needs a degree vector")
    if kind is CountKind.R_ORIENTATIONS:
        return count_r_orientations(G, r)
    return count_r_factors(G, r)


def brute_force_count(G: Multigraph, kind: CountKind, r=None, dec=None) -> int:
    """Literal enumeration of all 2^m configurations.

    Bit i of a configuration means: for an orientation-type edge, the head is
    the second endpoint (otherwise the first); for a subgraph-type edge, the
    edge is taken.
    """
    kind = CountKind(kind)
    m, n = len(G.edges), G.n
    if m > SUBSET_EDGE_CAP:
        raise CapExceeded("edge count", m, SUBSET_EDGE_CAP)

    deg = [0] * n
    for a, b in G.edges:
        deg[a] += 1
        deg[b] += 1

    if kind in (CountKind.R_ORIENTATIONS, CountKind.R_FACTORS):
        if r is None:
            raise ValueError(f"{kind.value} needs a degree vector")
        want = [2 * x for x in r]
    else:
        want = list(deg)   # twice the target d/2, so odd degrees never match

    if kind is CountKind.BALANCED_FACTORIENTATIONS:
        if dec is None:
            raise ValueError("balanced factorientations need a decoration")
        oriented = [role == "o" for role in dec]
    elif kind in (CountKind.EULERIAN_ORIENTATIONS, CountKind.R_ORIENTATIONS):
        oriented = [True] * m
    else:
        oriented = [False] * m

    total = 0
    for config in range(1 << m):
        got = [0] * n
        for i in range(m):
            a, b = G.edges[i]
            bit = config >> i & 1
            if oriented[i]:
                got[b if bit else a] += 2
            elif bit:
                got[a] += 2
                got[b] += 2
        if got == want:
            total += 1
    return total


def restricted(G: Multigraph, counter: Callable[[Multigraph], int]) -> Callable[[int], int]:
    """Turn a graph counter into a function of an edge bitmask of ``G``."""
    def f(mask: int) -> int:
        return counter(subgraph_on(G, mask)[0])
    return f


def _partial_sum(lo: int, hi: int, full: int, f, g) -> int:
    total = 0
    for A in range(lo, hi):
        fa = f(A)
        if fa:
            total += fa * g(full ^ A)
    return total


def convolution_sum(G: Multigraph, f: Callable[[int], int], g: Callable[[int], int],
                    threads: int = 1) -> int:
    """Sum over all edge subsets A of ``f(A) * g(E - A)``.

    ``f`` and ``g`` take edge bitmasks (see :func:`restricted`).  Masks are
    visited in ascending order, split into contiguous ranges for the worker
    threads, and the partial sums are added back in range order.
    """
    if G.m > SUBSET_EDGE_CAP:
        raise CapExceeded("edge count", G.m, SUBSET_EDGE_CAP)
    full = G.full_mask()
    total_masks = full + 1
    threads = max(1, int(threads))
    if threads == 1 or total_masks < 64:
        return _partial_sum(0, total_masks, full, f, g)
    chunks = threads * 4
    bounds = [total_masks * k // chunks for k in range(chunks + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda k: _partial_sum(bounds[k], bounds[k + 1], full, f, g),
                         range(chunks))
        return sum(parts)
