"""2-lifts from edge signs, k-lifts from edge permutations, and decoration transfer.

Lift conventions:

* copy ``i`` of base vertex ``v`` is vertex ``i*n + v`` of the lift;
* base edge ``e`` lifts to edges ``e*k + i`` for ``i = 0..k-1``;
* the permutation of edge ``e`` maps copies of its smaller endpoint to copies
  of its larger endpoint: ``(min, i) -- (max, perm[i])``.

A ``+`` sign is the identity permutation, a ``-`` sign the swap.

Randomness comes from numpy's PCG64 generator.  Independent tasks get
independent streams through ``SeedSequence(seed, spawn_key=task)``, so a
trial's draw depends only on (seed, task index), never on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Multigraph, serialize_graph, subgraph_on


@dataclass(frozen=True)
class LiftedGraph:
    base: Multigraph
    k: int
    H: Multigraph
    projection: tuple[int, ...]            # lifted edge id -> base edge id
    layer: tuple[tuple[int, int], ...]     # lifted vertex -> (base vertex, copy)


def rng_stream(seed: int, *task: int) -> np.random.Generator:
    """PCG64 stream derived from ``seed`` and a task path."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(t) for t in task))
    return np.random.Generator(np.random.PCG64(ss))


def build_klift(G: Multigraph, perms: Sequence[Sequence[int]], k: int | None = None) -> LiftedGraph:
    """``k`` is read off the permutations; pass it explicitly for edgeless graphs."""
    if len(perms) != G.m:
        raise ValueError(f"need one permutation per edge ({G.m}), got {len(perms)}")
    if k is None:
        k = len(perms[0]) if perms else 2
    for p in perms:
        if sorted(p) != list(range(k)):
            raise ValueError(f"{list(p)} is not a permutation of 0..{k - 1}")
    n = G.n
    edges, proj = [], []
    for e, (u, v) in enumerate(G.edges):
        a, b = min(u, v), max(u, v)
        p = perms[e]
        for i in range(k):
            edges.append((i * n + a, p[i] * n + b))
            proj.append(e)
    layer = tuple((x % n, x // n) for x in range(k * n)) if n else ()
    return LiftedGraph(G, k, Multigraph(k * n, tuple(edges)), tuple(proj), layer)


def signing_to_perms(signs: Sequence[str]) -> list[tuple[int, int]]:
    out = []
    for s in signs:
        if s == "+":
            out.append((0, 1))
        elif s == "-":
            out.append((1, 0))
        else:
            raise ValueError(f"unknown sign {s!r}")
    return out


def perms_to_signing(perms: Sequence[Sequence[int]]) -> list[str]:
    if any(len(p) != 2 for p in perms):
        raise ValueError("only 2-lifts correspond to signings")
    return ["+" if tuple(p) == (0, 1) else "-" for p in perms]


def build_2lift(G: Multigraph, signs: Sequence[str]) -> LiftedGraph:
    """``+`` keeps the layers, ``-`` crosses them."""
    return build_klift(G, signing_to_perms(signs))


def disjoint_double(G: Multigraph) -> LiftedGraph:
    """G ∪ G, the all-plus lift."""
    return build_2lift(G, "+" * G.m)


def bipartite_double_cover(G: Multigraph) -> LiftedGraph:
    """G × K2, the all-minus lift."""
    return build_2lift(G, "-" * G.m)


def induced_degree_vector(r: Sequence[int], L: LiftedGraph) -> list[int]:
    if len(r) != L.base.n:
        raise ValueError("degree vector does not match the base graph")
    return [r[v] for v, _ in L.layer]


def transfer_decorations(dec: Sequence[str], L: LiftedGraph) -> list[str]:
    if len(dec) != L.base.m:
        raise ValueError("decoration does not match the base graph")
    return [dec[e] for e in L.projection]


_FLIP = {"o": "s", "s": "o"}


def bar_restriction(G: Multigraph, B: int, signs: Sequence[str],
                    dec: Sequence[str]) -> tuple[Multigraph, list[str]]:
    """The graph (V, B) with roles swapped o<->s on its minus-signed edges."""
    H, kept = subgraph_on(G, B)
    roles = [_FLIP[dec[i]] if signs[i] == "-" else dec[i] for i in kept]
    return H, roles


def random_signing(G: Multigraph, seed: int, *task: int) -> list[str]:
    rng = rng_stream(seed, *task)
    bits = rng.integers(0, 2, size=G.m)
    return ["-" if b else "+" for b in bits]


def random_decoration(G: Multigraph, seed: int, *task: int) -> list[str]:
    rng = rng_stream(seed, *task)
    bits = rng.integers(0, 2, size=G.m)
    return ["s" if b else "o" for b in bits]


def fisher_yates(k: int, rng: np.random.Generator) -> list[int]:
    p = list(range(k))
    for i in range(k - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        p[i], p[j] = p[j], p[i]
    return p


def random_klift(G: Multigraph, k: int, seed: int, *task: int) -> list[list[int]]:
    """One uniform permutation of 0..k-1 per edge."""
    if k < 2:
        raise ValueError("cover degree must be at least 2")
    rng = rng_stream(seed, *task)
    return [fisher_yates(k, rng) for _ in range(G.m)]


def is_covering_map(H: Multigraph, G: Multigraph, vertex_map: Sequence[int],
                    edge_map: Sequence[int], k: int) -> bool:
    """Check that (vertex_map, edge_map) makes H a k-fold cover of G.

    Every base vertex and edge needs exactly k preimages, lifted edges must
    sit over their base edge, and the edges at each lifted vertex must
    project bijectively onto the edges at its image.
    """
    if len(vertex_map) != H.n or len(edge_map) != H.m:
        return False
    if any(list(vertex_map).count(v) != k for v in range(G.n)):
        return False
    if any(list(edge_map).count(e) != k for e in range(G.m)):
        return False
    at_h = [[] for _ in range(H.n)]
    for i, (x, y) in enumerate(H.edges):
        e = edge_map[i]
        if {vertex_map[x], vertex_map[y]} != set(G.edges[e]):
            return False
        at_h[x].append(e)
        at_h[y].append(e)
    at_g = [[] for _ in range(G.n)]
    for e, (u, v) in enumerate(G.edges):
        at_g[u].append(e)
        at_g[v].append(e)
    return all(sorted(at_h[x]) == sorted(at_g[vertex_map[x]]) for x in range(H.n))


# --- lift files ------------------------------------------------------------

def serialize_lift(L: LiftedGraph) -> str:
    """Header ``base n m k K``, the lifted graph block, then ``e' e`` per lifted edge."""
    out = [f"base {L.base.n} {L.base.m} k {L.k}", serialize_graph(L.H).rstrip("\n")]
    out.extend(f"{i} {e}" for i, e in enumerate(L.projection))
    return "\n".join(out) + "\n"


def parse_perms(text: str, m: int, k: int | None = None) -> list[list[int]]:
    """One line of k integers per base edge."""
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if len(rows) != m:
        raise ValueError(f"expected {m} permutation lines, found {len(rows)}")
    perms = [[int(x) for x in r] for r in rows]
    kk = k if k is not None else len(perms[0]) if perms else 2
    for p in perms:
        if sorted(p) != list(range(kk)):
            raise ValueError(f"{p} is not a permutation of 0..{kk - 1}")
    return perms
