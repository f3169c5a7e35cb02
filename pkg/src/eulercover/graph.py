"""Loop-free multigraphs with stable edge ids, and their text/JSON formats.

Vertices are dense indices ``0..n-1``; edge ``i`` is ``edges[i]``.  Parallel
edges are allowed and distinguished by their index, which is what the subset
sums over ``A ⊆ E`` need.

Graph file format (UTF-8, LF)::

    n m
    u v [sign] [role]      # m lines; sign in {+,-}, role in {o,s}

``#`` starts a comment.  The JSON mirror is
``{"n": int, "edges": [{"u": int, "v": int, "sign": "+", "role": "o"}]}``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

SUBSET_EDGE_CAP = 24
COUNT_EDGE_SOFT_CAP = 32

SIGNS = ("+", "-")
ROLES = ("o", "s")


class GraphFormatError(ValueError):
    """Raised for malformed graph text, loops and out-of-range vertices."""


class CapExceeded(ValueError):
    """Raised when an input exceeds a hard size cap."""

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what} = {value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise GraphFormatError(f"edge {i} is a loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge {i} = ({u}, {v}) has a vertex out of range 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> list[int]:
        """Edge ids at ``v`` (the set E_v)."""
        return [i for i, e in enumerate(self.edges) if v in e]

    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class ParsedGraph:
    """A graph together with the optional sign and role columns of its file."""

    graph: Multigraph
    signs: tuple[str, ...] | None = None
    roles: tuple[str, ...] | None = None


def degree_vector(G: Multigraph) -> list[int]:
    deg = [0] * G.n
    for u, v in G.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def is_eulerian(G: Multigraph) -> bool:
    # connectedness is deliberately not required
    return all(d % 2 == 0 for d in degree_vector(G))


def two_coloring(G: Multigraph) -> list[int] | None:
    """BFS 2-coloring, or None when some component has an odd cycle."""
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def is_bipartite(G: Multigraph) -> bool:
    return two_coloring(G) is not None


def components(G: Multigraph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by least vertex."""
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def subgraph_on(G: Multigraph, A: int) -> tuple[Multigraph, list[int]]:
    """Spanning subgraph (V, A) for the edge bitmask ``A``.

    Returns the subgraph and the list mapping its edge ids to those of ``G``.
    """
    if A >> G.m:
        raise ValueError(f"edge mask {A:#x} has bits beyond edge count {G.m}")
    kept = [i for i in range(G.m) if A >> i & 1]
    return Multigraph(G.n, tuple(G.edges[i] for i in kept)), kept


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    edges = []
    offset = 0
    for H in graphs:
        edges.extend((u + offset, v + offset) for u, v in H.edges)
        offset += H.n
    return Multigraph(offset, tuple(edges))


def relabel(G: Multigraph, perm: Sequence[int]) -> Multigraph:
    """Rename vertex ``v`` to ``perm[v]``; edge order is kept."""
    return Multigraph(G.n, tuple((perm[u], perm[v]) for u, v in G.edges))


# --- generators ------------------------------------------------------------

def cycle(k: int) -> Multigraph:
    """C_k; ``k = 2`` gives a digon (two parallel edges)."""
    if k < 2:
        raise ValueError("cycle length must be at least 2")
    return Multigraph(k, tuple((i, (i + 1) % k) for i in range(k)))


def path(k: int) -> Multigraph:
    """Path on ``k`` vertices."""
    return Multigraph(k, tuple((i, i + 1) for i in range(k - 1)))


def edgeless(n: int) -> Multigraph:
    return Multigraph(n, ())


def complete(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(p: int, q: int) -> Multigraph:
    return Multigraph(p + q, tuple((i, p + j) for i in range(p) for j in range(q)))


def circulant(n: int, jumps: Iterable[int]) -> Multigraph:
    edges = []
    for j in jumps:
        edges.extend((i, (i + j) % n) for i in range(n))
    return Multigraph(n, tuple(edges))


def glued_cycles(*lengths: int) -> Multigraph:
    """Cycles sharing the single vertex 0 (a bowtie for two triangles)."""
    edges = []
    nxt = 1
    for k in lengths:
        ring = [0] + list(range(nxt, nxt + k - 1))
        nxt += k - 1
        edges.extend((ring[i], ring[(i + 1) % k]) for i in range(k))
    return Multigraph(nxt, tuple(edges))


def bowtie() -> Multigraph:
    return glued_cycles(3, 3)


def doubled(G: Multigraph) -> Multigraph:
    """Every edge replaced by two parallel copies (adjacent ids)."""
    return Multigraph(G.n, tuple(e for e in G.edges for _ in range(2)))


def toroidal_grid(n: int, m: int, allow_multi: bool = False) -> Multigraph:
    """The n×m grid closed toroidally; vertex (i, j) has index ``i*m + j``."""
    if n < 3 or m < 3:
        if not allow_multi:
            raise ValueError(f"toroidal_grid({n}, {m}) needs n, m >= 3 (pass allow_multi for parallel wraps)")
        if n < 2 or m < 2:
            raise ValueError("a side of length 1 would create loops")
    edges = []
    for i in range(n):
        for j in range(m):
            edges.append((i * m + j, ((i + 1) % n) * m + j))
            edges.append((i * m + j, i * m + (j + 1) % m))
    return Multigraph(n * m, tuple(edges))


# --- text and JSON formats -------------------------------------------------

def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str) -> ParsedGraph:
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, s) for no, s in lines if s]
    if not lines:
        raise GraphFormatError("empty graph file")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError(f"line {no}: expected 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {no}: expected integers, got {header!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {no}: negative size")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)} edge lines")

    edges, signs, roles = [], [], []
    for no, s in body:
        fields = s.split()
        if not 2 <= len(fields) <= 4:
            raise GraphFormatError(f"line {no}: malformed edge line {s!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"line {no}: malformed edge line {s!r}") from None
        if u == v:
            raise GraphFormatError(f"line {no}: loop edge {s!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {no}: vertex out of range 0..{n - 1} in {s!r}")
        sign = role = None
        for tok in fields[2:]:
            tok = tok.replace("−", "-")
            if tok in SIGNS and sign is None:
                sign = tok
            elif tok.lower() in ROLES and role is None:
                role = tok.lower()
            else:
                raise GraphFormatError(f"line {no}: bad sign/role column {tok!r}")
        edges.append((u, v))
        signs.append(sign)
        roles.append(role)

    return ParsedGraph(
        Multigraph(n, tuple(edges)),
        _column(signs, "sign"),
        _column(roles, "role"),
    )


def _column(values: list, name: str) -> tuple[str, ...] | None:
    present = [x is not None for x in values]
    if not any(present):
        return None
    if not all(present):
        raise GraphFormatError(f"{name} column must be given on every edge line or on none")
    return tuple(values)


def serialize_graph(G: Multigraph, signs: Sequence[str] | None = None,
                    roles: Sequence[str] | None = None) -> str:
    for col in (signs, roles):
        if col is not None and len(col) != G.m:
            raise ValueError("column length must equal the edge count")
    out = [f"{G.n} {G.m}"]
    for i, (u, v) in enumerate(G.edges):
        fields = [str(u), str(v)]
        if signs is not None:
            fields.append(signs[i])
        if roles is not None:
            fields.append(roles[i])
        out.append(" ".join(fields))
    return "\n".join(out) + "\n"


def graph_to_json(G: Multigraph, signs=None, roles=None) -> dict:
    edges = []
    for i, (u, v) in enumerate(G.edges):
        e = {"u": u, "v": v}
        if signs is not None:
            e["sign"] = signs[i]
        if roles is not None:
            e["role"] = roles[i]
        edges.append(e)
    return {"n": G.n, "edges": edges}


def graph_from_json(obj: dict | str) -> ParsedGraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        raw = obj["edges"]
        edges = [(int(e["u"]), int(e["v"])) for e in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None
    for e in raw:
        if e.get("sign") not in (None, *SIGNS) or e.get("role") not in (None, *ROLES):
            raise GraphFormatError(f"bad sign/role in {e}")
    return ParsedGraph(
        Multigraph(n, tuple(edges)),
        _column([e.get("sign") for e in raw], "sign"),
        _column([e.get("role") for e in raw], "role"),
    )


def read_graph(path) -> ParsedGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_graph(text)


def parse_vector(text: str) -> list[int]:
    """Whitespace-separated integers (the degree-vector file format)."""
    try:
        return [int(tok) for tok in _strip_all(text).split()]
    except ValueError as exc:
        raise GraphFormatError(f"malformed integer vector: {exc}") from None


def _strip_all(text: str) -> str:
    return " ".join(_strip(line) for line in text.splitlines())
