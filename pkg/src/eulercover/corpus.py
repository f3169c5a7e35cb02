"""Deterministic test corpus of (mostly Eulerian) multigraphs."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from . import graph as gr
from .covers import rng_stream

FAMILIES = ("cycles", "unions", "glued", "dense", "circulant", "doubled", "toroidal", "random")


@dataclass(frozen=True)
class CorpusSpec:
    max_vertices: int = 12
    max_edges: int = 24
    families: tuple[str, ...] = FAMILIES
    seed: int = 0
    require_eulerian: bool = True
    random_count: int = 8

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown corpus families {sorted(unknown)}")

    def to_json(self) -> dict:
        d = asdict(self)
        d["families"] = list(self.families)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusSpec":
        return cls(**obj)


@dataclass(frozen=True)
class CorpusGraph:
    name: str
    graph: gr.Multigraph
    family: str = field(default="", compare=False)


def _random_closed_trail(rng, n: int, length: int) -> list[tuple[int, int]]:
    while True:
        walk = [int(rng.integers(0, n))]
        for _ in range(length - 1):
            step = int(rng.integers(0, n - 1))
            walk.append(step if step < walk[-1] else step + 1)
        if walk[-1] != walk[0]:
            walk.append(walk[0])
            return [(walk[i], walk[i + 1]) for i in range(length)]


def random_eulerian_multigraph(seed: int, index: int, max_vertices: int, max_edges: int) -> gr.Multigraph:
    """Superpose 1-3 random closed trails (parallel edges may appear)."""
    rng = rng_stream(seed, 7919, index)
    n = int(rng.integers(3, max(3, max_vertices) + 1))
    budget = min(max_edges, 14)
    edges: list[tuple[int, int]] = []
    for _ in range(int(rng.integers(1, 4))):
        room = budget - len(edges)
        if room < 2:
            break
        length = int(rng.integers(2, min(room, 2 * n) + 1))
        edges += _random_closed_trail(rng, n, length)
    return gr.Multigraph(n, tuple(edges))


def _family_members(spec: CorpusSpec):
    C = gr.cycle
    yield "cycles", [(f"C{k}", C(k)) for k in range(3, 9)]
    yield "unions", [
        ("C3+C3", gr.disjoint_union(C(3), C(3))),
        ("C3+C4", gr.disjoint_union(C(3), C(4))),
        ("C4+C4", gr.disjoint_union(C(4), C(4))),
        ("C3+C5", gr.disjoint_union(C(3), C(5))),
        ("C4+C5", gr.disjoint_union(C(4), C(5))),
        ("C3+C3+C3", gr.disjoint_union(C(3), C(3), C(3))),
        ("C5+C5", gr.disjoint_union(C(5), C(5))),
    ]
    yield "glued", [
        ("bowtie", gr.bowtie()),
        ("glue3-4", gr.glued_cycles(3, 4)),
        ("glue4-4", gr.glued_cycles(4, 4)),
        ("glue3-5", gr.glued_cycles(3, 5)),
        ("glue4-5", gr.glued_cycles(4, 5)),
        ("glue3-3-3", gr.glued_cycles(3, 3, 3)),
        ("glue5-5", gr.glued_cycles(5, 5)),
    ]
    yield "dense", [
        ("K5", gr.complete(5)),
        ("K2,4", gr.complete_bipartite(2, 4)),
        ("octahedron", gr.circulant(6, (1, 2))),
        ("K2,6", gr.complete_bipartite(2, 6)),
        ("K4,4", gr.complete_bipartite(4, 4)),
    ]
    yield "circulant", [
        ("C7(1,2)", gr.circulant(7, (1, 2))),
        ("C8(1,2)", gr.circulant(8, (1, 2))),
        ("C8(1,3)", gr.circulant(8, (1, 3))),
    ]
    yield "doubled", [
        ("digon", C(2)),
        ("2P3", gr.doubled(gr.path(3))),
        ("2C3", gr.doubled(C(3))),
        ("2C4", gr.doubled(C(4))),
        ("2bowtie", gr.doubled(gr.bowtie())),
    ]
    yield "toroidal", [("T3,3", gr.toroidal_grid(3, 3)), ("T3,4", gr.toroidal_grid(3, 4))]
    yield "random", [
        (f"rand{i}", random_eulerian_multigraph(spec.seed, i, spec.max_vertices, spec.max_edges))
        for i in range(spec.random_count)
    ]


def named_corpus(spec: CorpusSpec | None = None) -> list[CorpusGraph]:
    spec = spec or CorpusSpec()
    out = []
    for family, members in _family_members(spec):
        if family not in spec.families:
            continue
        for name, G in members:
            if G.n > spec.max_vertices or G.m > spec.max_edges:
                continue
            if spec.require_eulerian and not gr.is_eulerian(G):
                continue
            out.append(CorpusGraph(name, G, family))
    return out


def generate_corpus(spec: CorpusSpec | None = None) -> list[gr.Multigraph]:
    return [c.graph for c in named_corpus(spec)]
