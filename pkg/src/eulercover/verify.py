"""Executable checks of the counting identities and inequalities.

Every check returns a :class:`VerificationReport`.  A violated claim is
reported, never raised; precondition failures (non-Eulerian input, size caps)
raise.  Reports carry enough parameters to replay the computation.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .counting import (
    convolution_sum,
    count_balanced_factorientations,
    count_eulerian_orientations,
    count_half_graphs,
    count_r_factors,
    count_r_orientations,
    restricted,
)
from .covers import (
    bar_restriction,
    build_2lift,
    build_klift,
    induced_degree_vector,
    random_decoration,
    random_klift,
    random_signing,
    transfer_decorations,
)
from .graph import (
    COUNT_EDGE_SOFT_CAP,
    SUBSET_EDGE_CAP,
    CapExceeded,
    Multigraph,
    degree_vector,
    is_bipartite,
    is_eulerian,
    subgraph_on,
    toroidal_grid,
)

HOLDS, EQUALITY, STRICT, VIOLATED = "holds", "equality", "strict", "violated"
LIFT_EDGE_CAP = 20
EXHAUSTIVE_SIGNING_EDGES = 10
SAMPLED_SIGNINGS = 200
R_ENUMERATION_CAP = 10**6
CONJECTURE_NOTE = "no counterexample among the sampled lifts; evidence, not proof"


@dataclass
class VerificationReport:
    claim: str
    graph: dict
    params: dict
    status: str
    lhs: dict
    rhs: dict
    witness: dict | None = None
    millis: int = 0
    note: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != VIOLATED

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "claim": self.claim,
            "graph": self.graph,
            "params": self.params,
            "status": self.status,
            "lhs": {k: str(v) for k, v in self.lhs.items()},
            "rhs": {k: str(v) for k, v in self.rhs.items()},
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        if timing:
            out["millis"] = self.millis
        return out


def describe(G: Multigraph, name: str | None = None) -> dict:
    d = {"n": G.n, "edges": [[u, v] for u, v in G.edges]}
    if name:
        d = {"name": name, **d}
    return d


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = int(round((time.perf_counter() - self.t0) * 1000))


def _require_eulerian(G: Multigraph, claim: str):
    if not is_eulerian(G):
        raise ValueError(f"{claim}: graph is not Eulerian")


def _require_edges(G: Multigraph, cap: int):
    if G.m > cap:
        raise CapExceeded("edge count", G.m, cap)


def _compare(lhs: int, rhs: int) -> str:
    if lhs == rhs:
        return EQUALITY
    return STRICT if lhs > rhs else VIOLATED


# --- identities on subset sums ---------------------------------------------

def check_recursion(G: Multigraph, name: str | None = None, threads: int = 1) -> VerificationReport:
    """eps^2 and h^2 as sums over edge subsets."""
    _require_eulerian(G, "recursion")
    _require_edges(G, SUBSET_EDGE_CAP)
    with _Timer() as t:
        eps, h = count_eulerian_orientations(G), count_half_graphs(G)
        f_eps = restricted(G, count_eulerian_orientations)
        f_h = restricted(G, count_half_graphs)
        sum_eps = convolution_sum(G, f_eps, f_eps, threads)
        sum_h = convolution_sum(G, f_h, f_h, threads)
    lhs = {"eps^2": eps * eps, "h^2": h * h}
    rhs = {"sum_eps_eps": sum_eps, "sum_h_h": sum_h}
    bad = [k for k, a, b in (("eps", eps * eps, sum_eps), ("h", h * h, sum_h)) if a != b]
    return VerificationReport(
        "recursion", describe(G, name), {"threads": threads},
        VIOLATED if bad else HOLDS, lhs, rhs,
        witness={"failing": bad} if bad else None, millis=t.millis,
    )


def check_inequality(G: Multigraph, name: str | None = None) -> VerificationReport:
    """eps >= h, with equality exactly for bipartite graphs."""
    _require_eulerian(G, "inequality")
    with _Timer() as t:
        eps, h = count_eulerian_orientations(G), count_half_graphs(G)
        bip = is_bipartite(G)
    status = _compare(eps, h)
    if status == EQUALITY and not bip or status == STRICT and bip:
        status = VIOLATED
    return VerificationReport(
        "inequality", describe(G, name), {"bipartite": bip}, status,
        {"eps": eps}, {"h": h},
        witness={"bipartite": bip, "eps": str(eps), "h": str(h)} if status == VIOLATED else None,
        millis=t.millis,
    )


def check_bipartite_cover(G: Multigraph, name: str | None = None, threads: int = 1) -> VerificationReport:
    """eps(G x K2) = h(G x K2) = sum_A eps(A) h(E - A)."""
    _require_eulerian(G, "bipartite-cover")
    _require_edges(G, LIFT_EDGE_CAP)
    with _Timer() as t:
        H = build_2lift(G, "-" * G.m).H
        eps_c, h_c = count_eulerian_orientations(H), count_half_graphs(H)
        total = convolution_sum(G, restricted(G, count_eulerian_orientations),
                                restricted(G, count_half_graphs), threads)
    ok = eps_c == h_c == total
    return VerificationReport(
        "bipartite-cover", describe(G, name), {"threads": threads},
        HOLDS if ok else VIOLATED,
        {"eps_cover": eps_c, "h_cover": h_c}, {"sum_eps_h": total},
        witness=None if ok else {"cover_edges": [[u, v] for u, v in H.edges]},
        millis=t.millis,
    )


# --- 2-cover maximality ----------------------------------------------------

def signing_sweep(G: Multigraph, seed: int | None = None, samples: int = SAMPLED_SIGNINGS,
                  exhaustive_edges: int = EXHAUSTIVE_SIGNING_EDGES) -> list[str]:
    """All signings for small graphs; otherwise both canonical ones plus seeded samples."""
    if G.m <= exhaustive_edges:
        return ["".join(s) for s in itertools.product("+-", repeat=G.m)]
    if seed is None:
        raise ValueError(f"{G.m} edges needs sampled signings, which need a seed")
    out = ["+" * G.m, "-" * G.m]
    out += ["".join(random_signing(G, seed, i)) for i in range(samples)]
    return out


def _cover_max(G, r, signings, counter, reference_sign, claim, name):
    if r is None:
        r = [d // 2 for d in degree_vector(G)]
    r = list(r)
    if len(r) != G.n:
        raise ValueError("degree vector does not match the graph")
    ref_sign = reference_sign * G.m
    with _Timer() as t:
        def value(s):
            L = build_2lift(G, s)
            return counter(L.H, induced_degree_vector(r, L))
        reference = value(ref_sign)
        values = [value(s) for s in signings]
    best = max(values) if values else reference
    argmax = [s for s, v in zip(signings, values) if v == best]
    violators = [(s, v) for s, v in zip(signings, values) if v > reference]
    witness = None
    if violators:
        s, v = violators[0]
        witness = {"signing": s, "value": str(v), "r": r}
    params = {
        "r": r,
        "signings": len(signings),
        "exhaustive": len(signings) == 2 ** G.m and len(set(signings)) == len(signings),
        "reference_signing": ref_sign,
        "argmax": argmax,
        "reference_attains_max": reference == best,
    }
    return VerificationReport(
        claim, describe(G, name), params, VIOLATED if violators else HOLDS,
        {"reference": reference}, {"max_over_signings": best},
        witness=witness, millis=t.millis,
    )


def check_cover_orientation_max(G: Multigraph, r: Sequence[int] | None, signings: Sequence[str],
                                name: str | None = None) -> VerificationReport:
    """eps_r(G u G) >= eps_r(H) for every listed 2-lift H (r defaults to d/2)."""
    return _cover_max(G, r, signings, count_r_orientations, "+", "cover-orient", name)


def check_cover_factor_max(G: Multigraph, r: Sequence[int] | None, signings: Sequence[str],
                           name: str | None = None) -> VerificationReport:
    """h_r(G x K2) >= h_r(H) for every listed 2-lift H."""
    return _cover_max(G, r, signings, count_r_factors, "-", "cover-factor", name)


# --- mixed decorations -----------------------------------------------------

def mixed_sides(G: Multigraph, signs: Sequence[str], dec: Sequence[str], threads: int = 1) -> tuple[int, int]:
    """g of the decorated 2-lift, and the subset sum with the bar operation."""
    L = build_2lift(G, signs)
    lhs = count_balanced_factorientations(L.H, transfer_decorations(dec, L))

    def g_plain(mask):
        H, kept = subgraph_on(G, mask)
        return count_balanced_factorientations(H, [dec[i] for i in kept])

    def g_bar(mask):
        return count_balanced_factorientations(*bar_restriction(G, mask, signs, dec))

    return lhs, convolution_sum(G, g_plain, g_bar, threads)


def check_mixed_identity(G: Multigraph, signs: Sequence[str], dec: Sequence[str],
                         name: str | None = None, threads: int = 1) -> VerificationReport:
    _require_edges(G, LIFT_EDGE_CAP)
    signs, dec = "".join(signs), "".join(dec)
    if len(signs) != G.m or len(dec) != G.m:
        raise ValueError("signing and decoration must have one entry per edge")
    with _Timer() as t:
        lhs, rhs = mixed_sides(G, signs, dec, threads)
    ok = lhs == rhs
    return VerificationReport(
        "mixed-identity", describe(G, name), {"signing": signs, "decoration": dec},
        HOLDS if ok else VIOLATED, {"g_lift": lhs}, {"sum_g_gbar": rhs},
        witness=None if ok else {"signing": signs, "decoration": dec}, millis=t.millis,
    )


def mixed_pairs(G: Multigraph, seed: int, count: int = 50) -> list[tuple[str, str]]:
    return [("".join(random_signing(G, seed, 2 * i)), "".join(random_decoration(G, seed, 2 * i + 1)))
            for i in range(count)]


def check_mixed_inequality(G: Multigraph, dec: Sequence[str], name: str | None = None) -> VerificationReport:
    """g(G) <= eps(G) for one decoration."""
    _require_eulerian(G, "mixed-inequality")
    dec = "".join(dec)
    with _Timer() as t:
        g = count_balanced_factorientations(G, dec)
        eps = count_eulerian_orientations(G)
    status = _compare(eps, g)
    return VerificationReport(
        "mixed-inequality", describe(G, name), {"decoration": dec}, status,
        {"eps": eps}, {"g": g},
        witness={"decoration": dec} if status == VIOLATED else None, millis=t.millis,
    )


def check_mixed_inequality_sweep(G: Multigraph, decorations: Sequence[str] | None = None,
                                 name: str | None = None) -> VerificationReport:
    """g <= eps over many decorations (all 2^m when none are given)."""
    _require_eulerian(G, "mixed-inequality")
    if decorations is None:
        _require_edges(G, SUBSET_EDGE_CAP)
        decorations = ["".join(d) for d in itertools.product("os", repeat=G.m)]
    with _Timer() as t:
        eps = count_eulerian_orientations(G)
        gs = [count_balanced_factorientations(G, d) for d in decorations]
    best = max(gs, default=0)
    bad = [d for d, g in zip(decorations, gs) if g > eps]
    return VerificationReport(
        "mixed-inequality", describe(G, name),
        {"decorations": len(decorations), "argmax": [d for d, g in zip(decorations, gs) if g == best][:8]},
        VIOLATED if bad else HOLDS, {"eps": eps}, {"max_g": best},
        witness={"decoration": bad[0]} if bad else None, millis=t.millis,
    )


# --- in-degree vectors -----------------------------------------------------

def feasible_r_vectors(G: Multigraph) -> list[tuple[int, ...]]:
    d = degree_vector(G)
    size = math.prod(x + 1 for x in d)
    if size > R_ENUMERATION_CAP:
        raise CapExceeded("in-degree vector candidates", size, R_ENUMERATION_CAP)
    return [r for r in itertools.product(*(range(x + 1) for x in d)) if sum(r) == G.m]


def check_balanced_max(G: Multigraph, name: str | None = None) -> VerificationReport:
    """eps_r(G) <= eps_{d/2}(G) for every feasible r."""
    _require_eulerian(G, "balanced-max")
    with _Timer() as t:
        rs = feasible_r_vectors(G)
        ref = count_eulerian_orientations(G)
        vals = [count_r_orientations(G, r) for r in rs]
    best = max(vals, default=ref)
    bad = [(r, v) for r, v in zip(rs, vals) if v > ref]
    half = tuple(d // 2 for d in degree_vector(G))
    return VerificationReport(
        "balanced-max", describe(G, name),
        {"feasible_r": len(rs), "argmax": [list(r) for r, v in zip(rs, vals) if v == best][:8],
         "balanced_attains_max": ref == best, "balanced": list(half)},
        VIOLATED if bad else HOLDS, {"eps": ref}, {"max_eps_r": best},
        witness={"r": list(bad[0][0]), "value": str(bad[0][1])} if bad else None,
        millis=t.millis,
    )


@lru_cache(maxsize=64)
def eulerian_subsets(G: Multigraph) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
    """(mask, eps(A), d_A) for every edge subset A with eps(A) > 0.

    Every subset is evaluated; the ones dropped are exactly those with
    eps(A) = 0, which contribute nothing to sums weighted by eps(A).
    """
    _require_edges(G, SUBSET_EDGE_CAP)
    out = []
    for A in range(G.full_mask() + 1):
        sub, _ = subgraph_on(G, A)
        e = count_eulerian_orientations(sub)
        if e:
            out.append((A, e, tuple(degree_vector(sub))))
    return tuple(out)


def decomposition_sum(G: Multigraph, r: Sequence[int]) -> int:
    """sum_A eps(A) * eps_{r - d_A/2}(E - A); odd d_A makes the term 0."""
    total = 0
    full = G.full_mask()
    for A, eps_a, d_a in eulerian_subsets(G):
        if any(x % 2 for x in d_a):
            continue
        shift = [rv - x // 2 for rv, x in zip(r, d_a)]
        rest, _ = subgraph_on(G, full ^ A)
        total += eps_a * count_r_orientations(rest, shift)
    return total


def check_reversal_and_decomposition(G: Multigraph, r: Sequence[int],
                                     name: str | None = None) -> VerificationReport:
    _require_edges(G, LIFT_EDGE_CAP)
    r = list(r)
    if len(r) != G.n:
        raise ValueError("degree vector does not match the graph")
    with _Timer() as t:
        d = degree_vector(G)
        a = count_r_orientations(G, r)
        b = count_r_orientations(G, [x - y for x, y in zip(d, r)])
        s = decomposition_sum(G, r)
    bad = []
    if a != b:
        bad.append("reversal")
    if a * b != s:
        bad.append("decomposition")
    return VerificationReport(
        "reversal", describe(G, name), {"r": r}, VIOLATED if bad else HOLDS,
        {"eps_r": a, "eps_r*eps_d-r": a * b}, {"eps_d-r": b, "sum": s},
        witness={"r": r, "failing": bad} if bad else None, millis=t.millis,
    )


# --- toroidal grid bound ---------------------------------------------------

def check_lieb_bound(n: int, m: int) -> VerificationReport:
    """eps(T_{n,m})^2 * 3^(3nm) >= 4^(3nm), all in integers."""
    if n < 3 or m < 3:
        raise ValueError("toroidal grid needs n, m >= 3")
    if 2 * n * m > COUNT_EDGE_SOFT_CAP:
        raise CapExceeded("toroidal grid edge count", 2 * n * m, COUNT_EDGE_SOFT_CAP)
    with _Timer() as t:
        G = toroidal_grid(n, m)
        eps = count_eulerian_orientations(G)
        e = 3 * n * m
        lhs, rhs = eps * eps * 3 ** e, 4 ** e
    status = _compare(lhs, rhs)
    params = {
        "n": n, "m": m, "eps": str(eps),
        # human-readable only; the verdict above is exact
        "eps_per_vertex": eps ** (1 / (n * m)),
        "bound_per_vertex": (4 / 3) ** 1.5,
    }
    return VerificationReport(
        "lieb", describe(G, f"T{n},{m}"), params, status,
        {"eps^2*3^(3nm)": lhs}, {"4^(3nm)": rhs},
        witness={"n": n, "m": m} if status == VIOLATED else None, millis=t.millis,
    )


# --- conjecture search -----------------------------------------------------

def conjecture_trial(G: Multigraph, k: int, seed: int, trial: int) -> tuple[int, list[list[int]], int]:
    perms = random_klift(G, k, seed, trial)
    H = build_klift(G, perms, k).H
    return trial, perms, count_eulerian_orientations(H)


def _run_trials(jobs, threads):
    if threads <= 1 or len(jobs) < 2:
        return [conjecture_trial(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        chunk = max(1, len(jobs) // (4 * threads))
        return list(pool.map(conjecture_trial, *zip(*jobs), chunksize=chunk))


def _conjecture_report(G, k, seed, results, name, millis):
    ref = count_eulerian_orientations(G) ** k
    values = [v for _, _, v in results]
    best = max(values, default=0)
    bad = [(t, p, v) for t, p, v in results if v > ref]
    witness = None
    if bad:
        t, p, v = bad[0]
        witness = {"trial": t, "seed": seed, "k": k, "perms": p, "eps_lift": str(v)}
    return VerificationReport(
        "conjecture", describe(G, name),
        {"k": k, "seed": seed, "trials": [t for t, _, _ in results], "eps_lift": [str(v) for v in values]},
        VIOLATED if bad else HOLDS, {"eps^k": ref}, {"max_eps_lift": best},
        witness=witness, millis=millis, note=None if bad else CONJECTURE_NOTE,
    )


def search_conjecture(G: Multigraph, k: int, trials: int, seed: int, name: str | None = None,
                      threads: int = 1) -> VerificationReport:
    """eps(G)^k >= eps(H) over ``trials`` seeded random k-lifts H."""
    _require_eulerian(G, "conjecture")
    if k < 2:
        raise ValueError("cover degree must be at least 2")
    with _Timer() as t:
        results = _run_trials([(G, k, seed, i) for i in range(trials)], threads)
    return _conjecture_report(G, k, seed, results, name, t.millis)


def search_conjecture_corpus(graphs: Sequence[tuple[str, Multigraph]], k: int, trials: int, seed: int,
                             threads: int = 1) -> list[VerificationReport]:
    """Spread ``trials`` round-robin over the graphs; trial t uses stream (seed, t)."""
    for name, G in graphs:
        _require_eulerian(G, f"conjecture on {name}")
    if not graphs:
        return []
    jobs = [(graphs[t % len(graphs)][1], k, seed, t) for t in range(trials)]
    with _Timer() as t:
        results = _run_trials(jobs, threads)
    per_graph: dict[int, list] = {}
    for res in results:
        per_graph.setdefault(res[0] % len(graphs), []).append(res)
    return [
        _conjecture_report(graphs[i][1], k, seed, per_graph.get(i, []), graphs[i][0], t.millis)
        for i in range(len(graphs))
    ]


def replay_conjecture_witness(G: Multigraph, witness: dict) -> tuple[int, int]:
    """Recompute (eps(G)^k, eps(H)) from a witness alone."""
    k = witness["k"]
    H = build_klift(G, witness["perms"], k).H
    return count_eulerian_orientations(G) ** k, count_eulerian_orientations(H)


def summarize(reports: Sequence[VerificationReport]) -> dict:
    counts: dict[str, int] = {}
    for rep in reports:
        counts[rep.status] = counts.get(rep.status, 0) + 1
    return {"reports": len(reports), "statuses": dict(sorted(counts.items())),
            "violations": counts.get(VIOLATED, 0)}
