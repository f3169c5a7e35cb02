"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and look for the
"acceptance criteria" section at the end of the output.
"""

import json
import time

import pytest

from eulercover.corpus import named_corpus
from eulercover.counting import CountKind, brute_force_count, count
from eulercover.covers import build_2lift, random_klift, rng_stream
from eulercover.gadgets import (
    build_schrijver_star,
    build_tutte_doublestar,
    count_perfect_matchings,
    factorial_product,
    permanent,
)
from eulercover.graph import cycle, degree_vector, is_bipartite
from eulercover.verify import (
    VIOLATED,
    check_balanced_max,
    check_bipartite_cover,
    check_cover_factor_max,
    check_cover_orientation_max,
    check_inequality,
    check_lieb_bound,
    check_mixed_identity,
    check_mixed_inequality_sweep,
    check_recursion,
    check_reversal_and_decomposition,
    feasible_r_vectors,
    mixed_pairs,
    replay_conjecture_witness,
    search_conjecture_corpus,
    signing_sweep,
)

pytestmark = pytest.mark.acceptance

SEED = 20240601
THREADS = 4


@pytest.fixture(scope="module")
def corpus():
    return named_corpus()


def upto(corpus, max_edges):
    return [c for c in corpus if c.graph.m <= max_edges]


def dumps(reports):
    return json.dumps([r.to_json(timing=False) for r in reports], separators=(",", ":"), sort_keys=True)


def sample_orientation_r(G, rng):
    r = [0] * G.n
    for u, v in G.edges:
        r[v if rng.integers(0, 2) else u] += 1
    return r


def sample_factor_r(G, rng):
    r = [0] * G.n
    for u, v in G.edges:
        if rng.integers(0, 2):
            r[u] += 1
            r[v] += 1
    return r


def test_cycle_baselines(criterion):
    with criterion(1, "cycle baselines, k = 3..10, < 1 s"):
        t0 = time.perf_counter()
        for k in range(3, 11):
            C = cycle(k)
            assert count(C, CountKind.EULERIAN_ORIENTATIONS) == 2
            assert count(C, CountKind.HALF_GRAPHS) == (2 if k % 2 == 0 else 0)
        assert time.perf_counter() - t0 < 1.0


def test_oracle_equivalence(corpus, criterion):
    with criterion(2, "optimized counters equal brute force on <= 12-edge corpus graphs, < 2 min"):
        t0 = time.perf_counter()
        graphs = upto(corpus, 12)
        assert graphs
        checked = 0
        for idx, c in enumerate(graphs):
            G = c.graph
            rng = rng_stream(SEED, 2, idx)
            d = degree_vector(G)
            cases = [(CountKind.EULERIAN_ORIENTATIONS, None, None), (CountKind.HALF_GRAPHS, None, None)]
            # four feasible vectors plus one drawn uniformly from the box [0, d]
            uniform = lambda: [int(rng.integers(0, x + 1)) for x in d]
            cases += [(CountKind.R_ORIENTATIONS, sample_orientation_r(G, rng), None) for _ in range(4)]
            cases.append((CountKind.R_ORIENTATIONS, uniform(), None))
            cases += [(CountKind.R_FACTORS, sample_factor_r(G, rng), None) for _ in range(4)]
            cases.append((CountKind.R_FACTORS, uniform(), None))
            cases += [(CountKind.BALANCED_FACTORIENTATIONS, None,
                       ["s" if rng.integers(0, 2) else "o" for _ in range(G.m)]) for _ in range(5)]
            for kind, r, dec in cases:
                assert count(G, kind, r, dec) == brute_force_count(G, kind, r, dec), (c.name, kind, r, dec)
                checked += 1
        print(f"  {len(graphs)} graphs, {checked} comparisons")
        assert time.perf_counter() - t0 < 120


def test_recursion(corpus, criterion):
    with criterion(3, "recursion identities on >= 30 Eulerian graphs with <= 16 edges, < 5 min"):
        t0 = time.perf_counter()
        graphs = upto(corpus, 16)
        assert len(graphs) >= 30
        reports = [check_recursion(c.graph, c.name) for c in graphs]
        assert all(r.status != VIOLATED for r in reports), [r.graph["name"] for r in reports if not r.ok]
        assert time.perf_counter() - t0 < 300


def test_inequality_iff_bipartite(corpus, criterion):
    with criterion(4, "eps >= h, equality iff bipartite, full corpus"):
        equal = strict = 0
        for c in corpus:
            rep = check_inequality(c.graph, c.name)
            assert rep.ok, c.name
            eps, h = rep.lhs["eps"], rep.rhs["h"]
            assert eps >= h
            assert (eps == h) == is_bipartite(c.graph), c.name
            equal += eps == h
            strict += eps > h
        assert equal and strict
        print(f"  {equal} bipartite (equality), {strict} non-bipartite (strict)")


def test_bipartite_cover(corpus, criterion):
    with criterion(5, "bipartite double cover three-way equality, <= 10 base edges"):
        for c in upto(corpus, 10):
            rep = check_bipartite_cover(c.graph, c.name)
            assert rep.ok, c.name
            assert rep.lhs["eps_cover"] == rep.lhs["h_cover"] == rep.rhs["sum_eps_h"]


def test_cover_maximality(corpus, criterion):
    with criterion(6, "2-cover maxima: exhaustive <= 10 edges, 200 seeded signings otherwise"):
        exhaustive = sampled = 0
        for idx, c in enumerate(corpus):
            G = c.graph
            signings = signing_sweep(G, seed=SEED + idx)
            for rep in (check_cover_orientation_max(G, None, signings, c.name),
                        check_cover_factor_max(G, None, signings, c.name)):
                assert rep.ok, (rep.claim, c.name, rep.witness)
                if G.m <= 10:
                    assert rep.params["exhaustive"]
                    assert rep.params["reference_attains_max"], (rep.claim, c.name)
            if G.m <= 10:
                exhaustive += 1
            else:
                assert len(signings) == 202
                sampled += 1
        print(f"  {exhaustive} exhaustive sweeps, {sampled} sampled sweeps")


def test_mixed_identity(corpus, criterion):
    with criterion(7, "mixed 2-lift identity: 50 seeded pairs per <= 10-edge graph plus all-O / all-S"):
        graphs = upto(corpus, 10)
        for idx, c in enumerate(graphs):
            G = c.graph
            for signs, dec in mixed_pairs(G, SEED + idx, 50):
                rep = check_mixed_identity(G, signs, dec, c.name)
                assert rep.ok, (c.name, signs, dec)
            rec = check_recursion(G, c.name)
            all_o = check_mixed_identity(G, "+" * G.m, "o" * G.m, c.name)
            all_s = check_mixed_identity(G, "+" * G.m, "s" * G.m, c.name)
            assert all_o.lhs["g_lift"] == rec.lhs["eps^2"] == all_o.rhs["sum_g_gbar"] == rec.rhs["sum_eps_eps"]
            assert all_s.lhs["g_lift"] == rec.lhs["h^2"] == all_s.rhs["sum_g_gbar"] == rec.rhs["sum_h_h"]


def test_mixed_inequality(corpus, criterion):
    with criterion(8, "g <= eps over all decorations, <= 10-edge graphs"):
        for c in upto(corpus, 10):
            rep = check_mixed_inequality_sweep(c.graph, name=c.name)
            assert rep.ok, (c.name, rep.witness)
            assert rep.params["decorations"] == 2 ** c.graph.m


def test_balanced_max_and_decomposition(corpus, criterion):
    with criterion(9, "eps_r <= eps_{d/2}, reversal and decomposition over all feasible r, <= 12 edges"):
        checked = 0
        for c in upto(corpus, 12):
            G = c.graph
            rep = check_balanced_max(G, c.name)
            assert rep.ok and rep.params["balanced_attains_max"], c.name
            for r in feasible_r_vectors(G):
                rr = check_reversal_and_decomposition(G, r, c.name)
                assert rr.ok, (c.name, r, rr.witness)
                checked += 1
        print(f"  {checked} (graph, r) pairs")


def test_gadget_lemmas(corpus, criterion):
    with criterion(10, "pm(star) = eps_r prod r! (Ryser, <= 12 edges), pm(doublestar) = h_r prod r! (matcher, <= 8 edges)"):
        for idx, c in enumerate(upto(corpus, 12)):
            G = c.graph
            rng = rng_stream(SEED, 10, idx)
            rs = [[x // 2 for x in degree_vector(G)]] + [sample_orientation_r(G, rng) for _ in range(2)]
            for r in rs:
                B, _ = build_schrijver_star(G, r)
                want = count(G, CountKind.R_ORIENTATIONS, r) * factorial_product(r)
                assert permanent(B.matrix) == want, (c.name, r)
            if G.m > 8:
                continue
            rs = [[x // 2 for x in degree_vector(G)]] + [sample_factor_r(G, rng) for _ in range(2)]
            for r in rs:
                D, _ = build_tutte_doublestar(G, r)
                want = count(G, CountKind.R_FACTORS, r) * factorial_product(r)
                assert count_perfect_matchings(D) == want, (c.name, r)


def test_cover_matchings(corpus, criterion):
    with criterion(11, "pm(H) <= pm(G x K2) for 100 seeded signings, lifts with <= 16 vertices"):
        graphs = [c for c in corpus if 2 * c.graph.n <= 16]
        assert graphs
        for idx, c in enumerate(graphs):
            G = c.graph
            ref = count_perfect_matchings(build_2lift(G, "-" * G.m).H)
            for s in signing_sweep(G, seed=SEED + idx, samples=100, exhaustive_edges=-1)[2:]:
                assert count_perfect_matchings(build_2lift(G, s).H) <= ref, (c.name, s)


def test_lieb_bound(criterion):
    with criterion(12, "exact-integer toroidal bound for T3,3 and T3,4, < 5 min"):
        t0 = time.perf_counter()
        a, b = check_lieb_bound(3, 3), check_lieb_bound(3, 4)
        assert a.ok and b.ok
        assert int(a.params["eps"]) ** 2 * 3 ** 27 >= 4 ** 27
        assert int(b.params["eps"]) ** 2 * 3 ** 36 >= 4 ** 36
        print(f"  eps(T3,3) = {a.params['eps']}, eps(T3,4) = {b.params['eps']}")
        assert time.perf_counter() - t0 < 300


def test_conjecture_harness(corpus, criterion):
    with criterion(13, "1000 seeded 3-lifts across the corpus, zero violations, replayable"):
        graphs = [(c.name, c.graph) for c in corpus]
        reports = search_conjecture_corpus(graphs, 3, 1000, SEED)
        assert sum(len(r.params["trials"]) for r in reports) == 1000
        bad = [r for r in reports if r.status == VIOLATED]
        assert not bad, [r.witness for r in bad]
        assert all(r.note for r in reports)
        # every trial can be replayed from (k, perms) alone
        for rep in reports[:3]:
            name = rep.graph["name"]
            G = dict(graphs)[name]
            t = rep.params["trials"][0]
            witness = {"k": 3, "perms": random_klift(G, 3, SEED, t)}
            ref, val = replay_conjecture_witness(G, witness)
            assert str(val) == rep.params["eps_lift"][0] and ref == rep.lhs["eps^k"]


def test_determinism(corpus, criterion):
    with criterion(14, "randomized runs byte-identical across repeats and at 1 vs N threads"):
        graphs = [(c.name, c.graph) for c in corpus]
        big = next(c for c in corpus if c.graph.m > 10)
        small = upto(corpus, 10)[:6]

        def run(threads):
            reports = search_conjecture_corpus(graphs, 3, 200, SEED, threads=threads)
            sig = signing_sweep(big.graph, seed=SEED)
            reports.append(check_cover_orientation_max(big.graph, None, sig, big.name))
            reports.append(check_cover_factor_max(big.graph, None, sig, big.name))
            for idx, c in enumerate(small):
                for s, d in mixed_pairs(c.graph, SEED + idx, 5):
                    reports.append(check_mixed_identity(c.graph, s, d, c.name, threads=threads))
            return dumps(reports)

        one = run(1)
        assert one == run(1)
        assert one == run(THREADS)
