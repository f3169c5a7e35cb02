import pytest
from hypothesis import given, settings, strategies as st

from eulercover.counting import count_eulerian_orientations, count_half_graphs
from eulercover.covers import (
    bar_restriction,
    bipartite_double_cover,
    build_2lift,
    build_klift,
    disjoint_double,
    induced_degree_vector,
    is_covering_map,
    parse_perms,
    perms_to_signing,
    random_klift,
    random_signing,
    serialize_lift,
    transfer_decorations,
)
from eulercover.graph import (
    Multigraph,
    components,
    cycle,
    degree_vector,
    disjoint_union,
    is_bipartite,
    is_eulerian,
    relabel,
)

from conftest import multigraphs

EDGE = Multigraph(2, ((0, 1),))


def _component_sizes(G):
    return sorted(len(c) for c in components(G))


def _edge_set(G):
    return sorted(tuple(sorted(e)) for e in G.edges)


def test_all_plus_lift_is_two_copies():
    L = build_2lift(cycle(3), "+++")
    assert _edge_set(L.H) == _edge_set(disjoint_union(cycle(3), cycle(3)))


def test_all_minus_lift_of_triangle_is_hexagon():
    L = build_2lift(cycle(3), "---")
    assert _component_sizes(L.H) == [6]
    assert set(degree_vector(L.H)) == {2}


def test_single_edge_minus():
    L = build_2lift(EDGE, "-")
    assert L.H.edges == ((0, 3), (2, 1))


def test_klift_identity_matches_all_plus():
    assert build_klift(cycle(3), [[0, 1]] * 3).H == build_2lift(cycle(3), "+++").H


def test_klift_single_edge_three_cycle():
    L = build_klift(EDGE, [[1, 2, 0]])
    assert L.H.m == 3 and set(degree_vector(L.H)) == {1}


def test_klift_triangle_three_cycle_is_c9():
    L = build_klift(cycle(3), [[1, 2, 0]] * 3)
    assert _component_sizes(L.H) == [9]


def test_layer_major_numbering():
    L = build_klift(cycle(3), [[1, 2, 0]] * 3)
    assert L.layer[4] == (1, 1)
    assert L.projection == tuple(e for e in range(3) for _ in range(3))


def test_bipartite_double_cover_of_c4_is_two_c4():
    H = bipartite_double_cover(cycle(4)).H
    # relabel the odd-position vertices across layers to recover C4 + C4
    perm = [0, 5, 2, 7, 4, 1, 6, 3]
    assert sorted(map(sorted, relabel(H, perm).edges)) == \
        sorted(map(sorted, disjoint_union(cycle(4), cycle(4)).edges))


def test_double_covers_of_c5():
    assert count_eulerian_orientations(disjoint_double(cycle(5)).H) == 4
    H = bipartite_double_cover(cycle(5)).H
    assert _component_sizes(H) == [10]
    assert count_eulerian_orientations(H) == 2


def test_induced_degree_vector():
    L = build_2lift(cycle(3), "+-+")
    assert induced_degree_vector([1, 1, 1], L) == [1] * 6
    D = disjoint_double(EDGE)
    assert induced_degree_vector([2, 0], D) == [2, 0, 2, 0]


def test_transfer_decorations():
    assert transfer_decorations("ooo", build_2lift(cycle(3), "-+-")) == ["o"] * 6
    assert transfer_decorations("oso", disjoint_double(cycle(3))) == list("oossoo")
    dec = transfer_decorations("osos", build_klift(cycle(4), [[2, 0, 1]] * 4))
    assert dec.count("o") == 6 and dec.count("s") == 6


def test_bar_restriction():
    C3 = cycle(3)
    assert bar_restriction(C3, 0b111, "+++", "oso")[1] == list("oso")
    assert bar_restriction(C3, 0b111, "---", "ooo")[1] == list("sss")
    assert bar_restriction(C3, 0b111, "+-+", "oos")[1] == list("oss")
    H, roles = bar_restriction(C3, 0b110, "+-+", "oos")
    assert H.edges == ((1, 2), (2, 0)) and roles == ["s", "s"]


def test_random_signing_deterministic():
    G = cycle(7)
    assert random_signing(G, 11) == random_signing(G, 11)
    assert random_signing(G, 11, 3) == random_signing(G, 11, 3)
    assert random_signing(G, 11, 3) != random_signing(G, 11, 4)


def test_random_signing_hits_both_signs():
    seen = {random_signing(EDGE, s)[0] for s in range(40)}
    assert seen == {"+", "-"}


def test_random_klift_is_permutations_and_2_is_signing():
    perms = random_klift(cycle(5), 4, 2)
    assert all(sorted(p) == [0, 1, 2, 3] for p in perms)
    two = random_klift(cycle(5), 2, 9)
    assert build_klift(cycle(5), two).H == build_2lift(cycle(5), perms_to_signing(two)).H


def test_random_klift_uniform_ish():
    counts = {}
    for s in range(600):
        p = tuple(random_klift(EDGE, 3, s)[0])
        counts[p] = counts.get(p, 0) + 1
    assert len(counts) == 6 and min(counts.values()) > 60


@settings(max_examples=50, deadline=None)
@given(multigraphs(max_n=5, max_m=7), st.data())
def test_lift_degrees_and_projection(G, data):
    signs = data.draw(st.lists(st.sampled_from("+-"), min_size=G.m, max_size=G.m))
    L = build_2lift(G, signs)
    d, dH = degree_vector(G), degree_vector(L.H)
    assert all(dH[x] == d[v] for x, (v, _) in enumerate(L.layer))
    assert is_eulerian(L.H) == is_eulerian(G)
    assert all(L.projection.count(e) == 2 for e in range(G.m))
    assert is_covering_map(L.H, G, [v for v, _ in L.layer], L.projection, 2)
    if is_bipartite(G):
        assert is_bipartite(L.H)
    assert is_bipartite(bipartite_double_cover(G).H)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_n=5, max_m=6), st.integers(2, 4), st.integers(0, 10**6))
def test_klift_is_cover(G, k, seed):
    L = build_klift(G, random_klift(G, k, seed), k)
    assert is_covering_map(L.H, G, [v for v, _ in L.layer], L.projection, k)


def test_covering_map_rejects_non_cover():
    H = cycle(6)
    assert not is_covering_map(H, cycle(3), [0, 1, 2, 0, 1, 1], [0, 1, 2, 0, 1, 2], 2)


def _flip(signs, edges):
    return "".join(("-" if c == "+" else "+") if i in edges else c for i, c in enumerate(signs))


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_m=8), st.data())
def test_vertex_switching_preserves_counts(G, data):
    signs = "".join(data.draw(st.lists(st.sampled_from("+-"), min_size=G.m, max_size=G.m)))
    v = data.draw(st.integers(0, G.n - 1))
    switched = _flip(signs, set(G.incident(v)))
    H0, H1 = build_2lift(G, signs).H, build_2lift(G, switched).H
    assert count_eulerian_orientations(H0) == count_eulerian_orientations(H1)
    assert count_half_graphs(H0) == count_half_graphs(H1)


def test_single_tree_edge_flip_can_change_the_lift():
    # flipping one edge of a cycle changes the sign product around it
    assert count_eulerian_orientations(build_2lift(cycle(3), "+-+").H) == 2
    assert count_eulerian_orientations(build_2lift(cycle(3), "--+").H) == 4


def test_lift_file_format():
    L = build_2lift(cycle(3), "+-+")
    text = serialize_lift(L)
    lines = text.splitlines()
    assert lines[0] == "base 3 3 k 2"
    assert lines[1] == "6 6"
    assert lines[8:] == ["0 0", "1 0", "2 1", "3 1", "4 2", "5 2"]
    assert text.endswith("\n") and "\r" not in text


def test_parse_perms():
    assert parse_perms("1 0\n0 1\n1 0\n", 3) == [[1, 0], [0, 1], [1, 0]]
    with pytest.raises(ValueError):
        parse_perms("1 1\n0 1\n1 0\n", 3)
    with pytest.raises(ValueError):
        parse_perms("1 0\n", 3)
