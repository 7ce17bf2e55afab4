import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import connected_bfs, cubic_graphs, has_induced_claw
from zforce.errors import (
    EndpointOutOfRange,
    Graph6Error,
    MalformedHeader,
    NonPrintableByte,
    SelfLoop,
    TruncatedBitVector,
)
from zforce.generators import enumerate_connected_claw_free_cubic, k4, necklace, prism
from zforce.graph import (
    are_isomorphic,
    count_triangles,
    decode_graph6,
    disjoint_union,
    encode_graph6,
    find_isomorphism,
    from_edge_list,
    from_json,
    is_claw_free,
    is_connected,
    is_cubic,
)


def q3():
    return from_edge_list(8, [(a, a ^ (1 << i)) for a in range(8) for i in range(3)])


def k33():
    return from_edge_list(6, [(a, b) for a in range(3) for b in range(3, 6)])


def claw():
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


def shuffled(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def test_from_edge_list_complete_graph():
    g = from_edge_list(4, list(combinations(range(4), 2)))
    assert g.m == 6
    assert all(g.degree(v) == 3 for v in range(4))


def test_symmetric_pair_is_deduplicated():
    g = from_edge_list(2, [(0, 1), (1, 0)])
    assert g.m == 1
    assert g.adj == ((1,), (0,))


def test_endpoint_out_of_range():
    with pytest.raises(EndpointOutOfRange):
        from_edge_list(3, [(0, 3)])


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        from_edge_list(3, [(1, 1)])


def test_adjacency_invariants(corpus14):
    for g in corpus14 + [k4(), q3()]:
        for u in range(g.n):
            for v in g.adj[u]:
                assert u in g.adj[v]
            assert u not in g.adj[u]
        assert 2 * g.m == sum(g.degree(v) for v in range(g.n))


def test_json_round_trip(p6):
    assert from_json(p6.to_json()) == p6


# --- graph6 -----------------------------------------------------------------


def test_graph6_k4_round_trip():
    g = k4()
    assert encode_graph6(g) == b"C~"
    assert decode_graph6(encode_graph6(g)) == g


def test_graph6_prism_round_trip(p6):
    h = decode_graph6(encode_graph6(p6))
    assert (h.n, h.m) == (6, 9)
    assert is_cubic(h)
    assert h == p6


def test_graph6_reference_strings():
    # hand-packed: C5 bits 101001|1001(00), single edge 1(00000)
    assert encode_graph6(from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])) == b"Dhc"
    assert decode_graph6("A_").edges == {(0, 1)}
    assert decode_graph6("A?").m == 0


def test_graph6_long_header():
    g = from_edge_list(70, [(i, i + 1) for i in range(69)])
    data = encode_graph6(g)
    assert data[0] == 126 and len(data) == 4 + (70 * 69 // 2 + 5) // 6
    assert decode_graph6(data) == g


def test_graph6_errors():
    with pytest.raises(MalformedHeader):
        decode_graph6("~")
    with pytest.raises(MalformedHeader):
        decode_graph6("")
    with pytest.raises(TruncatedBitVector):
        decode_graph6("E{S")
    with pytest.raises(NonPrintableByte):
        decode_graph6(b"E{S\x01")
    with pytest.raises(Graph6Error):
        decode_graph6("C~~")


def test_graph6_round_trip_corpus(corpus16):
    for g in corpus16:
        text = encode_graph6(g)
        assert decode_graph6(text) == g
        assert encode_graph6(decode_graph6(text)) == text


@given(st.integers(0, 30), st.data())
def test_graph6_round_trip_random(n, data):
    pairs = list(combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = from_edge_list(n, chosen)
    assert decode_graph6(encode_graph6(g)) == g


# --- predicates -------------------------------------------------------------


def test_is_connected_examples(p6):
    assert is_connected(p6)
    tri = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    assert not is_connected(disjoint_union(tri, tri))
    assert is_connected(from_edge_list(1, []))


def test_is_cubic_examples(n2):
    assert is_cubic(k4())
    assert not is_cubic(from_edge_list(3, [(0, 1), (1, 2)]))
    assert is_cubic(n2)


def test_is_claw_free_examples(p6):
    assert is_claw_free(p6)
    assert not is_claw_free(claw())
    g = q3()
    # oracle: every neighbourhood of Q3 is an independent triple
    for v in range(8):
        assert not any(g.has_edge(a, b) for a, b in combinations(g.adj[v], 2))
    assert not is_claw_free(g)
    assert has_induced_claw(g)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_claw_free_matches_four_subset_scan(n):
    for g in cubic_graphs(n):
        assert is_claw_free(g) == (not has_induced_claw(g))
        assert is_connected(g) == connected_bfs(g)


@pytest.mark.slow
def test_claw_free_matches_four_subset_scan_n12():
    for g in cubic_graphs(12):
        assert is_claw_free(g) == (not has_induced_claw(g))


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_predicates_invariant_under_relabeling(seed):
    corpus = enumerate_connected_claw_free_cubic(14) + [q3(), k33(), claw()]
    g = corpus[seed % len(corpus)]
    h = shuffled(g, seed)
    assert (is_connected(g), is_cubic(g), is_claw_free(g)) == (is_connected(h), is_cubic(h), is_claw_free(h))


# --- isomorphism ------------------------------------------------------------


def test_isomorphism_examples(p6, n2):
    assert are_isomorphic(p6, shuffled(p6, 3))
    # K33 has no triangle; the prism has two
    assert count_triangles(k33()) == 0 and count_triangles(p6) == 2
    assert not are_isomorphic(p6, k33())
    swapped = n2.relabel([4, 5, 6, 7, 0, 1, 2, 3])
    assert are_isomorphic(n2, swapped)


def test_find_isomorphism_returns_edge_preserving_map(corpus14):
    for seed, g in enumerate(corpus14):
        h = shuffled(g, seed)
        iso = find_isomorphism(g, h)
        assert iso is not None
        assert sorted(iso.values()) == list(range(g.n))
        assert {tuple(sorted((iso[a], iso[b]))) for a, b in g.edges} == set(h.edges)


def test_corpus_pairwise_non_isomorphic(corpus16):
    for a, b in combinations(corpus16, 2):
        assert not are_isomorphic(a, b)


def test_necklaces_distinct_from_each_other():
    assert not are_isomorphic(necklace(3), prism())
    assert not are_isomorphic(necklace(4), disjoint_union(necklace(2), necklace(2)))
