import random

import pytest
from hypothesis import given, settings, strategies as st

from zforce.certify import (
    CLAIM2,
    CYCLE_CHAIN,
    DIAMOND_START,
    SMALL_CASE,
    BuildState,
    Certificate,
    build_certificate,
    diamond_rule,
    triangle_rule,
    verify_certificate,
)
from zforce.errors import Disconnected, IsK4, NotClawFreeCubic, PreconditionBreach
from zforce.forcing import Chronicle, zero_forcing_number
from zforce.generators import UnitSpec, inflate, k4, necklace, prism, random_claw_free_cubic
from zforce.graph import disjoint_union, from_edge_list
from zforce.solvers import independence_number, matching_number
from zforce.structure import TRIANGLE, triangle_diamond_partition


def k4_shaped():
    return inflate(UnitSpec.from_pairs((TRIANGLE,) * 4, {(a, b): 1 for a in range(4) for b in range(a + 1, 4)}))


def _state(g, colored):
    st_ = BuildState(g, triangle_diamond_partition(g))
    st_.colored = set(colored)
    return st_


# --- rules ------------------------------------------------------------------


def test_triangle_rule_outside_neighbour_coloured(p6):
    s = _state(p6, {0, 3, 4})
    assert triangle_rule(s, 0) == 1
    assert s.plays == [(1, 2)]
    assert s.s == [1] and s.i == [1]


def test_triangle_rule_outside_neighbour_uncoloured(p6):
    s = _state(p6, {0, 3})
    assert triangle_rule(s, 0) == 1
    assert s.plays == [(0, 2), (1, 4)]


def test_triangle_rule_rejects_coloured_mate(p6):
    with pytest.raises(PreconditionBreach):
        triangle_rule(_state(p6, {0, 1, 3}), 0)


def test_diamond_rule_far_end_coloured(n2):
    s = _state(n2, {0, 3, 7, 4})
    assert diamond_rule(s, 0) == 1
    assert s.plays == [(1, 2)]


def test_diamond_rule_far_end_uncoloured(n2):
    s = _state(n2, {0, 7})
    assert diamond_rule(s, 0) == 1
    assert s.plays == [(0, 2), (1, 3)]


def test_diamond_rule_rejects_interior_vertex(n2):
    with pytest.raises(PreconditionBreach):
        diamond_rule(_state(n2, {1, 0}), 1)


# --- builder ----------------------------------------------------------------


def test_certificate_prism(p6):
    c = build_certificate(p6)
    assert c.mode == SMALL_CASE
    assert (len(c.s), len(c.i), len(c.m)) == (3, 2, 3)
    assert c.s == {0, 1, 2}  # one full triangle
    assert verify_certificate(p6, c).ok


def test_certificate_n2(n2):
    c = build_certificate(n2)
    assert c.mode == SMALL_CASE
    assert (len(c.s), len(c.i), len(c.m)) == (4, 3, 4)
    assert verify_certificate(n2, c).ok


def test_small_case_on_relabeled_input(n2):
    h = n2.relabel([5, 2, 7, 0, 3, 6, 1, 4])
    c = build_certificate(h)
    assert c.mode == SMALL_CASE and verify_certificate(h, c).ok


def test_certificate_n3(n3):
    c = build_certificate(n3)
    assert c.mode == DIAMOND_START
    assert len(c.s) == 5 == independence_number(n3)[0] + 1
    assert verify_certificate(n3, c).ok


def test_certificate_cycle_chain():
    g = k4_shaped()
    c = build_certificate(g)
    assert c.mode == CYCLE_CHAIN
    assert verify_certificate(g, c).ok


def test_certificate_claim2():
    # two triangles joined by a double edge, closed up through a third pair
    spec = UnitSpec.from_pairs((TRIANGLE,) * 4, {(0, 1): 2, (0, 2): 1, (1, 3): 1, (2, 3): 2})
    g = inflate(spec)
    c = build_certificate(g)
    assert c.mode == CLAIM2
    assert verify_certificate(g, c).ok


def test_builder_preconditions(p6):
    with pytest.raises(IsK4):
        build_certificate(k4())
    with pytest.raises(Disconnected):
        build_certificate(disjoint_union(p6, p6))
    with pytest.raises(NotClawFreeCubic):
        build_certificate(from_edge_list(6, [(a, b) for a in range(3) for b in range(3, 6)]))


def test_certificate_deterministic(corpus16):
    for g in corpus16:
        assert build_certificate(g) == build_certificate(g)


def test_certificate_json_round_trip(n3):
    c = build_certificate(n3)
    assert Certificate.from_json(c.to_json()) == c


def test_corpus_certificates(corpus16):
    seen_modes = set()
    for g in corpus16:
        c = build_certificate(g)
        seen_modes.add(c.mode)
        report = verify_certificate(g, c)
        assert report.ok, report.to_json()
        p = triangle_diamond_partition(g)
        assert len(c.s) <= p.n_triangles + p.n_diamonds + 2
        assert 3 * len(c.s) <= g.n + 6
        assert len(c.s) <= independence_number(g)[0] + 1
        assert len(c.s) <= matching_number(g)[0]
        assert zero_forcing_number(g)[0] <= len(c.s)
        assert 5 * zero_forcing_number(g)[0] <= 2 * g.n + 5
    assert seen_modes == {SMALL_CASE, DIAMOND_START, CLAIM2, CYCLE_CHAIN}


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_random_relabeled_certificates_verify(seed):
    rng = random.Random(seed)
    g = random_claw_free_cubic(rng.randint(2, 30), rng.choice([0.0, 0.0, 0.2, 0.5, 1.0]), seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    c = build_certificate(h)
    assert verify_certificate(h, c).ok
    p = triangle_diamond_partition(h)
    assert len(c.s) <= p.n_triangles + p.n_diamonds + 2


# --- verifier ---------------------------------------------------------------


def test_verifier_flags_dependent_i(p6):
    c = build_certificate(p6)
    bad = Certificate(c.s, c.s, c.m, c.chronicle, c.initial_unit, c.mode)
    rep = verify_certificate(p6, bad)
    assert not rep.clauses["independence"]
    assert not rep.clauses["size_relation"]


def test_verifier_flags_illegal_play(p6):
    c = build_certificate(p6)
    chron = Chronicle(frozenset({0, 1, 2}), [(0, 3), (3, 4)] + c.chronicle.plays[1:])
    rep = verify_certificate(p6, Certificate(c.s, c.i, c.m, chron, c.initial_unit, c.mode))
    assert not rep.clauses["legal_replay"]
    assert "uncoloured" in rep.details["legal_replay"]


def test_verifier_flags_incomplete_and_silent(p6):
    c = build_certificate(p6)
    chron = Chronicle(c.chronicle.initial, c.chronicle.plays[:2])
    rep = verify_certificate(p6, Certificate(c.s, c.i, c.m, chron, c.initial_unit, c.mode))
    assert not rep.clauses["legal_replay"]
    assert not rep.clauses["every_s_forces"]
    assert not rep.clauses["matching"]
