from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ominsim import (
    ConflictKind,
    Message,
    SameSourceError,
    Topology,
    build_conflict_graph,
    build_network,
    conflict_stages,
    edges_csv,
    full_permutation,
    make_permutation,
    stage_switches,
)


def test_conflict_examples(omega8, omega4):
    assert conflict_stages(omega8, Message(0, 7), Message(4, 3)) == [(1, ConflictKind.SWITCH_CROSSTALK)]
    assert conflict_stages(omega8, Message(0, 7), Message(1, 0)) == []
    # both want stage-1 switch 0 with routing bit 0: a hard line collision,
    # and the merged paths are not compared past it
    assert conflict_stages(omega4, Message(0, 1), Message(2, 0)) == [(1, ConflictKind.LINK_CONFLICT)]


def test_same_source_rejected(omega8):
    with pytest.raises(SameSourceError):
        conflict_stages(omega8, Message(3, 1), Message(3, 2))


def test_showcase_graph_shape(omega8, showcase):
    graph = build_conflict_graph(omega8, showcase)
    assert len(graph.edges) == 12
    assert all(graph.degree(v) == 3 for v in range(8))
    assert not any(e.has_link_conflict for e in graph.edges)
    # every switch at every stage carries exactly two of the eight messages
    for stage in range(1, 4):
        occupancy = Counter(stage_switches(omega8, m)[stage - 1] for m in showcase.pairs)
        assert sorted(occupancy.values()) == [2, 2, 2, 2]
        assert sum(1 for e in graph.edges if stage in e.stages) == 4


def test_identity_graph_is_four_cycle(omega4):
    perm = full_permutation(omega4, [0, 1, 2, 3])
    graph = build_conflict_graph(omega4, perm)
    assert {(e.a, e.b) for e in graph.edges} == {(0, 1), (0, 2), (1, 3), (2, 3)}
    assert all(e.kinds == (ConflictKind.SWITCH_CROSSTALK,) for e in graph.edges)


def test_single_message_graph(omega4):
    perm = make_permutation([Message(0, 0)], 4)
    assert build_conflict_graph(omega4, perm).edges == []


@settings(max_examples=100)
@given(st.data())
def test_conflict_symmetry(data):
    net = build_network(8, Topology.OMEGA)
    s1 = data.draw(st.integers(0, 7))
    s2 = data.draw(st.integers(0, 7).filter(lambda s: s != s1))
    d1, d2 = data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7))
    a, b = Message(s1, d1), Message(s2, d2)
    assert conflict_stages(net, a, b) == conflict_stages(net, b, a)


@settings(max_examples=60)
@given(st.permutations(tuple(range(8))))
def test_last_stage_conflicts_never_link_in_full_permutations(dests):
    """Distinct destinations force distinct routing bits wherever the final
    switch is shared."""
    net = build_network(8, Topology.OMEGA)
    perm = full_permutation(net, dests)
    for i, j in combinations(range(8), 2):
        for stage, kind in conflict_stages(net, perm.pairs[i], perm.pairs[j]):
            if stage == net.stages:
                assert kind is ConflictKind.SWITCH_CROSSTALK


@settings(max_examples=60)
@given(st.permutations(tuple(range(8))))
def test_full_permutations_have_no_isolated_vertices(dests):
    net = build_network(8, Topology.OMEGA)
    graph = build_conflict_graph(net, full_permutation(net, dests))
    assert all(graph.degree(v) >= 1 for v in range(8))


def test_baseline_conflicts_use_trace():
    net = build_network(8, Topology.BASELINE)
    found = conflict_stages(net, Message(0, 0), Message(1, 1))
    assert found and all(isinstance(stage, int) for stage, _ in found)


def test_edges_csv(omega8, showcase):
    csv = edges_csv(build_conflict_graph(omega8, showcase))
    lines = csv.strip().split("\n")
    assert lines[0] == "indexA,indexB,stages,kinds"
    assert lines[1] == "0,2,2,crosstalk"
    assert len(lines) == 13
