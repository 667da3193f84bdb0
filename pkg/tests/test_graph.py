from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tld.errors import DeltaOutOfRange, EventBlowup, MalformedEdge, OverlappingParallelEdges
from tld.graph import (
    SINK,
    TemporalEdge,
    build_graph,
    classify_voters,
    edge_events,
    flip_time,
    reverse,
    static_variant,
)


def E(id, tail, head, s, t, w=0):
    return TemporalEdge(id, tail, head, (s, t), w)


def test_vacuous_graph_has_single_abstainer():
    g = build_graph(["v"], [], 1)
    assert g.partition.abstaining == {"v"}
    assert not g.partition.casting and not g.partition.delegating


def test_e1_classification(graph):
    p = classify_voters(graph("e1"))
    assert p.casting == {"c"} and p.delegating == {"d"} and not p.abstaining


def test_example_classification(graph):
    p = graph("example").partition
    assert p.casting == {"Alice", "Daisy"}
    assert p.abstaining == {"Elsa", "Fred"}
    assert p.delegating == {"Bob", "Charlie"}


def test_edge_ending_early_makes_abstainer():
    g = build_graph(["c", "d"], [E("c", "c", SINK, 1, 3), E("x", "d", "c", 1, 2, 1)], 3, {"d": {1: 0, 2: 1}})
    assert g.partition.role("d") == "abstaining"
    assert g.edge("x").weight == 0


@pytest.mark.parametrize(
    "edges, msg",
    [
        ([E("x", "d", "c", 3, 2)], "interval"),
        ([E("x", "d", "q", 1, 1)], "unknown head"),
        ([E("x", "d", "d", 1, 1)], "self-loop"),
        ([E("x", "c", SINK, 1, 1)], "last until"),
        ([E("x", "d", "c", 1, 1, -1)], "weight"),
        ([E("x", "d", "c", 1, 1), E("x", "c", SINK, 1, 2)], "duplicate"),
    ],
)
def test_malformed_edges(edges, msg):
    with pytest.raises(MalformedEdge, match=msg):
        build_graph(["c", "d"], edges, 2, {"d": {1: 0}})


def test_overlapping_parallel_edges():
    with pytest.raises(OverlappingParallelEdges):
        build_graph(["c", "d"], [E("a", "d", "c", 1, 2), E("b", "d", "c", 2, 2)], 2, {"d": {1: 0, 2: 1}})


def test_delta_bounds():
    edges = [E("c", "c", SINK, 1, 2), E("x", "d", "c", 2, 2, 1)]
    with pytest.raises(DeltaOutOfRange, match="must lie"):
        build_graph(["c", "d"], edges, 2, {"d": {2: 2}})
    with pytest.raises(DeltaOutOfRange, match="missing"):
        build_graph(["c", "d"], edges, 2, {})


def test_casting_voter_loses_approvals():
    edges = [E("s", "c", SINK, 1, 2), E("x", "c", "d", 1, 1, 3), E("y", "d", "c", 2, 2, 1)]
    g = build_graph(["c", "d"], edges, 2, {"c": {1: 0}, "d": {2: 1}})
    assert not g.has_edge("x")
    assert "c" not in g.delta


def test_static_variant_keeps_heaviest_parallel_edge():
    edges = [E("s", "c", SINK, 1, 2), E("a", "d", "c", 1, 1, 1), E("b", "d", "c", 2, 2, 3)]
    g = build_graph(["c", "d"], edges, 2, {"d": {1: 0, 2: 1}})
    st_ = static_variant(g)
    assert st_.arcs == {("d", "c"): 3, ("c", SINK): 0}
    assert st_.source[("d", "c")] == "b"
    assert static_variant(build_graph(["v"], [], 1)).arcs == {}


def test_static_variant_e1(graph):
    assert static_variant(graph("e1")).arcs == {("d", "c"): 2, ("c", SINK): 0}


def test_flip_time_endpoint_map(graph):
    g = build_graph(["c", "d"], [E("s", "c", SINK, 1, 5), E("a", "d", "c", 2, 4), E("b", "d", "c", 1, 1)], 5,
                    {"d": {t: t - 1 for t in range(1, 5)}})
    f = flip_time(g)
    assert f.edge("a").interval == (2, 4)
    assert f.edge("b").interval == (5, 5)
    f1 = flip_time(graph("e1"))
    assert f1.edge("d>c").interval == (1, 1)
    assert f1.edge("c>SINK").interval == (1, 2)


def test_reverse_and_events(graph):
    g = graph("e1")
    r = reverse(g)
    assert (r.edge("d>c").tail, r.edge("d>c").head, r.edge("d>c").weight) == ("c", "d", 2)
    events = [(e.id, t) for e, t in edge_events(g)]
    assert events == [("c>SINK", 1), ("c>SINK", 2), ("d>c", 2)]
    assert len(E("x", "d", "c", 1, 3).instants()) == 3


def test_event_cap(graph):
    with pytest.raises(EventBlowup):
        edge_events(graph("e1"), cap=2)


@st.composite
def temporal_graphs(draw):
    L = draw(st.integers(1, 6))
    n = draw(st.integers(1, 5))
    voters = [f"v{i}" for i in range(n)]
    edges = []
    for i, v in enumerate(voters):
        if draw(st.booleans()):
            edges.append(E(f"{v}>SINK", v, SINK, draw(st.integers(1, L)), L))
            continue
        for u in voters:
            if u != v and draw(st.booleans()):
                s = draw(st.integers(1, L))
                t = draw(st.integers(s, L))
                edges.append(E(f"{v}>{u}", v, u, s, t, draw(st.integers(0, 3))))
    delta = {v: {t: draw(st.integers(0, t - 1)) for t in range(1, L + 1)} for v in voters}
    return build_graph(voters, edges, L, delta)


@settings(max_examples=150, deadline=None)
@given(temporal_graphs())
def test_flip_time_is_an_involution(g):
    back = flip_time(flip_time(g))
    assert back.edges == g.edges
    assert back.lifespan == g.lifespan


@settings(max_examples=150, deadline=None)
@given(temporal_graphs())
def test_partition_is_exhaustive_and_disjoint(g):
    p = g.partition
    assert p.casting | p.abstaining | p.delegating == set(g.voters)
    assert not (p.casting & p.abstaining or p.casting & p.delegating or p.abstaining & p.delegating)
    for e in g.edges:
        if e.tail in p.casting:
            assert e.head == SINK
        if e.tail in p.casting or e.tail in p.abstaining:
            assert e.weight == 0
    assert g.event_count() == len(edge_events(g))
