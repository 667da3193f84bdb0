from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tld.axioms import journey_vertices
from tld.errors import CapExceeded, Infeasible, MalformedTmstInstance, NotRetrospective
from tld.graph import SINK, TemporalEdge, build_graph
from tld.reductions import (
    RestlessInstance,
    SteinerInstance,
    TmstInstance,
    brute_force_restless,
    brute_force_tmst,
    from_restless_path,
    from_tmst,
    steiner_dp,
    to_steiner,
)
from tld.reductions.steiner import ROOT, occurrence, special
from tld.rules import oracle_tc_confluent, oracle_tc_paths

from helpers import desk_family


def E(id, tail, head, s, t, w=0):
    return TemporalEdge(id, tail, head, (s, t), w)


# Steiner construction

def test_to_steiner_e1(graph):
    inst = to_steiner(graph("e1"))
    assert set(inst.nodes) == {
        ROOT, special("c"), special("d"),
        occurrence("c>SINK", 1), occurrence("c>SINK", 2), occurrence("d>c", 2),
    }
    assert inst.terminals == {special("d")}
    chain = {(a, b, w) for a, b, w in inst.arcs if a[0] == "occ" and b[0] == "occ"}
    assert chain == {
        (occurrence("c>SINK", 1), occurrence("d>c", 2), 2),
        (occurrence("c>SINK", 2), occurrence("d>c", 2), 2),
    }
    assert inst.offset() == 4
    for a, b, w in inst.arcs:
        assert w >= 0
        if a == ROOT or b[0] == "special":
            assert w == 0


def test_to_steiner_refuses_general_horizons(graph):
    with pytest.raises(NotRetrospective):
        to_steiner(graph("example"))


def test_no_delegators_costs_nothing():
    g = build_graph(["c"], [E("s", "c", SINK, 1, 1)], 1)
    inst = to_steiner(g)
    assert not inst.terminals
    assert steiner_dp(inst) == (0, set())


def test_abstainer_contributes_no_vertices(graph):
    g = graph("mixed_roles")
    assert g.partition.abstaining == {"a"}
    inst = to_steiner(g)
    assert len(inst.terminals) == 2
    assert all("a" not in (n[1] if n[0] == "special" else n[1].split(">")) for n in inst.nodes if n != ROOT)


def test_steiner_dp_e1(graph):
    inst = to_steiner(graph("e1"))
    cost, tree = steiner_dp(inst)
    assert cost == 2
    assert len(tree) == 3
    assert (occurrence("d>c", 2), special("d")) in tree
    assert any(a == ROOT for a, _ in tree)


def test_single_terminal_zero_cost():
    inst = SteinerInstance(ROOT, (ROOT, "x", "t"), ((ROOT, "x", 0), ("x", "t", 0)), frozenset({"t"}))
    assert steiner_dp(inst)[0] == 0


def test_infeasible_and_cap():
    inst = SteinerInstance(ROOT, (ROOT, "t"), (), frozenset({"t"}))
    with pytest.raises(Infeasible):
        steiner_dp(inst)
    many = SteinerInstance(ROOT, (ROOT,) + tuple(range(3)), (), frozenset(range(3)))
    with pytest.raises(CapExceeded):
        steiner_dp(many, cap=2)


def brute_steiner(inst):
    """Cheapest arc subset under which every terminal is reachable from the root."""
    best = None
    arcs = list(inst.arcs)
    for r in range(len(arcs) + 1):
        for subset in combinations(arcs, r):
            reach = {inst.root}
            grew = True
            while grew:
                grew = False
                for a, b, _ in subset:
                    if a in reach and b not in reach:
                        reach.add(b)
                        grew = True
            if inst.terminals <= reach:
                cost = sum(w for _, _, w in subset)
                best = cost if best is None else min(best, cost)
    return best


def test_shared_prefix_counted_once():
    # root -> a -> b splits to two terminals; the shared prefix costs 5
    arcs = (
        (ROOT, "a", 5), ("a", "b", 0), ("b", "t1", 1), ("b", "t2", 1),
        (ROOT, "t1", 4), (ROOT, "t2", 4), ("a", "c", 2), ("c", "t2", 0),
        ("d", "t1", 0), (ROOT, "e", 1), ("e", "d", 9),
    )
    nodes = (ROOT, "a", "b", "c", "d", "e", "t1", "t2", "u", "w")
    inst = SteinerInstance(ROOT, nodes, arcs, frozenset({"t1", "t2"}))
    assert steiner_dp(inst)[0] == brute_steiner(inst) == 7


@st.composite
def small_steiner(draw):
    nodes = (ROOT,) + tuple(range(5))
    arcs = []
    for a in nodes:
        for b in nodes[1:]:
            if a != b and draw(st.integers(0, 3)) == 0:
                arcs.append((a, b, draw(st.integers(0, 4))))
    k = draw(st.integers(1, 3))
    return SteinerInstance(ROOT, nodes, tuple(arcs[:12]), frozenset(range(k)))


@settings(max_examples=120, deadline=None)
@given(small_steiner())
def test_steiner_dp_matches_enumeration(inst):
    expected = brute_steiner(inst)
    if expected is None:
        with pytest.raises(Infeasible):
            steiner_dp(inst)
    else:
        cost, tree = steiner_dp(inst)
        assert cost == expected
        assert sum(w for a, b, w in inst.arcs if (a, b) in tree) == cost


def test_round_trip_identity():
    for _, g in desk_family(120, seed=21):
        oracle = oracle_tc_confluent(g)
        inst = to_steiner(g)
        reachable = inst.reachable()
        terms = [t for t in inst.terminals if t in reachable]
        cost, _ = steiner_dp(inst, terms)
        assert cost == inst.offset(t[1] for t in terms) - oracle.objective


# t-MST

def test_tmst_two_vertex_example(fixture_path):
    from tld.io import read_json, tmst_from_doc

    inst, k_prime = tmst_from_doc(read_json(fixture_path("tmst1.json")))
    g, k = from_tmst(inst, k_prime)
    got = sorted((e.tail, e.head, e.interval, e.weight) for e in g.edges)
    assert got == [
        ("u0", SINK, (1, 2), 0),
        ("v", "a", (2, 2), 1),
        ("v", "u0", (1, 1), 1),
        ("v", "u0", (2, 2), 2),
    ]
    assert k == 3 - k_prime == 2
    assert brute_force_tmst(inst) == 1
    assert oracle_tc_confluent(g).objective == 2


def test_tmst_single_vertex():
    g, k = from_tmst(TmstInstance(("r",), (), 2, "r"), 0)
    assert g.partition.casting == {"r"} and not g.partition.delegating
    assert k == 0


@pytest.mark.parametrize(
    "edges, msg",
    [
        ([E("x", "u", "r", 1, 1, 2), E("y", "u", "r", 2, 2, 1)], "enters the root"),
        ([E("x", "r", "u", 1, 1, 3), E("y", "r", "u", 2, 2, 1)], "weight"),
        ([E("x", "r", "u", 1, 1, 2)], "no incoming arc"),
        ([E("x", "r", "u", 2, 2, 1)], "pair"),
    ],
)
def test_tmst_malformed(edges, msg):
    with pytest.raises(MalformedTmstInstance, match=msg):
        from_tmst(TmstInstance(("r", "u"), tuple(edges), 2, "r"), 1)


def random_tmst(rng: random.Random, paired: bool) -> TmstInstance:
    n = rng.randint(1, 6 if paired else 5)
    L = rng.randint(2, 4)
    vs = [f"u{i}" for i in range(n)]
    edges = []
    for h in vs[1:]:
        tails = [t for t in vs if t != h and rng.random() < 0.5] or [rng.choice([t for t in vs if t != h])]
        for t in tails:
            if paired:
                edges.append(E(f"{t}{h}a", t, h, 1, L - 1, 2))
                edges.append(E(f"{t}{h}b", t, h, L, L, 1))
                continue
            # disjoint runs covering a random prefix plus the last instant
            cut = rng.randint(0, L - 1)
            if cut:
                edges.append(E(f"{t}{h}a", t, h, 1, cut, rng.choice((1, 2))))
            edges.append(E(f"{t}{h}b", t, h, cut + 1, L, rng.choice((1, 2))))
    return TmstInstance(tuple(vs), tuple(edges), L, vs[0])


@pytest.mark.parametrize("paired", [True, False])
def test_tmst_equivalence(paired):
    rng = random.Random(5 if paired else 6)
    for _ in range(60):
        inst = random_tmst(rng, paired)
        best = brute_force_tmst(inst)
        g, k = from_tmst(inst, best if best is not None else 0, paired=paired)
        res = oracle_tc_confluent(g)
        if best is None:
            assert res.unresolved
        else:
            assert not res.unresolved
            assert res.objective == k == 3 * (len(inst.vertices) - 1) - best
        for j in res.solution.journeys.values():
            assert "a" not in journey_vertices(g, j)


# restless paths

def test_restless_yes_example(fixture_path):
    from tld.io import read_json, restless_from_doc

    inst = restless_from_doc(read_json(fixture_path("restless1.json")))
    g, k = from_restless_path(inst)
    assert k == 1 and g.lifespan == 3
    assert g.partition.delegating == {"y"}
    res = oracle_tc_paths(g)
    assert [(s.edge, s.time) for s in res.solution.journeys["y"]] == [("my", 2), ("xm", 1), ("x>SINK", 1)]
    assert brute_force_restless(inst)


def test_restless_too_slow():
    inst = RestlessInstance(("x", "m", "y"), (E("xm", "x", "m", 1, 1), E("my", "m", "y", 3, 3)), 3, "x", "y", 1)
    assert not brute_force_restless(inst)
    g, _ = from_restless_path(inst)
    assert oracle_tc_paths(g).unresolved == {"y"}


def test_restless_disconnected():
    inst = RestlessInstance(("x", "y"), (), 2, "x", "y", 1)
    g, _ = from_restless_path(inst)
    assert oracle_tc_paths(g).unresolved == {"y"}


def random_restless(rng: random.Random) -> RestlessInstance:
    n = rng.randint(2, 6)
    L = rng.randint(1, 4)
    vs = [f"w{i}" for i in range(n)]
    edges = []
    for t in vs:
        for h in vs:
            if t != h and rng.random() < 0.35:
                s = rng.randint(1, L)
                edges.append(E(f"{t}{h}", t, h, s, rng.randint(s, L)))
    x, y = rng.sample(vs, 2)
    return RestlessInstance(tuple(vs), tuple(edges), L, x, y, rng.randint(0, 2))


def test_restless_equivalence():
    rng = random.Random(8)
    for _ in range(100):
        inst = random_restless(rng)
        g, k = from_restless_path(inst)
        res = oracle_tc_paths(g, max_events=10**4)
        assert (res.objective >= k) == brute_force_restless(inst)
