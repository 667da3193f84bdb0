"""Confluent, utility-maximising rule that ignores time labels."""

from __future__ import annotations

from ..axioms import DelegationSolution, TimedStep
from ..graph import SINK, TLDGraph, static_variant
from .arborescence import Arc, min_arborescence
from .base import RuleResult, finish


def _reaching_sink(nodes: set[str], arcs) -> set[str]:
    into: dict[str, list[str]] = {}
    for tail, head in arcs:
        into.setdefault(head, []).append(tail)
    seen = {SINK}
    stack = [SINK]
    while stack:
        for tail in into.get(stack.pop(), ()):
            if tail in nodes and tail not in seen:
                seen.add(tail)
                stack.append(tail)
    return seen


def solve_confluent(g: TLDGraph, *, strict: bool = False) -> RuleResult:
    """Maximum-weight sink-rooted tree on the static variant over non-abstainers.

    Arcs are reversed and negated so that a minimum arborescence grown out
    of the sink is a maximum-utility delegation tree.  Voters that cannot
    reach the sink statically are reported unresolved and left out.
    """
    part = g.partition
    static = static_variant(g)
    keep = set(part.active) | {SINK}
    arcs = {(t, h): w for (t, h), w in static.arcs.items() if t in keep and h in keep}
    nodes = _reaching_sink(keep, arcs)
    unresolved = part.delegating - nodes

    reversed_arcs = [
        Arc(h, t, -w, (t, h)) for (t, h), w in arcs.items() if t in nodes and h in nodes
    ]
    chosen = min_arborescence(nodes, reversed_arcs, SINK)

    step: dict[str, TimedStep] = {}
    for tail, head in chosen:
        e = g.edge(static.source[(tail, head)])
        step[tail] = TimedStep(e.id, e.end)

    journeys = {}
    for v in sorted(part.delegating & nodes):
        path = []
        u = v
        while u != SINK:
            path.append(step[u])
            u = g.edge(step[u].edge).head
        journeys[v] = tuple(path)
    sol = DelegationSolution(journeys, walks=False, time_conscious=False)
    return finish(g, sol, unresolved, "confluent", strict)
