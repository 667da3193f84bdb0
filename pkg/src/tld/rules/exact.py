"""Exact time-conscious confluent rule through the Steiner reduction."""

from __future__ import annotations

from ..axioms import DelegationSolution, TimedStep, is_confluent, utility
from ..errors import NotRetrospective
from ..graph import SINK, TLDGraph
from ..profile import is_retrospective
from ..reductions.steiner import (
    DEFAULT_TERMINAL_CAP,
    ROOT,
    SteinerInstance,
    special,
    steiner_dp,
    to_steiner,
)
from .base import RuleResult, finish


def tree_to_solution(
    g: TLDGraph, inst: SteinerInstance, tree: set
) -> DelegationSolution:
    """Read one timed step per delegating voter off a Steiner tree.

    A delegating voter's step is the occurrence feeding her terminal; a
    casting voter's sink step takes the latest instant every child accepts.
    """
    parent = {b: a for a, b in tree}
    part = g.partition
    steps: dict[str, TimedStep] = {}
    for v in part.delegating:
        o = parent.get(special(v))
        if o is not None and o != ROOT:
            steps[v] = TimedStep(o[1], o[2])

    windows: dict[str, list[int]] = {}
    for v, s in steps.items():
        e = g.edge(s.edge)
        if e.head in part.casting:
            floor = s.time - (g.horizon(v, s.time) or 0)
            lo_hi = windows.setdefault(e.head, [1, g.lifespan])
            lo_hi[0] = max(lo_hi[0], floor)
            lo_hi[1] = min(lo_hi[1], s.time)
    for c, (lo, hi) in windows.items():
        sink_edge = next(e for e in g.out_edges(c) if e.head == SINK)
        steps[c] = TimedStep(sink_edge.id, max(lo, sink_edge.start))

    journeys = {}
    for v in sorted(part.delegating):
        if v not in steps:
            continue
        path = []
        u = v
        while u != SINK and u in steps and len(path) <= len(g.voters):
            path.append(steps[u])
            u = g.edge(steps[u].edge).head
        journeys[v] = tuple(path)
    return DelegationSolution(journeys)


def solve_exact_tc_confluent(
    g: TLDGraph,
    *,
    cap: int = DEFAULT_TERMINAL_CAP,
    strict: bool = False,
) -> RuleResult:
    """Maximum-utility time-conscious confluent delegation, exponential only in |D|.

    Delegating voters whose terminal the root cannot reach have no
    time-conscious route to the sink at all; they are reported unresolved
    and the tree spans the rest.  On retrospective profiles the answer is
    optimal.  Other profiles go through the same construction with
    horizon-aware chain arcs; the resulting tree is accepted only when it
    checks out as confluent and time-conscious with utility matching the
    Steiner cost, which certifies optimality, and ``NotRetrospective`` is
    raised otherwise.
    """
    retro = is_retrospective(g)
    inst = to_steiner(g, general_horizons=not retro)
    reachable = inst.reachable()
    terminals = [t for t in inst.terminals if t in reachable]
    unresolved = {t[1] for t in inst.terminals - set(terminals)}
    cost, tree = steiner_dp(inst, terminals, cap)
    sol = tree_to_solution(g, inst, tree)

    expected = inst.offset(t[1] for t in terminals) - cost
    if not is_confluent(g, sol, unresolved) or utility(g, sol) != expected:
        if not retro:
            raise NotRetrospective(
                "Steiner tree does not certify an optimal tree for these trust horizons"
            )
        raise RuntimeError("Steiner tree failed to map back to a confluent time-conscious tree")
    return finish(g, sol, unresolved, "exact", strict)
