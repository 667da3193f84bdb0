"""Exhaustive reference solvers for desk-scale instances.

These search the original (unmirrored) graph directly and share no code
with the polynomial or Steiner-based rules they are used to check.
"""

from __future__ import annotations

from itertools import product

from ..axioms import DelegationSolution, TimedStep
from ..errors import ScaleExceeded
from ..graph import SINK, TemporalEdge, TLDGraph, static_variant
from .base import RuleResult, finish

MAX_VOTERS = 8
MAX_EVENTS = 64


def _check_scale(g: TLDGraph, max_voters: int, max_events: int) -> None:
    if len(g.voters) > max_voters:
        raise ScaleExceeded(f"{len(g.voters)} voters exceed the oracle limit of {max_voters}")
    if g.event_count() > max_events:
        raise ScaleExceeded(f"{g.event_count()} edge events exceed the oracle limit of {max_events}")


def _pair_ok(g: TLDGraph, e: TemporalEdge, t: int, nxt: int) -> bool:
    return t >= nxt >= t - (g.horizon(e.tail, t) or 0)


def oracle_tc_confluent(
    g: TLDGraph,
    *,
    max_voters: int = MAX_VOTERS,
    max_events: int = MAX_EVENTS,
    strict: bool = False,
) -> RuleResult:
    """Best time-conscious confluent tree by enumeration.

    Every delegating voter picks one outgoing edge toward a non-abstainer,
    or none (unresolved); casting voters keep their sink edge.  For each
    choice whose edges lead every chosen voter to the sink, all instants are
    enumerated, root first, to find one assignment that is time-conscious
    along every tree arc.  Resolving more voters beats higher utility.
    """
    _check_scale(g, max_voters, max_events)
    part = g.partition
    active = part.active
    delegators = sorted(part.delegating)
    options = [
        [None] + [e for e in g.out_edges(v) if e.head == SINK or e.head in active]
        for v in delegators
    ]
    sink_edge = {c: next(e for e in g.out_edges(c) if e.head == SINK) for c in part.casting}

    # best possible (count, weight) still obtainable from voter i onward
    tail_bound = [(0, 0)] * (len(delegators) + 1)
    for i in range(len(delegators) - 1, -1, -1):
        top = max((e.weight for e in options[i] if e is not None), default=None)
        c, w = tail_bound[i + 1]
        tail_bound[i] = (c + 1, w + top) if top is not None else (c, w)
    for opts in options:
        opts.sort(key=lambda e: (e is None, -(e.weight if e else 0)))

    best: dict = {"key": None, "steps": None}
    chosen: dict[str, TemporalEdge] = {}

    def search(i: int, count: int, weight: int) -> None:
        rc, rw = tail_bound[i]
        if best["key"] is not None and (count + rc, weight + rw) <= best["key"]:
            return
        if i == len(delegators):
            order = _root_first(chosen, part.casting)
            if order is None:
                return
            edges = dict(chosen)
            edges.update((c, sink_edge[c]) for c in part.casting if c in order)
            times = _assign_times(g, order, edges)
            if times is not None:
                best["key"] = (count, weight)
                best["steps"] = {v: TimedStep(edges[v].id, times[v]) for v in order}
            return
        v = delegators[i]
        for e in options[i]:
            if e is None:
                search(i + 1, count, weight)
                continue
            chosen[v] = e
            search(i + 1, count + 1, weight + e.weight)
            del chosen[v]

    search(0, 0, 0)
    best_steps = best["steps"]

    journeys = {}
    if best_steps is not None:
        for v in delegators:
            if v not in best_steps:
                continue
            path = []
            u = v
            while u != SINK:
                path.append(best_steps[u])
                u = g.edge(best_steps[u].edge).head
            journeys[v] = tuple(path)
    unresolved = set(delegators) - set(journeys)
    return finish(g, DelegationSolution(journeys), unresolved, "oracle-tree", strict)


def _root_first(chosen: dict[str, TemporalEdge], casting) -> list[str] | None:
    """Vertices ordered so each comes after its parent; None if some chain fails."""
    depth: dict[str, int] = {c: 0 for c in casting}

    def resolve(v: str, trail: set[str]) -> int | None:
        if v in depth:
            return depth[v]
        if v not in chosen or v in trail:
            return None
        trail.add(v)
        d = resolve(chosen[v].head, trail)
        if d is None:
            return None
        depth[v] = d + 1
        return depth[v]

    for v in chosen:
        if resolve(v, set()) is None:
            return None
    used = set(chosen) | {e.head for e in chosen.values()}
    return sorted((v for v in depth if v in used), key=lambda v: (depth[v], v))


def _assign_times(g: TLDGraph, order: list[str], edges: dict[str, TemporalEdge]) -> dict | None:
    times: dict[str, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        e = edges[v]
        for t in e.instants():
            if e.head != SINK and not _pair_ok(g, e, t, times[e.head]):
                continue
            times[v] = t
            if place(i + 1):
                return True
        times.pop(v, None)
        return False

    return dict(times) if place(0) else None


def oracle_tc_paths(
    g: TLDGraph,
    walks: bool = False,
    max_wait: int | None = None,
    *,
    max_voters: int = MAX_VOTERS,
    max_events: int = MAX_EVENTS,
    strict: bool = False,
) -> RuleResult:
    """Per-voter best first edge over all time-conscious journeys, by depth-first search.

    In walk mode vertices may repeat but each (edge, instant) is used at most
    once per journey, and a journey that returns to its start must leave by
    its first edge again.  ``max_wait`` overrides the stored horizons with
    ``min(max_wait, t - 1)``.
    """
    _check_scale(g, max_voters, max_events)

    def horizon(e: TemporalEdge, t: int) -> int:
        if max_wait is not None:
            return min(max_wait, t - 1)
        return g.horizon(e.tail, t) or 0

    def reach(start: str, first: TemporalEdge, trail: list, used: set, visited: set) -> bool:
        e, t = trail[-1]
        if e.head == SINK:
            return True
        for nxt in g.out_edges(e.head):
            if walks:
                if nxt.tail == start and nxt.id != first.id:
                    continue
            elif nxt.head in visited:
                continue
            for t2 in nxt.instants():
                if not t >= t2 >= t - horizon(e, t) or (nxt.id, t2) in used:
                    continue
                trail.append((nxt, t2))
                used.add((nxt.id, t2))
                visited.add(nxt.head)
                if reach(start, first, trail, used, visited):
                    return True
                trail.pop()
                used.discard((nxt.id, t2))
                if not walks:
                    visited.discard(nxt.head)
        return False

    journeys = {}
    unresolved = set()
    for v in sorted(g.partition.delegating):
        found = None
        for first in g.out_edges(v):
            if found is not None and first.weight <= g.edge(found[0].edge).weight:
                continue
            for t in first.instants():
                trail = [(first, t)]
                if reach(v, first, trail, {(first.id, t)}, {v, first.head}):
                    found = tuple(TimedStep(e.id, s) for e, s in trail)
                    break
        if found is None:
            unresolved.add(v)
        else:
            journeys[v] = found
    sol = DelegationSolution(journeys, walks=walks)
    rule = "oracle-walks" if walks else "oracle-paths"
    return finish(g, sol, unresolved, rule, strict)


def oracle_confluent_static(g: TLDGraph, *, max_voters: int = MAX_VOTERS) -> tuple[int, int]:
    """(resolved count, utility) of the best static tree over non-abstainers.

    Each delegating voter picks one static arc to a non-abstainer or stays
    out; the best choice resolves the most voters, then maximises weight.
    """
    if len(g.voters) > max_voters:
        raise ScaleExceeded(f"{len(g.voters)} voters exceed the oracle limit of {max_voters}")
    part = g.partition
    static = static_variant(g)
    delegators = sorted(part.delegating)
    options = [
        [None] + [(h, w) for (t, h), w in static.arcs.items() if t == v and h in part.active]
        for v in delegators
    ]
    best = (0, 0)
    for choice in product(*options):
        parent = {v: c for v, c in zip(delegators, choice) if c is not None}
        ok = True
        for v in parent:
            seen = set()
            u = v
            while u in parent:
                if u in seen:
                    ok = False
                    break
                seen.add(u)
                u = parent[u][0]
            if not ok or u not in part.casting:
                ok = False
                break
        if ok:
            best = max(best, (len(parent), sum(w for _, w in parent.values())))
    return best
