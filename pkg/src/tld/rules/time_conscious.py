"""Per-voter greedy time-conscious rules (path and restless-walk branches).

Both branches mirror time labels so that a time-conscious journey (times
non-increasing toward the sink) becomes a forward journey in mirrored time,
then try each voter's outgoing edges in decreasing weight until one admits a
journey to the sink.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque

from ..axioms import DelegationSolution, TimedStep
from ..errors import NotRetrospective, PreconditionViolated
from ..graph import DEFAULT_EVENT_CAP, SINK, TemporalEdge, TLDGraph, edge_events, flip_time
from ..profile import is_retrospective
from .base import RuleResult, finish

log = logging.getLogger(__name__)

Event = tuple[TemporalEdge, int]


class _Mirrored:
    """Mirrored graph plus event indexes shared by every per-voter search."""

    def __init__(self, g: TLDGraph, cap: int = DEFAULT_EVENT_CAP):
        self.g = g
        self.top = g.lifespan + 1
        self.flipped = flip_time(g)
        self.events = edge_events(self.flipped, cap)
        self.by_time: dict[int, list[Event]] = defaultdict(list)
        self.by_tail: dict[str, list[Event]] = defaultdict(list)
        for e, t in self.events:
            self.by_time[t].append((e, t))
            self.by_tail[e.tail].append((e, t))

    def window(self, e: TemporalEdge, t: int) -> int:
        """Latest mirrored instant at which the journey may continue after (e, t)."""
        horizon = self.g.horizon(e.tail, self.top - t)
        return t + (horizon or 0)

    def unmirror(self, trail: list[Event]) -> tuple[TimedStep, ...]:
        return tuple(TimedStep(e.id, self.top - t) for e, t in trail)


def _ranked(g: TLDGraph, v: str) -> list[TemporalEdge]:
    return sorted(g.out_edges(v), key=lambda e: (-e.weight, e.id))


def _foremost(m: _Mirrored, v: str, first: TemporalEdge, t_start: int) -> list[Event] | None:
    """Earliest-arrival journey from ``v`` leaving by ``first`` no sooner than ``t_start``.

    Events are scanned in mirrored-time order; within one instant the scan
    repeats until no label changes so that same-instant chains are found.
    Each vertex is labelled once, so the parent pointers form a path.
    """
    arrival: dict[str, Event | None] = {v: None}
    for t in sorted(m.by_time):
        if t < t_start:
            continue
        changed = True
        while changed:
            changed = False
            for e, _ in m.by_time[t]:
                if e.tail not in arrival or e.head in arrival:
                    continue
                came = arrival[e.tail]
                if came is None:
                    if e.id != first.id:
                        continue
                else:
                    in_edge, t_in = came
                    if not t_in <= t <= m.window(in_edge, t_in):
                        continue
                arrival[e.head] = (e, t)
                changed = True
                if e.head == SINK:
                    trail = []
                    u = SINK
                    while arrival[u] is not None:
                        trail.append(arrival[u])
                        u = arrival[u][0].tail
                    return trail[::-1]
    return None


def _restless(m: _Mirrored, v: str, first: TemporalEdge) -> list[Event] | None:
    """Breadth-first search over edge events; each event is expanded at most once.

    From event (e, t) the walk may take any event (e', t') leaving e's head
    with t <= t' <= t + horizon.  Re-entering ``v`` only allows ``first``.
    """
    parent: dict[Event, Event | None] = {}
    queue: deque[Event] = deque()
    for ev in m.by_tail[v]:
        if ev[0].id == first.id:
            parent[ev] = None
            queue.append(ev)
    while queue:
        ev = queue.popleft()
        e, t = ev
        if e.head == SINK:
            trail = []
            cur: Event | None = ev
            while cur is not None:
                trail.append(cur)
                cur = parent[cur]
            return trail[::-1]
        hi = m.window(e, t)
        for nxt in m.by_tail.get(e.head, ()):
            e2, t2 = nxt
            if nxt in parent or not t <= t2 <= hi:
                continue
            if e2.tail == v and e2.id != first.id:
                continue
            parent[nxt] = ev
            queue.append(nxt)
    return None


def _greedy(m: _Mirrored, g: TLDGraph, walks: bool) -> tuple[dict, set]:
    part = g.partition
    journeys: dict[str, tuple[TimedStep, ...]] = {}
    unresolved: set[str] = set()
    for v in sorted(part.delegating):
        for cand in _ranked(g, v):
            mirrored = m.flipped.edge(cand.id)
            if walks:
                trail = _restless(m, v, mirrored)
            else:
                trail = _foremost(m, v, mirrored, mirrored.start)
            if trail is not None:
                journeys[v] = m.unmirror(trail)
                break
        else:
            unresolved.add(v)
    return journeys, unresolved


def solve_tc_retrospective(
    g: TLDGraph,
    *,
    require_retrospective: bool = True,
    strict: bool = False,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> RuleResult:
    """Utility-maximising time-conscious paths for retrospective-trust profiles.

    With ``require_retrospective=False`` the same search runs on arbitrary
    horizons, enforcing each pair's horizon on the earliest-arrival labels:
    every journey it returns is time-conscious, but a voter may be reported
    unresolved although some path exists.
    """
    if not is_retrospective(g):
        if require_retrospective:
            raise NotRetrospective("the path branch needs retrospective trust (horizon t-1 everywhere)")
        log.warning("profile is not of retrospective trust; path search may miss journeys")
    m = _Mirrored(g, event_cap)
    journeys, unresolved = _greedy(m, g, walks=False)
    return finish(g, DelegationSolution(journeys), unresolved, "tc-retro", strict)


def common_horizon_ok(g: TLDGraph, max_wait: int) -> bool:
    return all(d == min(max_wait, t - 1) for row in g.delta.values() for t, d in row.items())


def solve_tc_walks(
    g: TLDGraph,
    max_wait: int,
    *,
    strict: bool = False,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> RuleResult:
    """Utility-maximising time-conscious walks under a common horizon ``max_wait``."""
    if max_wait < 0:
        raise PreconditionViolated("the common horizon must be non-negative")
    if not common_horizon_ok(g, max_wait):
        raise PreconditionViolated(f"horizons differ from min({max_wait}, t-1)")
    m = _Mirrored(g, event_cap)
    journeys, unresolved = _greedy(m, g, walks=True)
    sol = DelegationSolution(journeys, walks=True)
    return finish(g, sol, unresolved, "tc-walks", strict)
