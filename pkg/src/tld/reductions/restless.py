"""Restless temporal path instances and their encoding as elections."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParams
from ..graph import SINK, TemporalEdge, TLDGraph, build_graph
from .tmst import _dummy_name


@dataclass(frozen=True)
class RestlessInstance:
    vertices: tuple[str, ...]
    edges: tuple[TemporalEdge, ...]
    lifespan: int
    source: str
    target: str
    max_wait: int


def _check(inst: RestlessInstance) -> None:
    known = set(inst.vertices)
    if inst.source not in known or inst.target not in known or inst.source == inst.target:
        raise InvalidParams("source and target must be two distinct vertices")
    if inst.max_wait < 0:
        raise InvalidParams("the waiting bound must be non-negative")
    for e in inst.edges:
        if e.tail not in known or e.head not in known or e.tail == e.head:
            raise InvalidParams(f"edge {e.id!r} has bad endpoints")
        if not 1 <= e.start <= e.end <= inst.lifespan:
            raise InvalidParams(f"edge {e.id!r} interval outside [1, {inst.lifespan}]")


def from_restless_path(inst: RestlessInstance) -> tuple[TLDGraph, int]:
    """Encode a restless-path question as a time-conscious election.

    The graph is reversed with unit weights and one extra instant, the source
    casts throughout, and the target gains a last-instant edge to a dummy
    abstainer so that it is the one delegating voter that matters.  A
    restless path exists iff the target has a time-conscious journey, i.e.
    iff utility 1 is reachable.
    """
    _check(inst)
    L = inst.lifespan + 1
    a = _dummy_name(inst.vertices)
    edges = [TemporalEdge(e.id, e.head, e.tail, e.interval, 1) for e in inst.edges]
    edges.append(TemporalEdge(f"{inst.source}>{SINK}", inst.source, SINK, (1, L), 0))
    edges.append(TemporalEdge(f"{inst.target}>{a}", inst.target, a, (L, L), 1))
    delta: dict[str, dict[int, int]] = {}
    for e in edges:
        if e.head == SINK or e.tail == inst.source:
            continue
        for t in e.instants():
            delta.setdefault(e.tail, {})[t] = min(t - 1, inst.max_wait)
    g = build_graph(tuple(inst.vertices) + (a,), edges, L, delta)
    return g, 1


def brute_force_restless(inst: RestlessInstance) -> bool:
    """Whether a restless path (no repeated vertex) leads from source to target."""

    def go(v: str, t: int | None, visited: set[str]) -> bool:
        if v == inst.target:
            return True
        for e in inst.edges:
            if e.tail != v or e.head in visited:
                continue
            for t2 in e.instants():
                if t is not None and not t <= t2 <= t + inst.max_wait:
                    continue
                visited.add(e.head)
                if go(e.head, t2, visited):
                    return True
                visited.discard(e.head)
        return False

    return go(inst.source, None, {inst.source})
