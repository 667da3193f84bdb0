"""Temporal multigraph model of a t-LD election.

A graph holds the voters, a distinguished ``SINK`` vertex (an edge into it
means "cast a ballot"), interval-labelled weighted edges and the per-voter
trust horizons.  Graphs built through :func:`build_graph` are validated and
cleaned; the structural transformations (:func:`flip_time`, :func:`reverse`)
return graphs that deliberately skip validation because their output violates
the election invariants (e.g. edges leaving ``SINK``).
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from functools import cached_property

from .errors import DeltaOutOfRange, EventBlowup, MalformedEdge, OverlappingParallelEdges

SINK = "SINK"
DEFAULT_EVENT_CAP = 10**7


@dataclass(frozen=True)
class TemporalEdge:
    id: str
    tail: str
    head: str
    interval: tuple[int, int]
    weight: int = 0

    @property
    def start(self) -> int:
        return self.interval[0]

    @property
    def end(self) -> int:
        return self.interval[1]

    def available(self, t: int) -> bool:
        return self.interval[0] <= t <= self.interval[1]

    def instants(self) -> range:
        return range(self.interval[0], self.interval[1] + 1)

    def __len__(self) -> int:
        return self.interval[1] - self.interval[0] + 1


@dataclass(frozen=True)
class VoterPartition:
    casting: frozenset[str]
    abstaining: frozenset[str]
    delegating: frozenset[str]

    def role(self, v: str) -> str:
        if v in self.casting:
            return "casting"
        if v in self.abstaining:
            return "abstaining"
        if v in self.delegating:
            return "delegating"
        raise KeyError(v)

    @property
    def active(self) -> frozenset[str]:
        """Voters outside the abstaining set (the vertices a confluent tree spans)."""
        return self.casting | self.delegating


@dataclass(frozen=True)
class TLDGraph:
    voters: tuple[str, ...]
    edges: tuple[TemporalEdge, ...]
    lifespan: int
    delta: Mapping[str, Mapping[int, int]] = field(default_factory=dict)

    @cached_property
    def _by_id(self) -> dict[str, TemporalEdge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self) -> dict[str, tuple[TemporalEdge, ...]]:
        out: dict[str, list[TemporalEdge]] = defaultdict(list)
        for e in self.edges:
            out[e.tail].append(e)
        return {v: tuple(sorted(es, key=lambda e: (e.start, e.id))) for v, es in out.items()}

    @cached_property
    def partition(self) -> VoterPartition:
        return classify_voters(self)

    def edge(self, edge_id: str) -> TemporalEdge:
        return self._by_id[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._by_id

    def out_edges(self, v: str) -> tuple[TemporalEdge, ...]:
        return self._out.get(v, ())

    def horizon(self, v: str, t: int) -> int | None:
        """Trust horizon of ``v`` at instant ``t``; ``None`` for an empty entry."""
        return self.delta.get(v, {}).get(t)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.voters + (SINK,)

    def event_count(self) -> int:
        return sum(len(e) for e in self.edges)


@dataclass(frozen=True)
class StaticGraph:
    """Static variant: one arc per ordered pair, carrying the best weight.

    ``source`` maps each arc to the temporal edge id that realises its weight
    (``None`` for graphs built directly rather than derived).
    """

    vertices: frozenset[str]
    arcs: Mapping[tuple[str, str], int]
    source: Mapping[tuple[str, str], str | None] = field(default_factory=dict)

    def reverse(self) -> StaticGraph:
        return StaticGraph(
            self.vertices,
            {(h, t): w for (t, h), w in self.arcs.items()},
            {(h, t): s for (t, h), s in self.source.items()},
        )


def build_graph(
    vertices: Iterable[str],
    edges: Iterable[TemporalEdge],
    lifespan: int,
    delta: Mapping[str, Mapping[int, int]] | None = None,
) -> TLDGraph:
    """Validate raw components and return a cleaned :class:`TLDGraph`.

    Casting voters lose their approval edges, edges out of casting or
    abstaining voters are zero-weighted, and trust-horizon entries of casting
    voters are discarded.  Every voter with a non-sink edge available at ``t``
    must declare a horizon at ``t``.
    """
    if not isinstance(lifespan, int) or lifespan < 1:
        raise MalformedEdge(f"lifespan must be a positive integer, got {lifespan!r}")
    voters = tuple(dict.fromkeys(vertices))
    if SINK in voters:
        raise MalformedEdge(f"{SINK!r} is reserved for the sink vertex")
    known = set(voters)
    edges = tuple(edges)

    seen_ids: set[str] = set()
    for e in edges:
        if e.id in seen_ids:
            raise MalformedEdge(f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        if e.tail not in known:
            raise MalformedEdge(f"edge {e.id!r}: unknown tail {e.tail!r}")
        if e.head != SINK and e.head not in known:
            raise MalformedEdge(f"edge {e.id!r}: unknown head {e.head!r}")
        if e.tail == e.head:
            raise MalformedEdge(f"edge {e.id!r}: self-loop at {e.tail!r}")
        s, t = e.interval
        if not (1 <= s <= t <= lifespan):
            raise MalformedEdge(f"edge {e.id!r}: interval {e.interval} outside [1, {lifespan}]")
        if e.head == SINK and t != lifespan:
            raise MalformedEdge(f"edge {e.id!r}: casting edges must last until {lifespan}")
        if not isinstance(e.weight, int) or e.weight < 0:
            raise MalformedEdge(f"edge {e.id!r}: weight must be a non-negative integer")

    parallel: dict[tuple[str, str], list[TemporalEdge]] = defaultdict(list)
    for e in edges:
        parallel[(e.tail, e.head)].append(e)
    for pair, group in parallel.items():
        group.sort(key=lambda e: e.start)
        for a, b in zip(group, group[1:]):
            if b.start <= a.end:
                raise OverlappingParallelEdges(
                    f"edges {a.id!r} and {b.id!r} on {pair} have overlapping intervals"
                )

    casting = {e.tail for e in edges if e.head == SINK}
    edges = tuple(e for e in edges if e.tail not in casting or e.head == SINK)
    live_at_end = {e.tail for e in edges if e.end == lifespan}
    abstaining = known - casting - live_at_end
    edges = tuple(
        replace(e, weight=0) if (e.tail in casting or e.tail in abstaining) and e.weight else e
        for e in edges
    )

    horizons: dict[str, dict[int, int]] = {}
    for v, entries in (delta or {}).items():
        if v not in known:
            raise DeltaOutOfRange(f"trust horizon given for unknown voter {v!r}")
        if v in casting:
            continue
        row = {}
        for t, d in entries.items():
            t = int(t)
            if not 1 <= t <= lifespan:
                raise DeltaOutOfRange(f"horizon of {v!r} at instant {t} outside [1, {lifespan}]")
            if not isinstance(d, int) or not 0 <= d <= t - 1:
                raise DeltaOutOfRange(f"horizon of {v!r} at {t} is {d!r}, must lie in [0, {t - 1}]")
            row[t] = d
        if row:
            horizons[v] = row
    for e in edges:
        if e.head == SINK:
            continue
        for t in e.instants():
            if t not in horizons.get(e.tail, {}):
                raise DeltaOutOfRange(f"missing trust horizon for {e.tail!r} at instant {t}")

    return TLDGraph(voters, edges, lifespan, horizons)


def classify_voters(g: TLDGraph) -> VoterPartition:
    casting = frozenset(e.tail for e in g.edges if e.head == SINK)
    live = {e.tail for e in g.edges if e.available(g.lifespan)}
    abstaining = frozenset(v for v in g.voters if v not in casting and v not in live)
    delegating = frozenset(g.voters) - casting - abstaining
    return VoterPartition(casting, abstaining, delegating)


def static_variant(g: TLDGraph) -> StaticGraph:
    arcs: dict[tuple[str, str], int] = {}
    source: dict[tuple[str, str], str | None] = {}
    for e in sorted(g.edges, key=lambda e: e.id):
        key = (e.tail, e.head)
        if key not in arcs or e.weight > arcs[key]:
            arcs[key] = e.weight
            source[key] = e.id
    return StaticGraph(frozenset(g.vertices), arcs, source)


def flip_time(g: TLDGraph) -> TLDGraph:
    """Mirror every interval inside ``[1, L]``; horizons are left untouched."""
    top = g.lifespan + 1
    flipped = tuple(replace(e, interval=(top - e.end, top - e.start)) for e in g.edges)
    return TLDGraph(g.voters, flipped, g.lifespan, g.delta)


def reverse(g: TLDGraph) -> TLDGraph:
    return TLDGraph(
        g.voters,
        tuple(replace(e, tail=e.head, head=e.tail) for e in g.edges),
        g.lifespan,
        g.delta,
    )


def iter_events(g: TLDGraph) -> Iterator[tuple[TemporalEdge, int]]:
    for e in g.edges:
        for t in e.instants():
            yield e, t


def edge_events(g: TLDGraph, cap: int = DEFAULT_EVENT_CAP) -> list[tuple[TemporalEdge, int]]:
    """Expand intervals into (edge, instant) pairs ordered by instant, then edge id."""
    total = g.event_count()
    if total > cap:
        raise EventBlowup(f"{total} edge events exceed the cap of {cap}")
    return sorted(iter_events(g), key=lambda ev: (ev[1], ev[0].id))
