"""Journey classes, solution validity, confluence and the utility objective."""

from __future__ import annotations

from collections import Counter
from collections.abc import Collection, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import BrokenChain, NonConfluentInput
from .graph import SINK, TemporalEdge, TLDGraph


@dataclass(frozen=True, order=True)
class TimedStep:
    edge: str
    time: int


Journey = tuple[TimedStep, ...]


@dataclass(frozen=True)
class DelegationSolution:
    """One journey per resolved delegating voter.

    ``walks`` allows vertex revisits; ``time_conscious`` states whether the
    producing rule claims the trust-horizon axiom (the static confluent rule
    does not).
    """

    journeys: Mapping[str, Journey] = field(default_factory=dict)
    walks: bool = False
    time_conscious: bool = True

    def first_edge(self, v: str) -> str:
        return self.journeys[v][0].edge


def _chain(g: TLDGraph, journey: Sequence[TimedStep]) -> list[TemporalEdge]:
    edges = []
    for step in journey:
        if not g.has_edge(step.edge):
            raise BrokenChain(f"unknown edge {step.edge!r}")
        edges.append(g.edge(step.edge))
    for a, b in zip(edges, edges[1:]):
        if a.head != b.tail:
            raise BrokenChain(f"edge {a.id!r} ends at {a.head!r} but {b.id!r} starts at {b.tail!r}")
    return edges


def journey_vertices(g: TLDGraph, journey: Sequence[TimedStep]) -> list[str]:
    edges = _chain(g, journey)
    if not edges:
        return []
    return [edges[0].tail] + [e.head for e in edges]


def _pairs_ok(g: TLDGraph, journey, edges, ok) -> bool:
    if any(not e.available(s.time) for e, s in zip(edges, journey)):
        return False
    return all(ok(edges[i], journey[i].time, journey[i + 1].time) for i in range(len(journey) - 1))


def is_time_conscious_path(g: TLDGraph, journey: Sequence[TimedStep]) -> bool:
    """Times never increase and each drop stays within the earlier tail's horizon."""
    edges = _chain(g, journey)

    def ok(e: TemporalEdge, t: int, nxt: int) -> bool:
        horizon = g.horizon(e.tail, t) or 0
        return t >= nxt >= t - horizon

    return _pairs_ok(g, journey, edges, ok)


def is_time_respecting_path(g: TLDGraph, journey: Sequence[TimedStep]) -> bool:
    edges = _chain(g, journey)
    return _pairs_ok(g, journey, edges, lambda e, t, nxt: t <= nxt)


def is_restless_walk(g: TLDGraph, journey: Sequence[TimedStep], max_wait: int) -> bool:
    edges = _chain(g, journey)
    return _pairs_ok(g, journey, edges, lambda e, t, nxt: t <= nxt <= t + max_wait)


@dataclass(frozen=True)
class Violation:
    clause: str
    voter: str
    message: str

    def __str__(self) -> str:
        return f"({self.clause}) {self.voter}: {self.message}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "invalid:\n" + "\n".join(f"  {v}" for v in self.violations)


def check_solution(
    g: TLDGraph, sol: DelegationSolution, unresolved: Collection[str] = ()
) -> ValidityReport:
    """List every violated validity clause.

    Clauses: (a) every delegating voter outside ``unresolved`` has a journey;
    (b) journeys start only at delegating voters; (c) journeys end at the sink
    through a casting voter; (d) no journey ends at an abstainer; (e) journeys
    are time-conscious when the solution claims it; (f) no vertex repeats
    unless walks are allowed.
    """
    part = g.partition
    found: list[Violation] = []
    for v in sorted(part.delegating - set(sol.journeys) - set(unresolved)):
        found.append(Violation("a", v, "delegating voter has no journey"))
    for v in sorted(set(sol.journeys) & set(unresolved)):
        found.append(Violation("a", v, "voter is both resolved and unresolved"))

    for v, journey in sorted(sol.journeys.items()):
        if v not in part.delegating:
            role = part.role(v) if v in g.voters else "unknown"
            found.append(Violation("b", v, f"journey starts at a {role} voter"))
        if not journey:
            found.append(Violation("c", v, "empty journey"))
            continue
        try:
            vertices = journey_vertices(g, journey)
        except BrokenChain as exc:
            found.append(Violation("c", v, f"broken chain: {exc}"))
            continue
        if vertices[0] != v:
            found.append(Violation("b", v, f"journey starts at {vertices[0]!r}"))
        if vertices[-1] != SINK:
            found.append(Violation("c", v, f"journey stops at {vertices[-1]!r} instead of the sink"))
            if vertices[-1] in part.abstaining:
                found.append(Violation("d", v, f"journey ends at abstainer {vertices[-1]!r}"))
        elif vertices[-2] not in part.casting:
            found.append(Violation("c", v, f"sink reached through non-casting {vertices[-2]!r}"))
        if sol.time_conscious and not is_time_conscious_path(g, journey):
            found.append(Violation("e", v, "journey is not time-conscious"))
        if not sol.walks:
            repeated = [u for u, n in Counter(vertices).items() if n > 1]
            if repeated:
                found.append(Violation("f", v, f"vertices repeat: {sorted(repeated)}"))
    return ValidityReport(tuple(found))


def is_confluent(g: TLDGraph, sol: DelegationSolution, unresolved: Collection[str] = ()) -> bool:
    """Union of journeys is a sink-rooted tree with one timed step per voter.

    The tree must span every non-abstaining voter except those declared
    ``unresolved``; unused casting voters are spanned by their own sink edge.
    Time-consciousness of the root-ward paths is required only when the
    solution claims it.
    """
    part = g.partition
    unresolved = set(unresolved)
    succ: dict[str, TimedStep] = {}
    for v, journey in sol.journeys.items():
        try:
            vertices = journey_vertices(g, journey)
        except BrokenChain:
            return False
        if not vertices or vertices[0] != v or vertices[-1] != SINK:
            return False
        for u, step in zip(vertices, journey):
            if u in part.abstaining or u in unresolved:
                return False
            if succ.setdefault(u, step) != step:
                return False
    expected = (part.delegating - unresolved) | set(succ)
    if set(sol.journeys) != part.delegating - unresolved:
        return False
    if not set(succ) <= part.active:
        return False
    # one successor per vertex and every vertex reaching the sink makes the
    # union a tree; walks would break the path property
    for v in expected:
        seen = set()
        u = v
        while u != SINK:
            if u in seen:
                return False
            seen.add(u)
            if u not in succ:
                return False
            u = g.edge(succ[u].edge).head
    if sol.time_conscious:
        return all(is_time_conscious_path(g, j) for j in sol.journeys.values())
    return True


def utility(g: TLDGraph, sol: DelegationSolution) -> int:
    return sum(g.edge(j[0].edge).weight for j in sol.journeys.values() if j)


def representation_weights(
    g: TLDGraph, sol: DelegationSolution, unresolved: Collection[str] = ()
) -> dict[str, int]:
    """Ballot weight of each casting voter: herself plus everyone routed to her."""
    if not is_confluent(g, sol, unresolved):
        raise NonConfluentInput("representation weights are defined on confluent solutions only")
    weights = dict.fromkeys(sorted(g.partition.casting), 1)
    for journey in sol.journeys.values():
        weights[g.edge(journey[-1].edge).tail] += 1
    return weights
