"""Round-by-round deliberation profiles and their compilation into graphs."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import EmptyRanking, ProfileError
from .graph import SINK, TemporalEdge, TLDGraph, build_graph


@dataclass(frozen=True)
class Vote:
    pass


@dataclass(frozen=True)
class Abstain:
    pass


@dataclass(frozen=True)
class Approve:
    """Approval of ranked groups of representatives.

    ``scores`` defaults to Borda scores and ``delta`` to ``t - 1`` (full
    retrospective trust) when left as ``None``.
    """

    groups: tuple[frozenset[str], ...]
    scores: tuple[int, ...] | None = None
    delta: int | None = None

    @classmethod
    def of(cls, groups: Sequence[Sequence[str]], scores=None, delta=None) -> Approve:
        return cls(
            tuple(frozenset(g) for g in groups),
            None if scores is None else tuple(scores),
            delta,
        )

    @property
    def approved(self) -> frozenset[str]:
        return frozenset().union(*self.groups)


Action = Vote | Abstain | Approve


@dataclass(frozen=True)
class DeliberationProfile:
    lifespan: int
    voters: tuple[str, ...]
    rounds: Mapping[int, Mapping[str, Action]] = field(default_factory=dict)

    def action(self, v: str, t: int) -> Action:
        """Action of ``v`` at round ``t``; a missing entry is Abstain, or Vote after a vote."""
        act = self.rounds.get(t, {}).get(v)
        if act is not None:
            return act
        if self.first_vote(v, before=t) is not None:
            return Vote()
        return Abstain()

    def first_vote(self, v: str, before: int | None = None) -> int | None:
        last = self.lifespan if before is None else before - 1
        for t in range(1, last + 1):
            if isinstance(self.rounds.get(t, {}).get(v), Vote):
                return t
        return None


def borda_scores(groups: Sequence) -> list[int]:
    """Score ``k - i + 1`` for the ``i``-th of ``k`` groups (1 = most preferred)."""
    k = groups if isinstance(groups, int) else len(groups)
    if k < 1:
        raise EmptyRanking("a ranking needs at least one preference group")
    return list(range(k, 0, -1))


def validate_profile(p: DeliberationProfile) -> None:
    if not isinstance(p.lifespan, int) or p.lifespan < 1:
        raise ProfileError(f"lifespan must be a positive integer, got {p.lifespan!r}")
    known = set(p.voters)
    if len(known) != len(p.voters):
        raise ProfileError("duplicate voter ids")
    if SINK in known:
        raise ProfileError(f"{SINK!r} is reserved")
    for t, actions in p.rounds.items():
        if not 1 <= t <= p.lifespan:
            raise ProfileError(f"round {t} outside [1, {p.lifespan}]")
        for v, act in actions.items():
            if v not in known:
                raise ProfileError(f"round {t}: unknown voter {v!r}")
            if not isinstance(act, Approve):
                continue
            seen: set[str] = set()
            for group in act.groups:
                if not group:
                    raise ProfileError(f"round {t}: {v!r} declares an empty preference group")
                if group & seen:
                    raise ProfileError(f"round {t}: {v!r} lists a voter in two groups")
                seen |= group
            if v in seen:
                raise ProfileError(f"round {t}: {v!r} approves herself")
            if seen - known:
                raise ProfileError(f"round {t}: {v!r} approves unknown voters {sorted(seen - known)}")
            if act.scores is not None:
                if len(act.scores) != len(act.groups):
                    raise ProfileError(f"round {t}: {v!r} gives {len(act.scores)} scores for {len(act.groups)} groups")
                if any(not isinstance(s, int) or s < 1 for s in act.scores):
                    raise ProfileError(f"round {t}: {v!r} scores must be positive integers")
                if any(a <= b for a, b in zip(act.scores, act.scores[1:])):
                    raise ProfileError(f"round {t}: {v!r} scores must strictly decrease")
            if act.delta is not None and not (isinstance(act.delta, int) and 0 <= act.delta <= t - 1):
                raise ProfileError(f"round {t}: {v!r} horizon {act.delta!r} outside [0, {t - 1}]")
    for v in p.voters:
        voted = False
        for t in range(1, p.lifespan + 1):
            act = p.rounds.get(t, {}).get(v)
            if voted and act is not None and not isinstance(act, Vote):
                raise ProfileError(f"{v!r} changes her mind at round {t} after voting")
            voted = voted or isinstance(act, Vote)


def _round_scores(act: Approve) -> dict[str, int]:
    scores = act.scores if act.scores is not None else borda_scores(act.groups)
    return {u: s for group, s in zip(act.groups, scores) for u in group}


def compile_profile(p: DeliberationProfile) -> TLDGraph:
    """Encode a profile as a validated temporal graph.

    Consecutive rounds in which ``u`` keeps the same score in ``v``'s ranking
    become one edge ``(v, u)``; a voter who ever votes gets a single sink edge
    from her first voting round to the end.
    """
    validate_profile(p)
    L = p.lifespan
    edges: list[TemporalEdge] = []
    delta: dict[str, dict[int, int]] = {}

    # final-round abstainers get zero weights; merging on the effective weight
    # keeps the edge set stable under a decompile/compile round trip
    abstaining = set()
    for v in p.voters:
        last = p.action(v, L)
        if isinstance(last, Abstain) or (isinstance(last, Approve) and not last.approved):
            abstaining.add(v)

    for v in p.voters:
        first = p.first_vote(v)
        if first is not None:
            edges.append(TemporalEdge(f"{v}>{SINK}@{first}", v, SINK, (first, L), 0))
            continue
        runs: dict[str, tuple[int, int]] = {}  # target -> (start, weight) of open run
        for t in range(1, L + 2):
            act = p.action(v, t) if t <= L else Abstain()
            current = _round_scores(act) if isinstance(act, Approve) else {}
            if v in abstaining:
                current = dict.fromkeys(current, 0)
            if current and t <= L:
                d = act.delta if act.delta is not None else t - 1
                delta.setdefault(v, {})[t] = d
            for u, (start, w) in list(runs.items()):
                if current.get(u) != w:
                    edges.append(TemporalEdge(f"{v}>{u}@{start}", v, u, (start, t - 1), w))
                    del runs[u]
            for u, w in current.items():
                if u not in runs:
                    runs[u] = (t, w)
    return build_graph(p.voters, edges, L, delta)


def decompile(g: TLDGraph) -> DeliberationProfile:
    """Rebuild a profile whose compilation reproduces ``g``'s edge multiset.

    Zero-weight approvals (abstainers) are given score 1; compilation zeroes
    them again.
    """
    rounds: dict[int, dict[str, Action]] = {t: {} for t in range(1, g.lifespan + 1)}
    for v in g.voters:
        sink = [e for e in g.out_edges(v) if e.head == SINK]
        if sink:
            for t in range(sink[0].start, g.lifespan + 1):
                rounds[t][v] = Vote()
            continue
        for t in range(1, g.lifespan + 1):
            live = [e for e in g.out_edges(v) if e.available(t)]
            if not live:
                continue
            by_score: dict[int, set[str]] = {}
            for e in live:
                by_score.setdefault(max(e.weight, 1), set()).add(e.head)
            order = sorted(by_score, reverse=True)
            rounds[t][v] = Approve(
                tuple(frozenset(by_score[s]) for s in order),
                tuple(order),
                g.horizon(v, t),
            )
    return DeliberationProfile(g.lifespan, g.voters, {t: a for t, a in rounds.items() if a})


def is_retrospective(g: TLDGraph) -> bool:
    return all(d == t - 1 for row in g.delta.values() for t, d in row.items())
