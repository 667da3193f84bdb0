"""Seeded random elections and single-instant snapshots."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidParams
from .graph import SINK, TemporalEdge, TLDGraph, build_graph
from .profile import Abstain, Action, Approve, DeliberationProfile, Vote

DELTA_MODES = ("retrospective", "constant", "random")


@dataclass(frozen=True)
class GenParams:
    """Knobs for :func:`random_election`.

    ``p_cast`` is the per-round chance that a voter who has not voted yet
    votes from then on; ``p_abstain`` applies when she revises.
    ``density`` is the chance that any other voter is approved.
    ``mind_change`` is the chance that a voter revises her declaration at a
    round after the first; otherwise she repeats it.
    """

    n: int = 6
    L: int = 5
    p_cast: float = 0.15
    p_abstain: float = 0.1
    density: float = 0.35
    max_groups: int = 3
    score_range: tuple[int, int] = (1, 3)
    delta_mode: str = "retrospective"
    delta: int = 1
    mind_change: float = 0.5
    seed: int = 0

    def validate(self) -> None:
        for name in ("p_cast", "p_abstain", "density", "mind_change"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InvalidParams(f"{name} must lie in [0, 1], got {p}")
        if self.n < 1 or self.L < 1:
            raise InvalidParams("need at least one voter and one round")
        if self.max_groups < 1:
            raise InvalidParams("max_groups must be positive")
        lo, hi = self.score_range
        if not 1 <= lo <= hi:
            raise InvalidParams(f"bad score range {self.score_range}")
        if self.delta_mode not in DELTA_MODES:
            raise InvalidParams(f"delta_mode must be one of {DELTA_MODES}")
        if self.delta < 0:
            raise InvalidParams("delta must be non-negative")


def voter_names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, n + 1))


def _horizon(p: GenParams, rng: random.Random, t: int) -> int:
    if p.delta_mode == "retrospective":
        return t - 1
    if p.delta_mode == "constant":
        return min(p.delta, t - 1)
    return rng.randint(0, t - 1)


def _approval(p: GenParams, rng: random.Random, v: str, voters, t: int) -> Action:
    approved = [u for u in voters if u != v and rng.random() < p.density]
    if not approved:
        return Abstain()
    rng.shuffle(approved)
    k = rng.randint(1, min(p.max_groups, len(approved)))
    cuts = sorted(rng.sample(range(1, len(approved)), k - 1))
    groups = [approved[i:j] for i, j in zip([0] + cuts, cuts + [len(approved)])]
    lo, hi = p.score_range
    k = min(k, hi - lo + 1)
    groups = groups[:k]
    scores = sorted(rng.sample(range(lo, hi + 1), k), reverse=True)
    return Approve.of(groups, scores, _horizon(p, rng, t))


def random_election(p: GenParams) -> DeliberationProfile:
    """Random profile; deterministic for a given ``p.seed``.

    A vote is final.  Horizons follow ``p.delta_mode`` and are redrawn with
    each revised approval; a repeated approval keeps its score layout but
    takes the horizon of the current round.
    """
    p.validate()
    rng = random.Random(p.seed)
    voters = voter_names(p.n)
    rounds: dict[int, dict[str, Action]] = {}
    last: dict[str, Action] = {}
    for t in range(1, p.L + 1):
        acts: dict[str, Action] = {}
        for v in voters:
            prev = last.get(v)
            if isinstance(prev, Vote):
                act: Action = prev
            elif rng.random() < p.p_cast:
                act = Vote()
            elif prev is not None and rng.random() >= p.mind_change:
                act = prev
                if isinstance(prev, Approve):
                    act = Approve(prev.groups, prev.scores, _horizon(p, rng, t))
            elif rng.random() < p.p_abstain:
                act = Abstain()
            else:
                act = _approval(p, rng, v, voters, t)
            acts[v] = act
            last[v] = act
        rounds[t] = acts
    return DeliberationProfile(p.L, voters, rounds)


def snapshot(g: TLDGraph, t: int) -> TLDGraph:
    """The election as seen at instant ``t`` alone, with lifespan 1 and zero horizons."""
    if not 1 <= t <= g.lifespan:
        raise InvalidParams(f"instant {t} outside [1, {g.lifespan}]")
    edges = [TemporalEdge(e.id, e.tail, e.head, (1, 1), e.weight) for e in g.edges if e.available(t)]
    delta = {e.tail: {1: 0} for e in edges if e.head != SINK}
    return build_graph(g.voters, edges, 1, delta)
