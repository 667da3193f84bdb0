"""Minimum temporal spanning tree instances and their encoding as elections."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from ..errors import MalformedTmstInstance
from ..graph import SINK, TemporalEdge, TLDGraph, build_graph


@dataclass(frozen=True)
class TmstInstance:
    """Rooted temporal graph with weights in {1, 2}.

    A spanning tree must give every vertex a time-respecting path from
    ``root`` (times non-decreasing away from the root).
    """

    vertices: tuple[str, ...]
    edges: tuple[TemporalEdge, ...]
    lifespan: int
    root: str


def validate_tmst(inst: TmstInstance, *, paired: bool = True) -> None:
    """Check the normal form the encoding relies on.

    Always required: weights in {1, 2}, intervals inside the lifespan, no
    arc into the root, and an arc into every other vertex at the last
    instant.  With ``paired`` every arc must also come as the two copies
    ``[1, L-1]`` of weight 2 and ``[L, L]`` of weight 1.
    """
    L = inst.lifespan
    known = set(inst.vertices)
    if inst.root not in known:
        raise MalformedTmstInstance(f"root {inst.root!r} is not a vertex")
    if SINK in known:
        raise MalformedTmstInstance(f"{SINK!r} is reserved")
    if paired and L < 2:
        raise MalformedTmstInstance("paired copies need a lifespan of at least 2")
    ids = set()
    for e in inst.edges:
        if e.id in ids:
            raise MalformedTmstInstance(f"duplicate edge id {e.id!r}")
        ids.add(e.id)
        if e.tail not in known or e.head not in known or e.tail == e.head:
            raise MalformedTmstInstance(f"edge {e.id!r} has bad endpoints")
        if e.weight not in (1, 2):
            raise MalformedTmstInstance(f"edge {e.id!r} has weight {e.weight}, expected 1 or 2")
        if not 1 <= e.start <= e.end <= L:
            raise MalformedTmstInstance(f"edge {e.id!r} interval outside [1, {L}]")
        if e.head == inst.root:
            raise MalformedTmstInstance(f"edge {e.id!r} enters the root")
    for v in inst.vertices:
        if v != inst.root and not any(e.head == v and e.available(L) for e in inst.edges):
            raise MalformedTmstInstance(f"vertex {v!r} has no incoming arc at instant {L}")
    if paired:
        copies = defaultdict(list)
        for e in inst.edges:
            copies[(e.tail, e.head)].append((e.interval, e.weight))
        for pair, got in copies.items():
            if sorted(got) != [((1, L - 1), 2), ((L, L), 1)]:
                raise MalformedTmstInstance(f"arc {pair} is not a weight-2/weight-1 pair")


def _dummy_name(vertices) -> str:
    name = "a"
    while name in vertices:
        name += "_"
    return name


def from_tmst(inst: TmstInstance, k_prime: int, *, paired: bool = True) -> tuple[TLDGraph, int]:
    """Encode a t-MST instance as a time-conscious confluent election.

    Arcs are reversed with weight ``3 - w``, the root alone casts, and a
    dummy abstainer receives a weight-1 edge wherever a voter would
    otherwise only have weight-2 approvals at some instant.  A tree of
    weight at most ``k_prime`` exists iff the election admits a solution of
    utility at least the returned ``k``.
    """
    validate_tmst(inst, paired=paired)
    L = inst.lifespan
    a = _dummy_name(inst.vertices)
    edges = [
        TemporalEdge(e.id, e.head, e.tail, e.interval, 3 - e.weight) for e in inst.edges
    ]
    edges.append(TemporalEdge(f"{inst.root}>{SINK}", inst.root, SINK, (1, L), 0))
    for v in inst.vertices:
        for t in range(1, L + 1):
            live = {e.weight for e in edges if e.tail == v and e.head != SINK and e.available(t)}
            if 2 in live and 1 not in live:
                edges.append(TemporalEdge(f"{v}>{a}@{t}", v, a, (t, t), 1))
    delta = {
        v: {t: t - 1 for t in range(1, L + 1)} for v in inst.vertices if v != inst.root
    }
    n = len(inst.vertices)
    g = build_graph(tuple(inst.vertices) + (a,), edges, L, delta)
    return g, 3 * (n - 1) - k_prime


def brute_force_tmst(inst: TmstInstance) -> int | None:
    """Minimum weight of a time-respecting spanning tree, or None if none exists."""
    others = [v for v in inst.vertices if v != inst.root]
    options = [
        [(e, t) for e in inst.edges if e.head == v for t in e.instants()] for v in others
    ]
    best = None
    for choice in product(*options):
        into = dict(zip(others, choice))
        if _is_temporal_tree(inst.root, into):
            cost = sum(e.weight for e, _ in choice)
            best = cost if best is None else min(best, cost)
    return best


def _is_temporal_tree(root: str, into: dict) -> bool:
    for v in into:
        seen = {v}
        u = v
        while u != root:
            e, t = into[u]
            if e.tail != root:
                _, parent_t = into[e.tail]
                if parent_t > t:
                    return False
            u = e.tail
            if u in seen:
                return False
            seen.add(u)
    return True
