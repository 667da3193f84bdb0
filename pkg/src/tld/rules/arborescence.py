"""Minimum-cost spanning arborescence (Chu-Liu/Edmonds with cycle contraction)."""

from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from itertools import count


@dataclass(frozen=True)
class Arc:
    tail: Hashable
    head: Hashable
    cost: int
    key: Hashable


def _find_cycle(parent: dict) -> list | None:
    state: dict = {}
    for start in parent:
        path = []
        v = start
        while v in parent and v not in state:
            state[v] = start
            path.append(v)
            v = parent[v]
        if v in parent and state.get(v) == start:
            return path[path.index(v):]
    return None


def min_arborescence(nodes: Iterable[Hashable], arcs: Iterable[Arc], root: Hashable) -> set:
    """Return the keys of a minimum-cost arborescence rooted at ``root``.

    Every node must be reachable from ``root``; otherwise ``ValueError`` is
    raised.  Ties between equal-cost arcs are broken by key order, so the
    result is deterministic for sortable keys.
    """
    fresh = count()
    return _solve(set(nodes), list(arcs), root, fresh)


def _solve(nodes: set, arcs: list[Arc], root, fresh) -> set:
    best: dict = {}
    for a in sorted(arcs, key=lambda a: (a.cost, repr(a.key))):
        if a.head != root and a.tail != a.head and a.head not in best:
            best[a.head] = a
    missing = nodes - {root} - set(best)
    if missing:
        raise ValueError(f"nodes unreachable from the root: {sorted(map(repr, missing))}")

    cycle = _find_cycle({v: a.tail for v, a in best.items()})
    if cycle is None:
        return {a.key for a in best.values()}

    members = set(cycle)
    merged = ("contracted", next(fresh))
    entering: dict = {}  # contracted arc key -> original arc entering the cycle
    contracted: list[Arc] = []
    for a in arcs:
        inside_t, inside_h = a.tail in members, a.head in members
        if inside_t and inside_h:
            continue
        if inside_h:
            contracted.append(Arc(a.tail, merged, a.cost - best[a.head].cost, a.key))
            entering[a.key] = a
        elif inside_t:
            contracted.append(Arc(merged, a.head, a.cost, a.key))
        else:
            contracted.append(a)

    chosen = _solve((nodes - members) | {merged}, contracted, root, fresh)
    broken = next(entering[k].head for k in chosen if k in entering)
    return chosen | {best[v].key for v in cycle if v != broken}
