"""Reduction of time-conscious confluent resolution to directed Steiner tree.

Node kinds in the Steiner graph:

* ``ROOT`` stands for the sink,
* ``("special", v)`` for every casting or delegating voter ``v``
  (terminals are the delegating ones),
* ``("occ", edge_id, t)`` for every instant ``t`` of an edge leaving a
  non-abstainer toward a non-abstainer or the sink.

An arc ``(e2, t2) -> (e1, t1)`` exists when ``e1 = (u, v)`` can be followed
by ``e2 = (v, z)``; it costs ``max(u) - w(e1) + min(u)`` so that a tree of
cost ``k'`` corresponds to a delegation tree of utility
``sum(max(u) + min(u)) - k'``.
"""

from __future__ import annotations

import heapq
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field

from ..errors import CapExceeded, Infeasible, NotRetrospective
from ..graph import SINK, TLDGraph
from ..profile import is_retrospective

ROOT = ("root",)
DEFAULT_TERMINAL_CAP = 16

Node = tuple


def special(v: str) -> Node:
    return ("special", v)


def occurrence(edge_id: str, t: int) -> Node:
    return ("occ", edge_id, t)


def node_label(node: Node) -> str:
    if node == ROOT:
        return "r'"
    if isinstance(node, tuple) and node[:1] == ("special",):
        return f"{node[1]}'"
    if isinstance(node, tuple) and node[:1] == ("occ",):
        return f"({node[1]},{node[2]})"
    return str(node)


@dataclass(frozen=True)
class SteinerInstance:
    root: Node
    nodes: tuple[Node, ...]
    arcs: tuple[tuple[Node, Node, int], ...]
    terminals: frozenset[Node]
    extremes: Mapping[str, tuple[int, int]] = field(default_factory=dict)

    def offset(self, voters: Iterable[str] | None = None) -> int:
        """Utility transform constant: sum of max + min outgoing weight."""
        voters = self.extremes if voters is None else voters
        return sum(sum(self.extremes[v]) for v in voters)

    def reachable(self) -> set[Node]:
        out: dict[Node, list[Node]] = {}
        for a, b, _ in self.arcs:
            out.setdefault(a, []).append(b)
        seen = {self.root}
        stack = [self.root]
        while stack:
            for b in out.get(stack.pop(), ()):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen


def to_steiner(g: TLDGraph, *, general_horizons: bool = False) -> SteinerInstance:
    """Build the Steiner instance for a retrospective-trust graph.

    With ``general_horizons`` the chain arcs additionally honour each voter's
    horizon (``t2 >= t1 - horizon``); for retrospective graphs the two
    constructions coincide.
    """
    if not general_horizons and not is_retrospective(g):
        raise NotRetrospective("the Steiner reduction needs retrospective trust")
    part = g.partition
    active = part.active

    usable = [
        e for e in g.edges
        if e.tail in active and (e.head == SINK or e.head in active)
    ]
    extremes = {}
    for u in sorted(part.delegating):
        weights = [e.weight for e in g.out_edges(u)]
        extremes[u] = (max(weights), min(weights))

    nodes: list[Node] = [ROOT]
    nodes += [special(v) for v in sorted(active)]
    arcs: list[tuple[Node, Node, int]] = []
    for e in usable:
        for t in e.instants():
            o = occurrence(e.id, t)
            nodes.append(o)
            arcs.append((o, special(e.tail), 0))
            if e.head == SINK:
                arcs.append((ROOT, o, 0))

    for e1 in usable:
        if e1.head == SINK:
            continue
        hi, lo = extremes[e1.tail]
        cost = hi - e1.weight + lo
        for e2 in g.out_edges(e1.head):
            if e2.head != SINK and e2.head not in active:
                continue
            for t1 in e1.instants():
                floor = t1 - (g.horizon(e1.tail, t1) or 0)
                for t2 in e2.instants():
                    if t1 >= t2 >= floor:
                        arcs.append((occurrence(e2.id, t2), occurrence(e1.id, t1), cost))

    terminals = frozenset(special(v) for v in part.delegating)
    return SteinerInstance(ROOT, tuple(nodes), tuple(arcs), terminals, extremes)


def steiner_dp(
    inst: SteinerInstance,
    terminals: Collection[Node] | None = None,
    cap: int = DEFAULT_TERMINAL_CAP,
) -> tuple[int, set[tuple[Node, Node]]]:
    """Minimum directed Steiner arborescence from the root over ``terminals``.

    Subset dynamic programme: ``best[S][v]`` is the cheapest tree hanging
    from ``v`` that reaches every terminal of ``S``; it is seeded by merging
    two trees at ``v`` over every split of ``S`` and then extended along
    arcs with Dijkstra.  Costs are compared as (weight, arc count) so that
    zero-weight detours never tie with a leaner tree.
    """
    terms = sorted(inst.terminals if terminals is None else terminals)
    if len(terms) > cap:
        raise CapExceeded(f"{len(terms)} terminals exceed the cap of {cap}")
    if not terms:
        return 0, set()

    index = {n: i for i, n in enumerate(inst.nodes)}
    n = len(inst.nodes)
    incoming: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, w in inst.arcs:
        incoming[index[b]].append((index[a], w))

    full = (1 << len(terms)) - 1
    best: list[list | None] = [None] * (full + 1)
    how: list[list | None] = [None] * (full + 1)
    for mask in range(1, full + 1):
        seed: list = [None] * n
        back: list = [None] * n
        if mask & (mask - 1) == 0:
            k = mask.bit_length() - 1
            t = index[terms[k]]
            seed[t] = (0, 0)
            back[t] = ("leaf",)
        else:
            low = mask & -mask
            sub = (mask - 1) & mask
            while sub:
                if sub & low:
                    left, right = best[sub], best[mask ^ sub]
                    for v in range(n):
                        a, b = left[v], right[v]
                        if a is None or b is None:
                            continue
                        c = (a[0] + b[0], a[1] + b[1])
                        if seed[v] is None or c < seed[v]:
                            seed[v] = c
                            back[v] = ("split", sub)
                sub = (sub - 1) & mask
        best[mask], how[mask] = _extend(seed, back, incoming)

    r = index[inst.root]
    if best[full][r] is None:
        missing = [node_label(t) for k, t in enumerate(terms) if best[1 << k][r] is None]
        raise Infeasible(f"terminals unreachable from the root: {', '.join(missing)}")

    tree: set[tuple[Node, Node]] = set()
    stack = [(full, r)]
    while stack:
        mask, v = stack.pop()
        step = how[mask][v]
        if step[0] == "arc":
            tree.add((inst.nodes[v], inst.nodes[step[1]]))
            stack.append((mask, step[1]))
        elif step[0] == "split":
            stack.append((step[1], v))
            stack.append((mask ^ step[1], v))
    return best[full][r][0], tree


def _extend(seed: list, back: list, incoming: list[list[tuple[int, int]]]):
    dist = list(seed)
    how = list(back)
    heap = [(c, v) for v, c in enumerate(seed) if c is not None]
    heapq.heapify(heap)
    done = [False] * len(seed)
    while heap:
        c, w = heapq.heappop(heap)
        if done[w] or c != dist[w]:
            continue
        done[w] = True
        for v, arc in incoming[w]:
            nc = (c[0] + arc, c[1] + 1)
            if dist[v] is None or nc < dist[v]:
                dist[v] = nc
                how[v] = ("arc", w)
                heapq.heappush(heap, (nc, v))
    return dist, how
