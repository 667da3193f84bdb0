from __future__ import annotations

from collections.abc import Collection
from dataclasses import dataclass, field

from ..axioms import DelegationSolution, utility
from ..errors import Unresolvable
from ..graph import TLDGraph


@dataclass(frozen=True)
class RuleResult:
    solution: DelegationSolution
    objective: int
    unresolved: frozenset[str] = field(default_factory=frozenset)
    rule: str = ""

    @property
    def resolved(self) -> frozenset[str]:
        return frozenset(self.solution.journeys)

    def first_weights(self, g: TLDGraph) -> dict[str, int]:
        return {v: g.edge(j[0].edge).weight for v, j in self.solution.journeys.items()}


def finish(
    g: TLDGraph,
    solution: DelegationSolution,
    unresolved: Collection[str],
    rule: str,
    strict: bool,
) -> RuleResult:
    unresolved = frozenset(unresolved)
    if strict and unresolved:
        raise Unresolvable(unresolved)
    return RuleResult(solution, utility(g, solution), unresolved, rule)
