"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from collections.abc import Iterable


class TLDError(Exception):
    """Base class for all errors raised by this package."""


class MalformedEdge(TLDError, ValueError):
    pass


class OverlappingParallelEdges(TLDError, ValueError):
    pass


class DeltaOutOfRange(TLDError, ValueError):
    pass


class EventBlowup(TLDError):
    pass


class ProfileError(TLDError, ValueError):
    pass


class EmptyRanking(ProfileError):
    pass


class BrokenChain(TLDError, ValueError):
    pass


class NonConfluentInput(TLDError, ValueError):
    pass


class PreconditionViolated(TLDError, ValueError):
    pass


class NotRetrospective(PreconditionViolated):
    pass


class CapExceeded(TLDError):
    pass


class ScaleExceeded(CapExceeded):
    pass


class Infeasible(TLDError):
    pass


class MalformedTmstInstance(TLDError, ValueError):
    pass


class InvalidParams(TLDError, ValueError):
    pass


class Unresolvable(TLDError):
    """Raised by a rule in strict mode when some delegating voters have no journey."""

    def __init__(self, voters: Iterable[str]):
        self.voters = frozenset(voters)
        super().__init__(f"no feasible journey for: {', '.join(sorted(self.voters))}")
