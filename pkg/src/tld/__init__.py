"""Resolving delegations in multi-round liquid-democracy elections."""

from .axioms import (
    DelegationSolution,
    TimedStep,
    ValidityReport,
    check_solution,
    is_confluent,
    is_restless_walk,
    is_time_conscious_path,
    is_time_respecting_path,
    representation_weights,
    utility,
)
from .gen import GenParams, random_election, snapshot
from .graph import (
    SINK,
    StaticGraph,
    TemporalEdge,
    TLDGraph,
    VoterPartition,
    build_graph,
    classify_voters,
    flip_time,
    reverse,
    static_variant,
)
from .profile import (
    Abstain,
    Approve,
    DeliberationProfile,
    Vote,
    compile_profile,
    decompile,
    is_retrospective,
    validate_profile,
)
from .rules import (
    RuleResult,
    oracle_tc_confluent,
    oracle_tc_paths,
    solve_confluent,
    solve_exact_tc_confluent,
    solve_tc_retrospective,
    solve_tc_walks,
)

__all__ = [
    "SINK",
    "Abstain",
    "Approve",
    "DelegationSolution",
    "DeliberationProfile",
    "GenParams",
    "RuleResult",
    "StaticGraph",
    "TLDGraph",
    "TemporalEdge",
    "TimedStep",
    "ValidityReport",
    "Vote",
    "VoterPartition",
    "build_graph",
    "check_solution",
    "classify_voters",
    "compile_profile",
    "decompile",
    "flip_time",
    "is_confluent",
    "is_restless_walk",
    "is_retrospective",
    "is_time_conscious_path",
    "is_time_respecting_path",
    "oracle_tc_confluent",
    "oracle_tc_paths",
    "random_election",
    "representation_weights",
    "reverse",
    "snapshot",
    "solve_confluent",
    "solve_exact_tc_confluent",
    "solve_tc_retrospective",
    "solve_tc_walks",
    "static_variant",
    "utility",
    "validate_profile",
]
