from .base import RuleResult
from .confluent import solve_confluent
from .exact import solve_exact_tc_confluent
from .oracles import oracle_confluent_static, oracle_tc_confluent, oracle_tc_paths
from .time_conscious import solve_tc_retrospective, solve_tc_walks

__all__ = [
    "RuleResult",
    "oracle_confluent_static",
    "oracle_tc_confluent",
    "oracle_tc_paths",
    "solve_confluent",
    "solve_exact_tc_confluent",
    "solve_tc_retrospective",
    "solve_tc_walks",
]
