from .restless import RestlessInstance, brute_force_restless, from_restless_path
from .steiner import SteinerInstance, steiner_dp, to_steiner
from .tmst import TmstInstance, brute_force_tmst, from_tmst, validate_tmst

__all__ = [
    "RestlessInstance",
    "SteinerInstance",
    "TmstInstance",
    "brute_force_restless",
    "brute_force_tmst",
    "from_restless_path",
    "from_tmst",
    "steiner_dp",
    "to_steiner",
    "validate_tmst",
]
