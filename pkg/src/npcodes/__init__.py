"""Network protection codes and joint-protection provisioning."""

from .catalog import Catalog, catalog
from .codes import (LinearCode, bch_dimension, check_bounds, construct_bch, derive, example_code,
                    single_parity_code)
from .gf2 import BitMatrix, UnrecoverableErasure, min_distance
from .scheme import encode_round, plan_round, run_rounds
from .sim import FailureScenario, exhaustive_validate, inject, recover

__all__ = [
    "BitMatrix", "Catalog", "FailureScenario", "LinearCode", "UnrecoverableErasure",
    "bch_dimension", "catalog", "check_bounds", "construct_bch", "derive", "encode_round",
    "example_code", "exhaustive_validate", "inject", "min_distance", "plan_round", "recover",
    "run_rounds", "single_parity_code",
]
