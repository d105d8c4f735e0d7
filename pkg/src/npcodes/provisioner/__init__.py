"""Graph-level provisioning of jointly protected connections."""

from .bhandari import DisjointPathError, PathPair, bhandari_pair
from .bnb import BnbResult, Limits, solve_bnb
from .ilp import IlpModel, assignment_from_paths, build_ilp
from .lpformat import export_lp
from .provision import (COST_HEADER, CostRow, ProvisionResult, compare_costs, decode,
                        disjointness_problems, one_plus_one, one_plus_one_row, provision)
from .topology import Connection, ConnectionSet, Topology, TopologyError, load_topology, parse_topology

__all__ = [
    "COST_HEADER", "Connection", "ConnectionSet", "CostRow", "DisjointPathError", "BnbResult",
    "IlpModel", "Limits", "PathPair", "ProvisionResult", "Topology", "TopologyError",
    "assignment_from_paths", "bhandari_pair", "build_ilp", "compare_costs", "decode",
    "disjointness_problems", "export_lp", "load_topology", "one_plus_one", "one_plus_one_row",
    "parse_topology", "provision", "solve_bnb",
]
