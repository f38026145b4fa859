"""Placement of ordered virtual security appliances in directed networks."""
from .cost import CostModel, Evaluation, evaluate, is_feasible
from .errors import BudgetExceeded, FewerThanTwoFeasible, ParameterError, ProblemFormatError, TopologyError
from .ga import NO_FEASIBLE_SOLUTION, SOLVED, GaConfig, SolveResult, solve
from .oracle import OracleResult, brute_force_ordered_path, exhaustive_solve
from .routing import OrderedPath, all_flow_paths, ordered_shortest_path
from .topology import DemandSet, Edge, Topology, generate_chain, generate_fat_tree, generate_random, validate

__all__ = [
    "BudgetExceeded", "CostModel", "DemandSet", "Edge", "Evaluation", "FewerThanTwoFeasible",
    "GaConfig", "NO_FEASIBLE_SOLUTION", "OracleResult", "OrderedPath", "ParameterError",
    "ProblemFormatError", "SOLVED", "SolveResult", "Topology", "TopologyError",
    "all_flow_paths", "brute_force_ordered_path", "evaluate", "exhaustive_solve",
    "generate_chain", "generate_fat_tree", "generate_random", "is_feasible",
    "ordered_shortest_path", "solve", "validate",
]
