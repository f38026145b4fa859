"""Global placement cost: appliance cost + path duration + unanalyzed-flow penalty."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import ParameterError
from .routing import FlowResult, all_flow_paths
from .topology import DemandSet, Topology


@dataclass(frozen=True)
class CostModel:
    """Prices and thresholds.

    ``sm_cost[t-1]`` is the price of one type-``t`` appliance. ``max_sm=None``
    means no cap on the appliance count. Both thresholds are inclusive.
    """

    sm_cost: tuple[float, ...]
    penalty: float
    max_sm: Optional[int] = None
    max_unanalyzed: int = 0
    strict_order: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sm_cost", tuple(self.sm_cost))
        if any(c <= 0 for c in self.sm_cost):
            raise ParameterError("appliance costs must be positive")
        if self.penalty <= 0:
            raise ParameterError("penalty must be positive")
        if self.max_sm is not None and self.max_sm < 1:
            raise ParameterError("max_sm must be at least 1")
        if self.max_unanalyzed < 0:
            raise ParameterError("max_unanalyzed must be non-negative")

    @classmethod
    def uniform(cls, num_types: int, sm_cost: float, penalty: float, **kwargs) -> "CostModel":
        return cls((sm_cost,) * num_types, penalty, **kwargs)

    @property
    def num_types(self) -> int:
        return len(self.sm_cost)

    def scaled(self, c: float) -> "CostModel":
        return CostModel(tuple(x * c for x in self.sm_cost), self.penalty * c,
                         self.max_sm, self.max_unanalyzed, self.strict_order)


@dataclass(frozen=True)
class Evaluation:
    f_sm: float
    f_path: float
    f_unalloc: float
    fitness: float
    sm_count: int
    unanalyzed_count: int
    feasible: bool
    flow_results: tuple[FlowResult, ...]

    @property
    def allocated_count(self) -> int:
        return len(self.flow_results) - self.unanalyzed_count


def is_feasible(evaluation: Evaluation, model: CostModel) -> bool:
    within_sm = model.max_sm is None or evaluation.sm_count <= model.max_sm
    return within_sm and evaluation.unanalyzed_count <= model.max_unanalyzed


def evaluate(topology: Topology, genes: Sequence[int], demands: DemandSet,
             model: CostModel, num_types: int) -> Evaluation:
    """Cost of one placement.

    Unallocated flows pay the penalty and contribute nothing to the path term.
    Infeasible placements still get a finite fitness.
    """
    if model.num_types != num_types:
        raise ParameterError(f"cost model prices {model.num_types} types, problem has {num_types}")
    results = all_flow_paths(topology, genes, demands, num_types, model.strict_order)
    f_sm = sum(model.sm_cost[g - 1] for g in genes if g)
    sm_count = sum(1 for g in genes if g)
    f_path = sum(p.duration for _, p in results if p is not None)
    unanalyzed = sum(1 for _, p in results if p is None)
    f_unalloc = model.penalty * unanalyzed
    ev = Evaluation(
        f_sm=f_sm,
        f_path=f_path,
        f_unalloc=f_unalloc,
        fitness=f_sm + f_path + f_unalloc,
        sm_count=sm_count,
        unanalyzed_count=unanalyzed,
        feasible=False,
        flow_results=tuple(results),
    )
    return replace(ev, feasible=is_feasible(ev, model))
