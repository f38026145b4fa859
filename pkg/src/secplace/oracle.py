"""Exact solvers used to check the heuristics on small instances.

``exhaustive_solve`` enumerates placements; ``brute_force_ordered_path``
enumerates walks. Neither shares search code with the GA or the layered
shortest-path routine.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .cost import CostModel, Evaluation, evaluate
from .errors import BudgetExceeded, ParameterError
from .routing import OrderedPath
from .topology import DemandSet, Topology, check_demands, require_valid

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class OracleResult:
    best_placement: Optional[tuple[int, ...]]
    best_fitness: float
    feasible_count: Optional[int]
    searched_count: int
    evaluated_count: int
    best_evaluation: Optional[Evaluation] = None

    @property
    def solved(self) -> bool:
        return self.best_placement is not None


def _plain_distances_to(topology: Topology, destination: int) -> list[float]:
    dist = [math.inf] * topology.node_count
    dist[destination] = 0
    heap = [(0, destination)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, w in topology.predecessors[v]:
            if d + w < dist[u]:
                dist[u] = d + w
                heapq.heappush(heap, (d + w, u))
    return dist


def exhaustive_solve(topology: Topology, demands: DemandSet, model: CostModel, num_types: int,
                     budget: int = DEFAULT_BUDGET, bounded: bool = False) -> OracleResult:
    """Minimum-fitness feasible placement, ties broken by smallest gene tuple.

    The full mode evaluates all ``(T+1)**e`` placements over the ``e`` eligible
    nodes and reports how many are feasible. The bounded mode walks placements
    by increasing appliance count and stops once the count alone forces
    ``fitness`` above the incumbent; it is exact but leaves ``feasible_count``
    unset. Any feasible placement with ``m`` appliances costs at least
    ``m * min(sm_cost)`` plus, per flow, the smaller of its unconstrained
    distance and the penalty.
    """
    require_valid(topology)
    check_demands(topology, demands)
    if num_types < 0:
        raise ParameterError("number of types must be non-negative")
    slots = topology.eligible_nodes
    space = (num_types + 1) ** len(slots)
    if bounded:
        return _bounded(topology, demands, model, num_types, budget, slots, space)
    if space > budget:
        raise BudgetExceeded(space, budget)

    best: Optional[tuple[float, tuple[int, ...]]] = None
    best_ev = None
    feasible = 0
    genes = [0] * topology.node_count
    for combo in itertools.product(range(num_types + 1), repeat=len(slots)):
        for i, g in zip(slots, combo):
            genes[i] = g
        ev = evaluate(topology, genes, demands, model, num_types)
        if not ev.feasible:
            continue
        feasible += 1
        # lexicographic enumeration: only a strictly lower fitness replaces
        if best is None or ev.fitness < best[0]:
            best, best_ev = (ev.fitness, tuple(genes)), ev
    return _result(best, best_ev, feasible, space, space)


def _bounded(topology, demands, model, num_types, budget, slots, space) -> OracleResult:
    base = 0
    for d in sorted(set(demands.destinations)):
        dist = _plain_distances_to(topology, d)
        for s in demands.sources:
            if s != d:
                base += min(dist[s], model.penalty)
    cheapest = min(model.sm_cost) if model.sm_cost else 0
    max_count = len(slots) if model.max_sm is None else min(len(slots), model.max_sm)

    best = None
    best_ev = None
    evaluated = 0
    for count in range(max_count + 1):
        if count and num_types == 0:
            break
        if best is not None and count * cheapest + base > best[0]:
            break
        level_size = math.comb(len(slots), count) * num_types ** count
        if evaluated + level_size > budget:
            raise BudgetExceeded(evaluated + level_size, budget)
        for sites in itertools.combinations(slots, count):
            for types in itertools.product(range(1, num_types + 1), repeat=count):
                genes = [0] * topology.node_count
                for i, g in zip(sites, types):
                    genes[i] = g
                evaluated += 1
                ev = evaluate(topology, genes, demands, model, num_types)
                key = (ev.fitness, tuple(genes))
                if ev.feasible and (best is None or key < best):
                    best, best_ev = key, ev
    return _result(best, best_ev, None, space, evaluated)


def _result(best, best_ev, feasible, space, evaluated) -> OracleResult:
    if best is None:
        return OracleResult(None, math.inf, feasible, space, evaluated)
    return OracleResult(best[1], best[0], feasible, space, evaluated, best_ev)


def walk_levels(nodes: Sequence[int], genes: Sequence[int], strict: bool) -> Optional[list[int]]:
    """Progress level after each node of a walk, or ``None`` if strict order is broken."""
    level = 0
    trace = []
    for v in nodes:
        g = genes[v]
        if g == level + 1:
            level += 1
        elif strict and g > level + 1:
            return None
        trace.append(level)
    return trace


def brute_force_ordered_path(topology: Topology, genes: Sequence[int], source: int,
                             destination: int, num_types: int,
                             strict_order: bool = False) -> Optional[OrderedPath]:
    """Enumerate every walk and keep the best qualifying one.

    A walk that repeats a ``(node, level)`` pair contains a cycle whose removal
    keeps it qualifying and no longer, so only walks without such repeats are
    enumerated; they have at most ``n * (T + 1) - 1`` edges. The winner
    minimises ``(duration, node sequence)``.
    """
    weight = topology.weights
    succ = [[v for v, _ in row] for row in topology.successors]
    best: Optional[tuple[float, tuple[int, ...]]] = None
    first = walk_levels([source], genes, strict_order)
    if first is None:
        return None

    stack = [((source,), (source, first[0]), frozenset([(source, first[0])]), 0)]
    while stack:
        nodes, state, seen, dur = stack.pop()
        if state == (destination, num_types):
            key = (dur, nodes)
            if best is None or key < best:
                best = key
            continue
        level = state[1]
        for v in succ[state[0]]:
            g = genes[v]
            if g == level + 1:
                nl = level + 1
            elif strict_order and g > level + 1:
                continue
            else:
                nl = level
            nxt = (v, nl)
            if nxt in seen:
                continue
            stack.append((nodes + (v,), nxt, seen | {nxt}, dur + weight[state[0], v]))
    if best is None:
        return None
    trace = walk_levels(best[1], genes, strict_order)
    return OrderedPath(best[1], best[0], tuple(trace))
