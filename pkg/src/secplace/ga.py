"""Elitist two-parent genetic algorithm over per-node appliance genes."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .cost import CostModel, Evaluation, evaluate
from .errors import FewerThanTwoFeasible, ParameterError
from .topology import DemandSet, Topology, check_demands, require_valid

log = logging.getLogger(__name__)

Placement = tuple[int, ...]

SOLVED = "SOLVED"
NO_FEASIBLE_SOLUTION = "NO_FEASIBLE_SOLUTION"


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 50
    evolutions: int = 5
    crossover_probability: float = 0.7
    # None means 1 / node_count
    mutation_probability: Optional[float] = None
    seed: int = 0
    target_fitness: Optional[float] = None
    # None draws initial genes uniformly from 0..T; a value q makes each
    # eligible gene nonzero with probability q (type uniform over 1..T)
    init_density: Optional[float] = None

    def __post_init__(self):
        if self.population_size < 2:
            raise ParameterError("population_size must be at least 2")
        if self.evolutions < 1:
            raise ParameterError("evolutions must be positive")
        for name in ("crossover_probability", "mutation_probability", "init_density"):
            p = getattr(self, name)
            if p is not None and not 0 <= p <= 1:
                raise ParameterError(f"{name} must lie in [0, 1]")

    def mutation_rate(self, node_count: int) -> float:
        if self.mutation_probability is None:
            return 1 / node_count
        return self.mutation_probability


@dataclass
class SolveResult:
    best_placement: Placement
    best_evaluation: Evaluation
    status: str
    generations_run: int
    history: list[float] = field(default_factory=list)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def _random_placement(topology: Topology, num_types: int, rng: random.Random,
                      density: Optional[float] = None) -> Placement:
    if density is None:
        return tuple(rng.randint(0, num_types) if ok else 0 for ok in topology.eligible)
    return tuple(rng.randint(1, num_types) if ok and rng.random() < density else 0
                 for ok in topology.eligible)


def initialize_population(topology: Topology, num_types: int, config: GaConfig,
                          rng: Optional[random.Random] = None) -> list[Placement]:
    """``population_size`` random placements.

    Genes are uniform over ``0..num_types`` unless ``config.init_density`` asks
    for sparse individuals. Ineligible nodes always get 0. Without ``rng`` a
    generator seeded from ``config.seed`` is used.
    """
    if num_types < 1:
        raise ParameterError("at least one appliance type is required")
    rng = rng if rng is not None else random.Random(config.seed)
    return [_random_placement(topology, num_types, rng, config.init_density)
            for _ in range(config.population_size)]


def select_parents(population: Sequence[tuple[Placement, Evaluation]]) -> tuple[Placement, Placement]:
    """Two lowest-fitness feasible chromosomes, ties broken by gene order.

    Distinct chromosomes are preferred; when every feasible individual carries
    the same genes that chromosome is returned twice.
    """
    feasible = sorted(((ev.fitness, genes) for genes, ev in population if ev.feasible))
    if len(feasible) < 2:
        raise FewerThanTwoFeasible(f"{len(feasible)} feasible individual(s)")
    first = feasible[0][1]
    second = next((g for _, g in feasible[1:] if g != first), feasible[1][1])
    return first, second


def one_point_crossover(parent_a: Sequence[int], parent_b: Sequence[int], cut: int) -> tuple[Placement, Placement]:
    """Swap the first ``cut`` genes between the parents."""
    a, b = tuple(parent_a), tuple(parent_b)
    return b[:cut] + a[cut:], a[:cut] + b[cut:]


def crossover(parent_a: Sequence[int], parent_b: Sequence[int], config: GaConfig,
              rng: random.Random) -> tuple[Placement, Placement]:
    if len(parent_a) != len(parent_b):
        raise ParameterError("parents differ in length")
    n = len(parent_a)
    if n < 2 or rng.random() >= config.crossover_probability:
        return tuple(parent_a), tuple(parent_b)
    return one_point_crossover(parent_a, parent_b, rng.randint(1, n - 1))


def mutate(placement: Sequence[int], num_types: int, config: GaConfig, rng: random.Random,
           eligible: Optional[Sequence[bool]] = None) -> Placement:
    """Redraw each eligible gene uniformly from ``0..num_types`` with the mutation rate."""
    p = config.mutation_rate(len(placement))
    if eligible is None:
        eligible = (True,) * len(placement)
    genes = list(placement)
    for i, ok in enumerate(eligible):
        if ok and rng.random() < p:
            genes[i] = rng.randint(0, num_types)
    return tuple(genes)


class _Evaluator:
    """Memoises evaluations; results are pure functions of the genes."""

    def __init__(self, topology, demands, model, num_types):
        self.args = (topology, demands, model, num_types)
        self.cache: dict[Placement, Evaluation] = {}

    def __call__(self, genes: Placement) -> Evaluation:
        ev = self.cache.get(genes)
        if ev is None:
            topology, demands, model, num_types = self.args
            ev = self.cache[genes] = evaluate(topology, genes, demands, model, num_types)
        return ev


def _better(a: tuple[float, Placement], b: Optional[tuple[float, Placement]]) -> bool:
    return b is None or a < b


def solve(topology: Topology, demands: DemandSet, model: CostModel, num_types: int,
          config: GaConfig,
          callback: Optional[Callable[[int, list[tuple[Placement, Evaluation]]], None]] = None) -> SolveResult:
    """Run the GA for ``config.evolutions`` generations.

    Each generation breeds from the two best feasible chromosomes of the
    previous one, carries both forward unchanged and fills the population with
    mutated crossover offspring. Infeasible individuals stay in the population
    but never become parents. If fewer than two feasible individuals exist, the
    non-elite part of the population is redrawn at random.

    ``callback(generation, evaluated_population)`` is invoked for the initial
    population (generation 0) and after every evolution.
    """
    require_valid(topology)
    check_demands(topology, demands)
    if num_types < 1:
        raise ParameterError("at least one appliance type is required")
    rng = random.Random(config.seed)
    fitness_of = _Evaluator(topology, demands, model, num_types)

    population = initialize_population(topology, num_types, config, rng)
    evaluated = [(g, fitness_of(g)) for g in population]

    best_feasible: Optional[tuple[float, Placement]] = None
    best_any: Optional[tuple[float, Placement]] = None

    def record(individuals):
        nonlocal best_feasible, best_any
        for genes, ev in individuals:
            key = (ev.fitness, genes)
            if _better(key, best_any):
                best_any = key
            if ev.feasible and _better(key, best_feasible):
                best_feasible = key

    record(evaluated)
    if callback:
        callback(0, evaluated)
    history: list[float] = []
    generations = 0
    for generation in range(config.evolutions):
        if config.target_fitness is not None and best_feasible and best_feasible[0] <= config.target_fitness:
            break
        try:
            parents = select_parents(evaluated)
        except FewerThanTwoFeasible:
            parents = None
        if parents is None:
            nxt = [best_feasible[1]] if best_feasible else []
            while len(nxt) < config.population_size:
                nxt.append(_random_placement(topology, num_types, rng, config.init_density))
        else:
            nxt = list(parents)
            while len(nxt) < config.population_size:
                for child in crossover(parents[0], parents[1], config, rng):
                    nxt.append(mutate(child, num_types, config, rng, topology.eligible))
            nxt = nxt[:config.population_size]
        evaluated = [(g, fitness_of(g)) for g in nxt]
        record(evaluated)
        generations += 1
        if callback:
            callback(generations, evaluated)
        history.append(best_feasible[0] if best_feasible else math.inf)
        log.debug("generation %d best %s", generation + 1, history[-1])

    if best_feasible is not None:
        genes, status = best_feasible[1], SOLVED
    else:
        genes, status = best_any[1], NO_FEASIBLE_SOLUTION
    return SolveResult(genes, fitness_of(genes), status, generations, history)
