"""Seeded benchmark grid: random graphs, fat trees and an infeasible chain."""
from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cost import CostModel
from .errors import BudgetExceeded
from .ga import SOLVED, GaConfig, solve
from .oracle import exhaustive_solve
from .topology import (DemandSet, Topology, default_random_demands, generate_chain,
                       generate_fat_tree, generate_random)

CSV_COLUMNS = ("topology", "n", "T", "evolutions", "seed", "status", "best_fitness", "wall_ms")


@dataclass(frozen=True)
class SuiteConfig:
    sizes: tuple[int, ...] = (10, 20, 50)
    types: tuple[int, ...] = (1, 2, 3, 4, 5)
    seeds: tuple[int, ...] = (0,)
    evolutions: int = 5
    # per-(n, T) overrides; n=10 with 5 types needed 10 evolutions in the original runs
    evolution_overrides: dict = field(default_factory=lambda: {(10, 5): 10})
    edge_probability: float = 0.3
    weight_range: tuple[float, float] = (1, 10)
    population_size: int = 50
    crossover_probability: float = 0.7
    mutation_probability: Optional[float] = None
    init_density: Optional[float] = None
    sm_cost: float = 500
    penalty: float = 1000
    fat_tree_k: Optional[int] = 4
    chain: bool = True
    # bounded-oracle evaluations allowed per cell when computing the reference optimum
    oracle_budget: int = 0


@dataclass
class BenchRow:
    topology: str
    n: int
    T: int
    evolutions: int
    seed: int
    status: str
    best_fitness: float
    wall_ms: float
    history: list[float] = field(default_factory=list, repr=False)
    optimum: Optional[float] = None

    def csv_values(self) -> list:
        return [self.topology, self.n, self.T, self.evolutions, self.seed, self.status,
                self.best_fitness, round(self.wall_ms, 3)]

    def generations_to_optimum(self) -> int:
        """First generation whose best-ever fitness equals the verified optimum.

        Runs that never reach it, or whose optimum is unknown, count as
        ``evolutions + 1``.
        """
        if self.optimum is not None:
            for i, f in enumerate(self.history):
                if f == self.optimum:
                    return i + 1
        return self.evolutions + 1


def _instances(cfg: SuiteConfig) -> Iterable[tuple[str, Topology, DemandSet, int, int]]:
    for n in cfg.sizes:
        for T in cfg.types:
            for seed in cfg.seeds:
                topo = generate_random(n, cfg.edge_probability, cfg.weight_range, seed)
                yield "random", topo, default_random_demands(n), T, seed
    if cfg.fat_tree_k:
        for reverse in (False, True):
            topo, demands = generate_fat_tree(cfg.fat_tree_k, 1, reverse)
            name = "fat-tree-reverse" if reverse else "fat-tree"
            for T in cfg.types:
                for seed in cfg.seeds:
                    yield name, topo, demands, T, seed
    if cfg.chain:
        # three intermediate nodes, endpoints cannot host appliances
        topo, demands = generate_chain(5, 1, endpoints_eligible=False)
        for seed in cfg.seeds:
            yield "chain", topo, demands, 5, seed


def run_cell(name: str, topo: Topology, demands: DemandSet, T: int, seed: int,
             cfg: SuiteConfig) -> BenchRow:
    evolutions = cfg.evolution_overrides.get((topo.node_count, T), cfg.evolutions)
    model = CostModel.uniform(T, cfg.sm_cost, cfg.penalty)
    ga_cfg = GaConfig(
        population_size=cfg.population_size,
        evolutions=evolutions,
        crossover_probability=cfg.crossover_probability,
        mutation_probability=cfg.mutation_probability,
        seed=seed,
        init_density=cfg.init_density,
    )
    start = time.perf_counter()
    result = solve(topo, demands, model, T, ga_cfg)
    wall_ms = (time.perf_counter() - start) * 1000
    optimum = None
    if cfg.oracle_budget:
        try:
            ref = exhaustive_solve(topo, demands, model, T, budget=cfg.oracle_budget, bounded=True)
            optimum = ref.best_fitness if ref.solved else None
        except BudgetExceeded:
            pass
    best = result.best_evaluation.fitness if result.status == SOLVED else float("nan")
    return BenchRow(name, topo.node_count, T, evolutions, seed, result.status, best, wall_ms,
                    list(result.history), optimum)


def run_suite(cfg: SuiteConfig = SuiteConfig()) -> list[BenchRow]:
    return [run_cell(*inst, cfg) for inst in _instances(cfg)]


def write_csv(rows: Iterable[BenchRow], stream=None) -> str:
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_values())
    return buf.getvalue() if stream is None else ""


def median_generations_to_optimum(rows: Iterable[BenchRow]) -> dict[tuple[str, int, int], float]:
    """Median over seeds, keyed by ``(topology, n, T)``."""
    groups: dict[tuple[str, int, int], list[int]] = {}
    for row in rows:
        groups.setdefault((row.topology, row.n, row.T), []).append(row.generations_to_optimum())
    return {key: statistics.median(v) for key, v in groups.items()}
