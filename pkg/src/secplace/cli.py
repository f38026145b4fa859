"""Command-line entry point.

Exit codes: 0 solved, 2 no feasible placement, 1 error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .bench import SuiteConfig, run_suite, write_csv
from .cost import CostModel, evaluate
from .errors import BudgetExceeded, ParameterError, ProblemFormatError
from .formats import ProblemFile, parse_problem, plan_from_evaluation, write_plan, write_problem
from .ga import NO_FEASIBLE_SOLUTION, SOLVED, GaConfig, solve
from .oracle import DEFAULT_BUDGET, exhaustive_solve
from .topology import default_random_demands, generate_fat_tree, generate_random

EXIT_SOLVED, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


def _add_cost_flags(p):
    p.add_argument("--sm-cost", type=float, action="append",
                   help="appliance cost; repeat once per type, or give once for all types (default 500)")
    p.add_argument("--penalty", type=float, default=1000)
    p.add_argument("--max-sm", type=int, default=None)
    p.add_argument("--max-unanalyzed", type=int, default=0)
    p.add_argument("--strict-order", action="store_true")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="secplace", description="Ordered security appliance placement")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the genetic algorithm on a problem file")
    p.add_argument("problem", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--population", type=int, default=50)
    p.add_argument("--evolutions", type=int, default=None, help="overrides the problem file")
    p.add_argument("--crossover-prob", type=float, default=0.7)
    p.add_argument("--mutation-prob", type=float, default=None)
    p.add_argument("--init-density", type=float, default=None)
    p.add_argument("--target-fitness", type=float, default=None)
    _add_cost_flags(p)

    p = sub.add_parser("oracle", help="exhaustive search on a small problem file")
    p.add_argument("problem", type=Path)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--bounded", action="store_true",
                   help="enumerate by appliance count and stop at the cost bound")
    _add_cost_flags(p)

    gen = sub.add_parser("gen", help="emit a problem file")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("random")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--edge-prob", type=float, default=0.3)
    g.add_argument("--weight-min", type=float, default=1)
    g.add_argument("--weight-max", type=float, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--types", type=int, default=1)
    g.add_argument("--evolutions", type=int, default=5)
    g.add_argument("--out", type=Path, default=None)
    g = gsub.add_parser("fat-tree")
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--weight", type=float, default=1)
    g.add_argument("--reverse", action="store_true")
    g.add_argument("--types", type=int, default=1)
    g.add_argument("--evolutions", type=int, default=5)
    g.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("bench", help="run the benchmark grid and print CSV")
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 50])
    p.add_argument("--types", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    p.add_argument("--population", type=int, default=50)
    p.add_argument("--init-density", type=float, default=None)
    p.add_argument("--no-fat-tree", action="store_true")
    p.add_argument("--no-chain", action="store_true")
    p.add_argument("--out", type=Path, default=None)
    return parser


def _emit(data, out: Path | None):
    if isinstance(data, str):
        data = data.encode("ascii")
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)


def cost_model(args, num_types: int) -> CostModel:
    costs = args.sm_cost or [500.0]
    if len(costs) == 1:
        costs = costs * num_types
    if len(costs) != num_types:
        raise ParameterError(f"got {len(costs)} --sm-cost values for {num_types} types")
    return CostModel(tuple(_tidy(c) for c in costs), _tidy(args.penalty), args.max_sm,
                     args.max_unanalyzed, args.strict_order)


def _tidy(x: float):
    # keep integral prices as ints so plan output stays exact and compact
    return int(x) if float(x).is_integer() else x


def _load(path: Path) -> ProblemFile:
    return parse_problem(path.read_text(encoding="ascii"))


def _plan_for(problem: ProblemFile, model: CostModel, status: str, genes, metadata):
    topo, demands = problem.topology(), problem.demands()
    if status != SOLVED:
        # no deployment: report the empty placement so COST re-evaluates exactly
        genes = [0] * problem.node_count
    ev = evaluate(topo, genes, demands, model, problem.num_types)
    return plan_from_evaluation(status, genes, ev, metadata)


def cmd_solve(args) -> int:
    problem = _load(args.problem)
    model = cost_model(args, problem.num_types)
    config = GaConfig(
        population_size=args.population,
        evolutions=args.evolutions or problem.evolutions,
        crossover_probability=args.crossover_prob,
        mutation_probability=args.mutation_prob,
        seed=args.seed,
        target_fitness=args.target_fitness,
        init_density=args.init_density,
    )
    start = time.perf_counter()
    result = solve(problem.topology(), problem.demands(), model, problem.num_types, config)
    wall_ms = (time.perf_counter() - start) * 1000
    metadata = {
        "solver": "ga",
        "seed": config.seed,
        "config": asdict(config),
        "cost_model": asdict(model),
        "generations_run": result.generations_run,
        "best_found_fitness": result.best_evaluation.fitness,
        "wall_ms": round(wall_ms, 3),
    }
    plan = _plan_for(problem, model, result.status, result.best_placement, metadata)
    _emit(write_plan(plan, args.format), args.out)
    return EXIT_SOLVED if result.solved else EXIT_INFEASIBLE


def cmd_oracle(args) -> int:
    problem = _load(args.problem)
    model = cost_model(args, problem.num_types)
    start = time.perf_counter()
    res = exhaustive_solve(problem.topology(), problem.demands(), model, problem.num_types,
                           budget=args.budget, bounded=args.bounded)
    wall_ms = (time.perf_counter() - start) * 1000
    status = SOLVED if res.solved else NO_FEASIBLE_SOLUTION
    metadata = {
        "solver": "oracle-bounded" if args.bounded else "oracle",
        "cost_model": asdict(model),
        "searched_count": res.searched_count,
        "evaluated_count": res.evaluated_count,
        "feasible_count": res.feasible_count,
        "wall_ms": round(wall_ms, 3),
    }
    plan = _plan_for(problem, model, status, res.best_placement, metadata)
    _emit(write_plan(plan, args.format), args.out)
    return EXIT_SOLVED if res.solved else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    if args.kind == "random":
        topo = generate_random(args.nodes, args.edge_prob, (_tidy(args.weight_min), _tidy(args.weight_max)),
                               args.seed)
        demands = default_random_demands(args.nodes)
    else:
        topo, demands = generate_fat_tree(args.k, _tidy(args.weight), args.reverse)
    problem = ProblemFile.from_instance(topo, demands, args.types, args.evolutions)
    _emit(write_problem(problem), args.out)
    return 0


def cmd_bench(args) -> int:
    cfg = SuiteConfig(
        sizes=tuple(args.sizes),
        types=tuple(args.types),
        seeds=tuple(args.seeds),
        population_size=args.population,
        init_density=args.init_density,
        fat_tree_k=None if args.no_fat_tree else 4,
        chain=not args.no_chain,
    )
    _emit(write_csv(run_suite(cfg)), args.out)
    return 0


COMMANDS = {"solve": cmd_solve, "oracle": cmd_oracle, "gen": cmd_gen, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ProblemFormatError, ParameterError, BudgetExceeded, OSError) as exc:
        print(f"secplace: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
