#!/usr/bin/env python3
"""Single-type placement on the k=4 fat tree, oracle against GA.

Prints the exact optimum (bounded oracle), then how often the GA reaches it
over a range of seeds with uniform and with sparse initial populations.
"""
import argparse
import time

from secplace import CostModel, GaConfig, exhaustive_solve, generate_fat_tree, solve


def hit_rate(topo, demands, model, target, seeds, **kw):
    hits = 0
    for seed in seeds:
        res = solve(topo, demands, model, 1, GaConfig(seed=seed, **kw))
        hits += res.solved and res.best_evaluation.fitness == target
    return hits


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--population", type=int, default=50)
    ap.add_argument("--evolutions", type=int, default=5)
    ap.add_argument("--reverse", action="store_true")
    args = ap.parse_args()

    topo, demands = generate_fat_tree(4, 1, reverse=args.reverse)
    model = CostModel((500,), 1000)
    t0 = time.perf_counter()
    ref = exhaustive_solve(topo, demands, model, 1, bounded=True)
    nodes = [i for i, g in enumerate(ref.best_placement) if g]
    ev = ref.best_evaluation
    print(f"oracle: fitness {ref.best_fitness} with appliance at {nodes} "
          f"(f_sm {ev.f_sm}, f_path {ev.f_path}, f_unalloc {ev.f_unalloc}), "
          f"{ref.evaluated_count} placements evaluated, {time.perf_counter() - t0:.2f}s")

    seeds = range(args.seeds)
    common = dict(population_size=args.population, evolutions=args.evolutions)
    for label, density in (("uniform init", None), ("sparse init 1/36", 1 / 36)):
        t0 = time.perf_counter()
        hits = hit_rate(topo, demands, model, ref.best_fitness, seeds, init_density=density, **common)
        print(f"GA {label}: optimum on {hits}/{args.seeds} seeds, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
