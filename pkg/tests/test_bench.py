import csv
import io

from secplace.bench import CSV_COLUMNS, BenchRow, SuiteConfig, median_generations_to_optimum, run_suite, write_csv


def _small(**kw):
    base = dict(sizes=(10,), types=(1, 2), seeds=(0, 1), fat_tree_k=None, chain=True, population_size=20)
    base.update(kw)
    return SuiteConfig(**base)


def test_csv_columns_and_rows():
    rows = run_suite(_small())
    table = list(csv.reader(io.StringIO(write_csv(rows))))
    assert tuple(table[0]) == CSV_COLUMNS
    assert len(table) == 1 + 2 * 2 + 2
    assert {r[0] for r in table[1:]} == {"random", "chain"}
    chain_rows = [r for r in table[1:] if r[0] == "chain"]
    assert all(r[5] == "NO_FEASIBLE_SOLUTION" and r[6] == "nan" for r in chain_rows)


def test_evolution_override_for_hardest_small_cell():
    rows = run_suite(_small(types=(5,), seeds=(0,), chain=False))
    assert rows[0].evolutions == 10 and len(rows[0].history) == 10


def test_same_seeds_same_fitness():
    a = run_suite(_small())
    b = run_suite(_small())
    strip = lambda rows: [[str(v) for v in r.csv_values()[:-1]] for r in rows]
    assert strip(a) == strip(b)


def test_fat_tree_rows_cover_both_directions():
    rows = run_suite(SuiteConfig(sizes=(), types=(1,), fat_tree_k=4, chain=False, population_size=10,
                                 init_density=1 / 36))
    assert [r.topology for r in rows] == ["fat-tree", "fat-tree-reverse"]
    assert all(r.n == 36 for r in rows)


def test_generations_to_optimum():
    row = BenchRow("random", 10, 1, 5, 0, "SOLVED", 7, 0.0, [9, 8, 7, 7, 7], optimum=7)
    assert row.generations_to_optimum() == 3
    row.optimum = 6
    assert row.generations_to_optimum() == 6
    row.optimum = None
    assert row.generations_to_optimum() == 6


def test_median_grouping():
    rows = [BenchRow("random", 10, 1, 5, s, "SOLVED", 1, 0.0, [1] * 5, optimum=1) for s in range(3)]
    assert median_generations_to_optimum(rows) == {("random", 10, 1): 1}


def test_oracle_reference_recorded():
    rows = run_suite(_small(types=(1,), seeds=(0,), chain=False, oracle_budget=5000))
    assert rows[0].optimum is not None and rows[0].optimum <= rows[0].best_fitness
