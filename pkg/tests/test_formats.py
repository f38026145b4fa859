import pytest
from hypothesis import given, settings, strategies as st

from secplace.cost import CostModel, evaluate
from secplace.errors import ProblemFormatError
from secplace.formats import (PlacementPlan, ProblemFile, parse_plan_json, parse_plan_text, parse_problem,
                              plan_from_evaluation, write_plan, write_problem)
from secplace.topology import generate_fat_tree

CHAIN = "3 1 5\nsources: 0\ndestinations: 2\n0 1 1\n1 2 1\n"


def test_parse_chain():
    pf = parse_problem(CHAIN)
    assert (pf.node_count, pf.num_types, pf.evolutions) == (3, 1, 5)
    assert pf.demands().flows == [(0, 2)]
    assert pf.edges == ((0, 1, 1), (1, 2, 1))


def test_comments_and_blank_lines_ignored():
    text = "# chain\n3 1 5   # header\n\nsources: 0\ndestinations: 2\n# edges\n0 1 1\n1 2 1\n"
    assert parse_problem(text) == parse_problem(CHAIN)


def _error(text):
    with pytest.raises(ProblemFormatError) as info:
        parse_problem(text)
    return info.value


def test_missing_destinations_names_line_3():
    assert _error("3 1 5\nsources: 0\n0 1 1\n1 2 1\n").line == 3
    assert _error("3 1 5\nsources: 0\n").line == 3


@pytest.mark.parametrize("edge, reason", [
    ("0 1 -2", "negative weight"),
    ("0 7 1", "out of range"),
    ("1 1 1", "self-loop"),
    ("0 1", "edge must be"),
    ("0 1 x", "bad weight"),
])
def test_bad_edges(edge, reason):
    err = _error(f"3 1 5\nsources: 0\ndestinations: 2\n{edge}\n")
    assert err.line == 4 and reason in err.reason


def test_duplicate_edge():
    err = _error(CHAIN + "0 1 3\n")
    assert err.line == 6 and "duplicate" in err.reason


def test_bad_header():
    assert _error("3 1\nsources: 0\ndestinations: 2\n").line == 1
    assert _error("").line == 1


def test_ineligible_line():
    pf = parse_problem("3 1 5\nsources: 0\ndestinations: 2\nineligible: 0 2\n0 1 1\n1 2 1\n")
    assert pf.topology().eligible == (False, True, False)
    assert parse_problem(write_problem(pf)) == pf


def test_fat_tree_problem_file():
    topo, d = generate_fat_tree(4)
    pf = ProblemFile.from_instance(topo, d, 1, 5)
    text = write_problem(pf)
    assert text.startswith("36 1 5\nsources: 0 1 2 3 4 5 6 7\ndestinations: 8 9 10 11 12 13 14 15\n")
    assert parse_problem(text).topology() == topo


@st.composite
def problem_files(draw):
    n = draw(st.integers(2, 12))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20))
    weight = st.integers(0, 100) | st.floats(0, 1e6, allow_nan=False, allow_infinity=False)
    edges = tuple((u, v, draw(weight)) for u, v in chosen)
    nodes = st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True)
    return ProblemFile(
        node_count=n,
        num_types=draw(st.integers(0, 5)),
        evolutions=draw(st.integers(1, 50)),
        sources=tuple(draw(nodes)),
        destinations=tuple(draw(nodes)),
        edges=edges,
        ineligible=tuple(sorted(draw(st.sets(st.integers(0, n - 1))))),
    )


@given(problem_files())
@settings(max_examples=100)
def test_problem_round_trip(pf):
    text = write_problem(pf)
    again = parse_problem(text)
    assert again == pf
    assert write_problem(again) == text


def _chain_plan():
    pf = parse_problem(CHAIN)
    ev = evaluate(pf.topology(), (0, 1, 0), pf.demands(), CostModel((500,), 1000), 1)
    return plan_from_evaluation("SOLVED", (0, 1, 0), ev, {"seed": 1})


def test_text_plan_layout():
    assert write_plan(_chain_plan(), "text") == b"SM 1 1\nCOST 502\nBREAKDOWN 500 2 0\nFLOW 0 2 0-1-2\n"


def test_infeasible_plan_has_status_and_no_sm_lines():
    pf = parse_problem(CHAIN)
    ev = evaluate(pf.topology(), (0, 0, 0), pf.demands(), CostModel((500,), 1000), 1)
    plan = plan_from_evaluation("NO_FEASIBLE_SOLUTION", (0, 0, 0), ev)
    text = write_plan(plan, "text").decode()
    assert text.splitlines()[0] == "STATUS NO_FEASIBLE_SOLUTION"
    assert "SM " not in text and "FLOW 0 2 UNALLOCATED" in text
    assert parse_plan_json(write_plan(plan, "json")).status == "NO_FEASIBLE_SOLUTION"


def test_json_round_trip_and_byte_stability():
    plan = _chain_plan()
    data = write_plan(plan, "json")
    assert parse_plan_json(data) == plan
    assert write_plan(parse_plan_json(data), "json") == data


def test_text_round_trip():
    plan = _chain_plan()
    back = parse_plan_text(write_plan(plan, "text"))
    assert (back.placements, back.global_cost, back.breakdown, back.flows) == (
        plan.placements, plan.global_cost, plan.breakdown, plan.flows)


def test_plan_cost_reevaluates():
    plan = _chain_plan()
    pf = parse_problem(CHAIN)
    ev = evaluate(pf.topology(), plan.genes(3), pf.demands(), CostModel((500,), 1000), 1)
    assert ev.fitness == plan.global_cost
    assert (ev.f_sm, ev.f_path, ev.f_unalloc) == plan.breakdown


def test_unknown_format():
    with pytest.raises(ValueError):
        write_plan(PlacementPlan("SOLVED", (), 0, (0, 0, 0), ()), "xml")
