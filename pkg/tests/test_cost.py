from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import chain, demands, small_instances
from secplace.cost import CostModel, Evaluation, evaluate, is_feasible
from secplace.errors import ParameterError
from secplace.topology import DemandSet


def _ev(sm_count, unanalyzed):
    return Evaluation(0, 0, 0, 0, sm_count, unanalyzed, False, ())


def test_empty_placement_pays_penalty_per_flow():
    t = chain(4)
    d = demands([0, 1], [2, 3])
    for max_unanalyzed, feasible in [(3, False), (4, True)]:
        model = CostModel((500,), 1000, max_unanalyzed=max_unanalyzed)
        ev = evaluate(t, (0, 0, 0, 0), d, model, 1)
        assert (ev.f_sm, ev.f_path, ev.f_unalloc, ev.fitness) == (0, 0, 4000, 4000)
        assert ev.feasible is feasible


def test_chain_fitness(chain3):
    ev = evaluate(chain3, (0, 1, 0), demands([0], [2]), CostModel((500,), 1000), 1)
    assert (ev.f_sm, ev.f_path, ev.f_unalloc, ev.fitness) == (500, 2, 0, 502)
    assert ev.sm_count == 1 and ev.unanalyzed_count == 0 and ev.feasible


def test_chain_fitness_over_all_single_site_placements(chain3):
    # every node of the only path can host the type-1 appliance
    d, m = demands([0], [2]), CostModel((500,), 1000)
    assert [evaluate(chain3, g, d, m, 1).fitness for g in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]] == [502] * 3


def test_fat_tree_core_fitness(fat_tree4):
    t, d = fat_tree4
    genes = [0] * 36
    genes[35] = 1
    ev = evaluate(t, genes, d, CostModel((500,), 1000), 1)
    assert (ev.f_sm, ev.f_path, ev.f_unalloc, ev.fitness) == (500, 384, 0, 884)


def test_per_type_costs():
    t = chain(4)
    ev = evaluate(t, (0, 1, 2, 0), demands([0], [3]), CostModel((100, 7), 1000), 2)
    assert ev.f_sm == 107 and ev.f_path == 3


@pytest.mark.parametrize("sm_count, max_sm, unanalyzed, max_unanalyzed, ok", [
    (3, None, 0, 0, True),
    (0, None, 1, 0, False),
    (5, 4, 0, 0, False),
    (4, 4, 2, 2, True),
])
def test_is_feasible(sm_count, max_sm, unanalyzed, max_unanalyzed, ok):
    model = CostModel((1,), 1, max_sm=max_sm, max_unanalyzed=max_unanalyzed)
    assert is_feasible(_ev(sm_count, unanalyzed), model) is ok


def test_max_sm_applied_in_evaluate(chain3):
    model = CostModel((1,), 1, max_sm=1)
    assert not evaluate(chain3, (1, 1, 0), demands([0], [2]), model, 1).feasible


@pytest.mark.parametrize("kwargs", [
    dict(sm_cost=(0,), penalty=1), dict(sm_cost=(1,), penalty=0),
    dict(sm_cost=(1,), penalty=1, max_sm=0), dict(sm_cost=(1,), penalty=1, max_unanalyzed=-1),
])
def test_cost_model_rejects_bad_values(kwargs):
    with pytest.raises(ParameterError):
        CostModel(**kwargs)


def test_dimension_mismatch(chain3):
    with pytest.raises(ParameterError):
        evaluate(chain3, (0, 0), demands([0], [2]), CostModel((1,), 1), 1)
    with pytest.raises(ParameterError):
        evaluate(chain3, (0, 0, 0), demands([0], [2]), CostModel((1, 1), 1), 1)


@st.composite
def evaluations(draw):
    t, genes, s, d, T = draw(small_instances(min_types=1))
    others = [x for x in range(t.node_count) if x != s]
    dests = draw(st.lists(st.sampled_from(others), min_size=1, max_size=3, unique=True))
    costs = tuple(Fraction(draw(st.integers(1, 1000)), draw(st.integers(1, 7))) for _ in range(T))
    model = CostModel(costs, Fraction(draw(st.integers(1, 5000)), draw(st.integers(1, 7))),
                      max_sm=draw(st.none() | st.integers(1, 8)),
                      max_unanalyzed=draw(st.integers(0, 3)), strict_order=draw(st.booleans()))
    return t, genes, DemandSet((s,), tuple(dests)), model, T


@given(evaluations(), st.fractions(min_value=Fraction(1, 100), max_value=100).filter(lambda c: c > 0))
@settings(max_examples=200, deadline=None)
def test_decomposition_and_scaling(inst, c):
    t, genes, d, model, T = inst
    ev = evaluate(t, genes, d, model, T)
    assert ev.fitness - ev.f_sm - ev.f_path - ev.f_unalloc == 0
    assert ev.f_unalloc == model.penalty * ev.unanalyzed_count
    assert ev.allocated_count + ev.unanalyzed_count == len(d)
    assert ev.f_sm == sum(model.sm_cost[g - 1] for g in genes if g)
    scaled = evaluate(t, genes, d, model.scaled(c), T)
    assert scaled.f_sm + scaled.f_unalloc == c * (ev.f_sm + ev.f_unalloc)
    assert scaled.f_path == ev.f_path
    assert (scaled.sm_count, scaled.unanalyzed_count, scaled.feasible) == (ev.sm_count, ev.unanalyzed_count, ev.feasible)


@given(evaluations())
@settings(max_examples=100, deadline=None)
def test_empty_placement_bound(inst):
    t, genes, d, model, T = inst
    ev = evaluate(t, [0] * t.node_count, d, model, T)
    assert ev.fitness == model.penalty * len(d)
