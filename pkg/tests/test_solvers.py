import pytest
from dataclasses import replace
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from diskscale.errors import UsageError, SolveTimeout
from diskscale.geometry import GraphClass, Instance
from diskscale.gadgets import gen_random
from diskscale.models import Deadline
from diskscale.oracle import brute_force_solve
from diskscale.solvers import (solve, solve_xp, solve_cluster_fpt, solve_complete, ColoredGraph,
                               restricted_growth_strings, RED, BLUE, GREEN)
from diskscale.verify import verify_solution

from tests.conftest import line_instance


# =============================================================================
# Small hand-made instances
# =============================================================================
@pytest.mark.parametrize("algo", ['xp', 'cluster-fpt', 'oracle', 'auto'])
def test_p3_needs_one_shrink(p3_line, algo):
    outcome = solve(p3_line, GraphClass.CLUSTER, algo=algo)
    assert outcome.answer
    assert len(outcome.witness.scaled()) == 1
    assert verify_solution(p3_line, outcome.witness, GraphClass.CLUSTER)

    assert not solve(p3_line.with_budget(0), GraphClass.CLUSTER, algo=algo).answer


@pytest.mark.parametrize("algo", ['xp', 'oracle'])
def test_far_apart_pair_cannot_connect(algo):
    inst = Instance.from_coordinates([(0, 0), (10, 0)], Fraction(1, 2), 2, 2)
    assert not solve(inst, GraphClass.CONNECTED, algo=algo).answer


@pytest.mark.parametrize("algo", ['complete', 'xp', 'oracle'])
def test_grow_one_to_complete(algo):
    inst = Instance.from_coordinates([(0, 0), (3, 0)], Fraction(1, 2), Fraction(5, 2), 1)
    outcome = solve(inst, GraphClass.COMPLETE, algo=algo)
    assert outcome.answer
    assert verify_solution(inst, outcome.witness, GraphClass.COMPLETE)


def test_complete_without_growth_is_the_unit_graph():
    inst = line_instance([0, 1, 2], 3, Fraction(1, 2), 1)
    assert solve_complete(inst).answer
    assert not solve_complete(line_instance([0, 1, 3], 3, Fraction(1, 2), 1)).answer


def test_complete_rejects_pairs_beyond_twice_r_max():
    inst = line_instance([0, 6], 2, Fraction(1, 2), 2)
    outcome = solve_complete(inst)
    assert not outcome.answer
    assert outcome.stats.lp_calls == 0


def test_edgeless_by_shrinking():
    inst = line_instance([0, "1.8", "3.6"], 1, Fraction(1, 2), 1)
    outcome = solve(inst, GraphClass.EDGELESS)
    assert outcome.answer
    assert list(outcome.witness.scaled()) == [1]


# =============================================================================
# Dispatcher
# =============================================================================
@pytest.mark.parametrize("input,expected", [
    (GraphClass.COMPLETE, 'complete'),
    (GraphClass.CLUSTER, 'cluster-fpt'),
    (GraphClass.CONNECTED, 'xp'),
    (GraphClass.EDGELESS, 'xp'),
])
def test_auto_routing(p3_line, input, expected):
    outcome = solve(p3_line, input)
    assert outcome.stats.algorithm == expected
    assert outcome.stats.routed_from == 'auto'
    assert solve(p3_line, input, algo=expected).stats.routed_from == ''


@pytest.mark.parametrize("algo,cls", [
    ('complete', GraphClass.CLUSTER),
    ('complete', GraphClass.CONNECTED),
    ('cluster-fpt', GraphClass.COMPLETE),
    ('cluster-fpt', GraphClass.EDGELESS),
])
def test_specialised_solvers_refuse_other_classes(p3_line, algo, cls):
    with pytest.raises(UsageError):
        solve(p3_line, cls, algo=algo)


def test_deadline():
    Deadline().check()
    with pytest.raises(SolveTimeout):
        Deadline(-1).check()
    with pytest.raises(SolveTimeout):
        solve_xp(line_instance([0, 2, 4], 1, Fraction(1, 2), 1), GraphClass.CLUSTER, deadline=Deadline(-1))


def test_outcome_row(p3_line):
    row = solve(p3_line, GraphClass.CLUSTER).to_row()
    assert list(row['answer']) == ['yes']
    assert row['algorithm'].iloc[0] == 'cluster-fpt'


# =============================================================================
# Cluster branching helpers
# =============================================================================
def test_restricted_growth_strings():
    assert list(restricted_growth_strings(3, 3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]
    assert list(restricted_growth_strings(3, 2)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1)]
    assert len(list(restricted_growth_strings(4, 4))) == 15


def test_colorful_p3():
    adjacency = np.zeros((3, 3), dtype=bool)
    adjacency[0, 1] = adjacency[1, 0] = adjacency[1, 2] = adjacency[2, 1] = True
    cg = ColoredGraph.from_adjacency(adjacency)
    assert cg.color(0, 1) == BLUE and cg.color(0, 2) == RED
    assert cg.find_colorful_p3() is not None

    cg.set(0, 2, GREEN)
    assert cg.color(2, 0) == GREEN
    assert sorted(cg.blue_graph().edges) == [(0, 1), (1, 2)]


# =============================================================================
# Agreement on random instances
# =============================================================================
@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("bounds", [(Fraction(1, 2), Fraction(1)), (Fraction(1, 2), Fraction(2))])
def test_cluster_fpt_agrees_with_xp(seed, bounds):
    inst = gen_random(7, 2, *bounds, box_size=2, seed=seed)
    fpt = solve_cluster_fpt(inst)
    xp = solve_xp(inst, GraphClass.CLUSTER)
    assert fpt.answer == xp.answer
    if fpt.answer:
        assert verify_solution(inst, fpt.witness, GraphClass.CLUSTER)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("cls", list(GraphClass))
def test_xp_agrees_with_oracle(seed, cls):
    inst = gen_random(5, 1, Fraction(1, 2), Fraction(2), box_size=2, seed=100 + seed)
    expected = brute_force_solve(inst, cls).answer
    outcome = solve_xp(inst, cls)
    assert outcome.answer == expected
    if outcome.answer:
        assert verify_solution(inst, outcome.witness, cls)


# =============================================================================
# Monotonicity in the budget and the radius interval
# =============================================================================
@given(seed=st.integers(0, 10**6), cls=st.sampled_from(list(GraphClass)))
def test_more_budget_never_hurts(seed, cls):
    inst = gen_random(5, 0, Fraction(1, 2), Fraction(3, 2), box_size=2, seed=seed)
    answers = [solve_xp(inst.with_budget(k), cls).answer for k in (0, 1, 2)]
    assert answers == sorted(answers)


@given(seed=st.integers(0, 10**6), cls=st.sampled_from(list(GraphClass)))
def test_larger_r_max_never_hurts(seed, cls):
    inst = gen_random(5, 1, Fraction(1, 2), Fraction(1), box_size=2, seed=seed)
    wider = [replace(inst, r_max=r_max) for r_max in (1, Fraction(3, 2), 2)]
    outcomes = [solve_xp(w, cls) for w in wider]
    answers = [o.answer for o in outcomes]
    assert answers == sorted(answers)
    if answers[-1]:
        assert verify_solution(wider[-1], outcomes[-1].witness, cls)
