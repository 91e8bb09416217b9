#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Greedy and exact UE selection / bandwidth allocation
"""

import math

import numpy as np
import pytest

from FEELsim.core.functions.Scheduler import (
    SchedulingInstance,
    check_decision,
    exact_schedule,
    greedy_schedule,
    objective_ratio,
    random_schedule,
    read_instance,
    top_k_schedule,
)
from FEELsim.core.io.IOExceptions import InstanceParseError, InstanceTooLargeError
from FEELsim.core.utils.rng import derive_stream

NAN = float("nan")


def instance(values, min_alpha, n=0):
    return SchedulingInstance(values=values, min_alpha=min_alpha, min_selected_N=n)


def random_instance(rng):
    count = int(rng.integers(1, 13))
    values = rng.random(count)
    weights = rng.uniform(0.05, 0.9, count)
    weights[rng.random(count) < 0.15] = NAN
    return instance(values, weights)


def test_high_value_ue_alone():
    decision = greedy_schedule(instance([10, 1], [0.6, 0.5]))
    assert decision.selected == (0,)
    assert decision.objective == 10
    assert exact_schedule(instance([10, 1], [0.6, 0.5])).selected == (0,)


def test_documented_suboptimal_case():
    problem = instance([6, 5, 5], [0.6, 0.5, 0.5])
    greedy = greedy_schedule(problem)
    exact = exact_schedule(problem)
    assert greedy.selected == (0,)
    assert greedy.objective == 6
    assert exact.selected == (1, 2)
    assert exact.objective == 10
    assert objective_ratio(greedy, exact) == pytest.approx(0.6)


def test_all_infeasible():
    problem = instance([1, 2], [NAN, 1.5])
    assert greedy_schedule(problem).empty
    assert exact_schedule(problem).empty


def test_single_feasible_ue():
    problem = instance([0.3], [0.2])
    assert greedy_schedule(problem).selected == (0,)
    assert exact_schedule(problem).selected == (0,)
    assert objective_ratio(greedy_schedule(problem), exact_schedule(problem)) == 1.0


def test_empty_instance():
    problem = instance([], [])
    assert objective_ratio(greedy_schedule(problem), exact_schedule(problem)) == 1.0


def test_leftover_bandwidth_shared():
    decision = greedy_schedule(instance([1, 1], [0.2, 0.3]))
    assert decision.alpha[0] == pytest.approx(0.4)
    assert decision.alpha[1] == pytest.approx(0.6)
    assert sum(decision.alpha.values()) <= 1 + 1e-9


def test_minimum_count_is_best_effort():
    # the fallback keeps UE 1 alone, then the cheapest UE that still fits tops up
    decision = greedy_schedule(instance([2, 10, 1], [0.01, 0.995, 0.004], n=3))
    assert decision.selected == (1, 2)
    decision = greedy_schedule(instance([5, 0.1], [0.9, 0.5], n=4))
    assert decision.selected == (0,)


def test_exact_guard():
    with pytest.raises(InstanceTooLargeError):
        exact_schedule(instance(np.ones(21), np.full(21, 0.01)))


def test_exact_dominates_greedy_and_half_bound():
    rng = np.random.default_rng(2022)
    ratios = []
    for _ in range(200):
        problem = random_instance(rng)
        greedy = greedy_schedule(problem)
        exact = exact_schedule(problem)
        assert exact.objective >= greedy.objective - 1e-9
        assert greedy.objective >= 0.5 * exact.objective - 1e-9
        assert check_decision(greedy, problem) == []
        assert check_decision(exact, problem) == []
        ratios.append(objective_ratio(greedy, exact))
    assert np.mean(ratios) >= 0.9


def test_raising_value_keeps_selection():
    rng = np.random.default_rng(5)
    for _ in range(100):
        problem = random_instance(rng)
        decision = greedy_schedule(problem)
        for k in decision.selected:
            values = problem.values.copy()
            values[k] *= 1.5
            raised = greedy_schedule(instance(values, problem.min_alpha))
            assert k in raised.selected


def test_top_k_and_random():
    values = np.array([0.1, 0.9, 0.5, 0.9, 0.2])
    decision = top_k_schedule(values, 2)
    assert decision.selected == (1, 3)
    assert decision.alpha == {1: 0.5, 3: 0.5}
    drawn = random_schedule(values, 3, derive_stream(0, "selection", 1))
    assert len(drawn.selected) == 3
    assert drawn.selected == random_schedule(values, 3, derive_stream(0, "selection", 1)).selected


def test_read_instance(tmp_path):
    path = tmp_path / "instance.txt"
    path.write_text("# id, V, min_alpha\n1, 6, 0.6\n2 5 0.5\n3, 5, 0.5\n4, 9, infeasible\n")
    problem = read_instance(str(path))
    assert problem.ids == (1, 2, 3, 4)
    assert math.isnan(problem.min_alpha[3])
    exact = exact_schedule(problem)
    assert exact.selected == (2, 3)
    assert objective_ratio(greedy_schedule(problem), exact) == pytest.approx(0.6)


def test_read_instance_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1, 6\n")
    with pytest.raises(InstanceParseError):
        read_instance(str(path))
    path.write_text("1, six, 0.2\n")
    with pytest.raises(InstanceParseError):
        read_instance(str(path))
