#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Simulated clock task manager
"""

import pytest

from FEELsim.tasks.DoOnce import DoOnce
from FEELsim.tasks.RecurringTask import RecurringTask
from FEELsim.tasks.TaskManager import Manager


def test_recurring_task_runs_count_times():
    manager = Manager()
    calls = []
    RecurringTask(lambda n: calls.append((n, manager.clock)), delay=30, count=4).start(manager)
    end = manager.process()
    assert calls == [(1, 0.0), (2, 30.0), (3, 60.0), (4, 90.0)]
    assert end == 90.0
    assert manager.number_of_tasks() == 0


def test_do_once_runs_before_recurring_at_same_time():
    manager = Manager()
    order = []
    DoOnce(lambda: order.append("init")).start(manager)
    RecurringTask(lambda n: order.append(n), delay=10, count=2).start(manager)
    manager.process()
    assert order == ["init", 1, 2]


def test_tasks_run_in_time_order():
    manager = Manager()
    order = []
    DoOnce(lambda: order.append("late"), first_delay=50).start(manager)
    DoOnce(lambda: order.append("early"), first_delay=5).start(manager)
    RecurringTask(lambda n: order.append(n), delay=20, count=3).start(manager)
    manager.process()
    assert order == [1, "early", 2, 3, "late"]
    assert manager.clock == 50.0


def test_process_until():
    manager = Manager()
    calls = []
    RecurringTask(calls.append, delay=10).start(manager)
    manager.process(until=35)
    assert calls == [1, 2, 3, 4]
    assert manager.number_of_tasks() == 1
    manager.stopAllTasks()
    assert manager.number_of_tasks() == 0


def test_stop_from_inside_a_task():
    manager = Manager()
    calls = []
    task = RecurringTask(lambda n: calls.append(n) or (n == 2 and task.stop()), delay=1)
    task.start(manager)
    manager.process()
    assert calls == [1, 2]


def test_failing_task_is_reraised():
    manager = Manager()

    def boom():
        raise RuntimeError("boom")

    DoOnce(boom).start(manager)
    with pytest.raises(RuntimeError):
        manager.process()
    assert manager.enable is False


def test_invalid_tasks():
    with pytest.raises(ValueError):
        RecurringTask("not callable", delay=1)
    with pytest.raises(ValueError):
        RecurringTask(print, delay=0)
    with pytest.raises(ValueError):
        DoOnce(42)


def test_execution_statistics():
    manager = Manager()
    task = RecurringTask(lambda n: sum(range(1000)), delay=5, count=3).start(manager)
    manager.process()
    assert task.count == 3
    assert task.total_execution_time >= task.execution_time >= 0
    assert task.average_execution_time == task.total_execution_time / 3
