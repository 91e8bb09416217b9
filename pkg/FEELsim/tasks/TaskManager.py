#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
TaskManager.py - tasks executed against a simulated clock.

The manager always runs the task due first (ties : the task created first)
and jumps the clock to its execution time. Nothing sleeps, so a run takes
exactly the time its computations take and is fully reproducible.
"""
# --- standard Python modules ---
import itertools
import time

# --- this application's modules ---
from ..core.utils.notes import note_and_log

# ------------------------------------------------------------------------------


@note_and_log
class Manager:
    def __init__(self, start_time=0.0):
        self.clock = float(start_time)
        self.tasks = []
        self.enable = False
        self._sequence = itertools.count()
        self._log.debug("Task Manager Initiated")

    def schedule_task(self, task):
        if task.next_execution is None:
            task.next_execution = self.clock + task.first_delay
        task.sequence = next(self._sequence)
        task.manager = self
        self.tasks.append(task)

    def next_task(self):
        if not self.tasks:
            return None
        return min(self.tasks)

    def step(self):
        """
        Execute the next due task.

        :returns: the task executed, None when nothing is left
        """
        task = self.next_task()
        if task is None:
            return None
        self.tasks.remove(task)
        self.clock = max(self.clock, task.next_execution)
        try:
            task.execute(self.clock)
        except Exception as error:
            self._log.error(
                "Task {} failed at t={:.1f} : {}".format(task.name, self.clock, error)
            )
            self.enable = False
            raise
        if task.delay > 0 and not task.exhausted:
            task.next_execution = task.previous_execution + task.delay
            self.schedule_task(task)
        self._log.debug("Task {} executed. {}".format(task.name, task))
        return task

    def process(self, until=None):
        """
        Run tasks until none is left, the manager is stopped or the clock
        passes `until`.
        """
        self.enable = True
        while self.enable and self.tasks:
            upcoming = self.next_task()
            if until is not None and upcoming.next_execution > until:
                break
            self.step()
        self.enable = False
        return self.clock

    def stopAllTasks(self):
        self._log.info("Stopping all tasks")
        self.enable = False
        self.clean_tasklist()
        return True

    def clean_tasklist(self):
        self._log.debug("Cleaning tasks list")
        self.tasks = []

    def number_of_tasks(self):
        return len(self.tasks)

    def __repr__(self):
        return "TaskManager (t={:.1f} | {} tasks)".format(self.clock, len(self.tasks))


@note_and_log
class Task(object):
    """
    delay = 0 -> one shot. count limits the number of executions
    (None : no limit).
    """

    def __init__(self, fn=None, name=None, delay=0, first_delay=0, count=None):
        if isinstance(fn, tuple):
            self.fn, self.args = fn
        else:
            self.fn = fn
            self.args = None
        self.name = name
        self.delay = float(delay) if delay > 0 else 0.0
        self.first_delay = float(first_delay)
        self.max_count = count
        self.previous_execution = None
        self.next_execution = None
        self.count = 0
        self.sequence = None
        self.manager = None
        # wall clock seconds, not simulated time
        self.execution_time = 0.0
        self.total_execution_time = 0.0

    @property
    def exhausted(self):
        return self.max_count is not None and self.count >= self.max_count

    def task(self):
        raise NotImplementedError("Must be implemented")

    def execute(self, now):
        self.count += 1
        self.previous_execution = now
        self._log.debug("Executing : {} (#{} at t={:.1f})".format(self.name, self.count, now))
        _start_time = time.perf_counter()
        try:
            if self.fn and self.args is not None:
                self.fn(self.args)
            elif self.fn:
                self.fn()
            else:
                self.task()
        finally:
            self.execution_time = time.perf_counter() - _start_time
            self.total_execution_time += self.execution_time

    @property
    def average_execution_time(self):
        return self.total_execution_time / self.count if self.count else 0.0

    def start(self, manager):
        manager.schedule_task(self)
        return self

    def stop(self):
        self.delay = 0

    def __repr__(self):
        return "{:<20} | executed {} time(s) | last t={} | next t={} | avg {:.3f} s".format(
            self.name,
            self.count,
            self.previous_execution,
            self.next_execution,
            self.average_execution_time,
        )

    def __lt__(self, other):
        return (self.next_execution, self.sequence) < (
            other.next_execution,
            other.sequence,
        )


@note_and_log
class OneShotTask(Task):
    def __init__(self, fn=None, name="Oneshot", first_delay=0):
        super().__init__(fn=fn, name=name, delay=0, first_delay=first_delay, count=1)
