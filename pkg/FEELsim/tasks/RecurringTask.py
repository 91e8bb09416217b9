#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
RecurringTask.py - execute a task every `delay` simulated seconds
"""

from .TaskManager import Task
from ..core.utils.notes import note_and_log


@note_and_log
class RecurringTask(Task):
    """
    Start a recurring task (a function passed)
    """

    def __init__(self, fnc, delay=60, name="recurring", count=None, first_delay=0):
        """
        :param fnc: a function or a tuple (function, args), called with the
            execution number (1, 2, ...) when no args are given
        :param delay: simulated seconds between executions
        :param count: number of executions (None : until stopped)
        """
        self.fnc_args = None
        if isinstance(fnc, tuple):
            self.func, self.fnc_args = fnc
        elif hasattr(fnc, "__call__"):
            self.func = fnc
        else:
            raise ValueError("You must pass a function or a tuple (function,args) to this...")
        if delay <= 0:
            raise ValueError("A recurring task needs a delay > 0")
        Task.__init__(self, name=name, delay=delay, first_delay=first_delay, count=count)

    def task(self):
        if self.fnc_args:
            self.func(self.fnc_args)
        else:
            self.func(self.count)
