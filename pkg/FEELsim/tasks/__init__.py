#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import TaskManager
from . import RecurringTask
from . import DoOnce
