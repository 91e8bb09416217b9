#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import Channel
from . import Quality
from . import Scheduler
