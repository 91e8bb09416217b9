#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import io
from . import utils
from . import data
from . import devices
from . import functions
from . import learner
