#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import Base
from . import Simulator
