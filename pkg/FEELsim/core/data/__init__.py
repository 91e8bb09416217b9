#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import Dataset
from . import IDX
from . import Partition
from . import Attack
