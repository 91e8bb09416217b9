#!/usr/bin/python
# -*- coding: utf-8 -*-
from . import UE
