#!/usr/bin/python
# -*- coding: utf-8 -*-
import sys

from .scripts.cli import main

sys.exit(main())
