#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
infos.py - FEELsim Package MetaData
"""

__author__ = "FEELsim contributors"
__email__ = "feelsim@users.noreply.github.com"
__url__ = "https://github.com/feelsim/FEELsim"
__download_url__ = "https://github.com/feelsim/FEELsim/archive/master.zip"
__version__ = "22.04.01"
__license__ = "LGPLv3"
