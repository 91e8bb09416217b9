#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
IOExceptions.py - FEELsim application level exceptions
"""


class FEELsimError(Exception):
    pass


class ConfigParseError(FEELsimError, ValueError):
    """
    The configuration file can't be parsed (malformed JSON or wrong structure).
    """

    pass


class ConfigValidationError(FEELsimError, ValueError):
    """
    A configuration value violates an invariant. The message names the field.
    """

    pass


class IDXFormatError(FEELsimError, ValueError):
    """
    Bad magic number, truncated file or images/labels count mismatch.
    """

    pass


class InsufficientDataError(FEELsimError):
    """
    Not enough groups to give every UE its minimum allocation.
    """

    pass


class EmptyDatasetError(FEELsimError, ValueError):
    pass


class InvalidAttackError(FEELsimError, ValueError):
    """
    Label flipping needs a source label different from the target label.
    """

    pass


class InstanceTooLargeError(FEELsimError):
    """
    Exhaustive search refused (too many UEs).
    """

    pass


class InstanceParseError(FEELsimError, ValueError):
    pass


class EmptyAggregationError(FEELsimError, ValueError):
    """
    FedAvg called without any update.
    """

    pass


class SchemaMismatchError(FEELsimError):
    """
    Run directories can't be averaged together (columns or rounds differ).
    """

    pass
