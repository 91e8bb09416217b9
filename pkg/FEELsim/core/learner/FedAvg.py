#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
FedAvg.py - global model as the data-weighted average of the local models

    g = sum_k |D_k| / D_t  Omega_k,   D_t = sum_k |D_k|
"""

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import EmptyAggregationError
from .MLP import ModelParams

# ------------------------------------------------------------------------------


def fedavg(updates):
    """
    :param updates: list of (ue_id, ModelParams, dataset_size), or of
        (ModelParams, dataset_size) already in UE id order
    :returns: ModelParams
    """
    if not updates:
        raise EmptyAggregationError("No local model to aggregate")
    if len(updates[0]) == 3:
        updates = [(p, size) for _, p, size in sorted(updates, key=lambda u: u[0])]
    dims = updates[0][0].dims
    for params, _ in updates:
        if params.dims != dims:
            raise ValueError("Inconsistent model dimensions {} / {}".format(dims, params.dims))
    total = float(sum(size for _, size in updates))
    if total <= 0:
        raise EmptyAggregationError("Aggregated models hold no data")

    averaged = []
    for name in ModelParams.FIELDS:
        acc = np.zeros_like(getattr(updates[0][0], name))
        for params, size in updates:
            acc += (size / total) * getattr(params, name)
        averaged.append(acc)
    return ModelParams(*averaged)
