#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Attack.py - label flipping

A malicious UE relabels (part of) its samples of a source class as a
target class. Features are never touched.
"""

# --- standard Python modules ---
from dataclasses import dataclass

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import InvalidAttackError
from .Partition import LocalData

# ------------------------------------------------------------------------------


@dataclass(frozen=True)
class AttackSpec:
    source_label: int
    target_label: int
    flip_fraction: float = 1.0

    def __post_init__(self):
        if self.source_label == self.target_label:
            raise InvalidAttackError(
                "Source and target labels must differ (both {})".format(
                    self.source_label
                )
            )
        if not 0.0 <= self.flip_fraction <= 1.0:
            raise InvalidAttackError(
                "flip_fraction must be in [0, 1] (got {})".format(self.flip_fraction)
            )

    @classmethod
    def from_config(cls, attack_config):
        return cls(
            source_label=attack_config.source_label,
            target_label=attack_config.target_label,
            flip_fraction=attack_config.flip_fraction,
        )

    def __str__(self):
        return "({},{})".format(self.source_label, self.target_label)


def flip_labels(labels, attack, rng):
    """
    :returns: a new label array, floor(flip_fraction * n_source) of the
        source-label entries (chosen from the stream) set to the target label
    """
    labels = np.array(labels, dtype=np.int64, copy=True)
    candidates = np.flatnonzero(labels == attack.source_label)
    count = int(np.floor(attack.flip_fraction * candidates.size))
    if count == 0:
        return labels
    if count < candidates.size:
        candidates = np.sort(rng.choice(candidates, size=count, replace=False))
    labels[candidates] = attack.target_label
    return labels


def apply_label_flip(local_data, attack, rng):
    """
    Poisoned copy of a UE's local data. `true_labels` keep the originals.
    """
    return LocalData(
        ue_id=local_data.ue_id,
        samples=local_data.samples,
        labels=flip_labels(local_data.true_labels, attack, rng),
        true_labels=local_data.true_labels,
        num_classes=local_data.num_classes,
    )


def choose_malicious(num_ues, count, rng):
    """
    `count` distinct UE ids drawn uniformly, sorted.
    """
    if count <= 0:
        return ()
    return tuple(int(u) for u in np.sort(rng.choice(num_ues, size=count, replace=False)))
