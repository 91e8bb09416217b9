#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Partition.py - non-IID split of the training pool across UEs

The pool is sorted by label and cut into label-pure groups of
`group_size` samples (incomplete groups at the end of a label are dropped).
Each UE draws how many groups it wants, groups are dealt without
replacement in a random order. UEs end up with unbalanced datasets
covering only a few digits.
"""

# --- standard Python modules ---
from dataclasses import dataclass

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import InsufficientDataError
from .Dataset import label_counts

# ------------------------------------------------------------------------------


@dataclass(eq=False)
class Partition:
    """
    indices[k] : sample indices of UE k in the training pool
    groups[k] : ids of the groups dealt to UE k
    participation_count[k] : rounds UE k has trained (age)
    """

    indices: tuple
    groups: tuple
    group_labels: np.ndarray
    participation_count: np.ndarray

    @property
    def num_ues(self):
        return len(self.indices)

    def sizes(self):
        return np.array([len(i) for i in self.indices], dtype=np.int64)

    def record_participation(self, ue_ids):
        for ue_id in ue_ids:
            self.participation_count[ue_id] += 1


@dataclass(frozen=True, eq=False)
class LocalData:
    """
    What a UE trains on. `labels` are the labels the UE uses and reports
    (flipped for an attacker), `true_labels` stay untouched for the server.
    """

    ue_id: int
    samples: np.ndarray
    labels: np.ndarray
    true_labels: np.ndarray
    num_classes: int = 10

    def __len__(self):
        return int(self.labels.shape[0])

    def label_counts(self):
        return label_counts(self.labels, self.num_classes)

    @property
    def poisoned(self):
        return bool(np.any(self.labels != self.true_labels))


def make_groups(labels, group_size):
    """
    Cut every label into consecutive groups of `group_size`. The remainder of
    each label is dropped, so the count is the sum of floor(count / size) and
    not len(labels) // size : the 60000 MNIST training images give 1195
    groups of 50, not 1200.

    :returns: (list of index arrays, array of the label of each group)
    """
    labels = np.asarray(labels)
    order = np.argsort(labels, kind="stable")
    groups = []
    group_labels = []
    for label in np.unique(labels):
        members = order[labels[order] == label]
        for start in range(0, len(members) - group_size + 1, group_size):
            groups.append(members[start : start + group_size])
            group_labels.append(int(label))
    return groups, np.array(group_labels, dtype=np.int64)


def _fit_demand(counts, supply, min_groups):
    total = int(counts.sum())
    if total <= supply:
        return counts
    counts = np.maximum(min_groups, np.floor(counts * supply / total)).astype(np.int64)
    while counts.sum() > supply:
        # lowest id first among the largest requests
        candidates = np.flatnonzero(counts == counts.max())
        if counts[candidates[0]] <= min_groups:
            break
        counts[candidates[0]] -= 1
    return counts


def partition_sorted_groups(dataset, num_ues, group_size, min_groups, max_groups, rng):
    """
    Deal label-pure groups to UEs.

    Every UE draws a group count uniformly in [min_groups, max_groups]. When
    the demand exceeds the number of groups, counts are scaled down
    proportionally (floor, at least min_groups).
    """
    groups, group_labels = make_groups(dataset.labels, group_size)
    supply = len(groups)
    if supply < num_ues * min_groups:
        raise InsufficientDataError(
            "{} groups of {} samples can't give {} UEs at least {} group(s) each".format(
                supply, group_size, num_ues, min_groups
            )
        )
    counts = rng.integers(min_groups, max_groups, size=num_ues, endpoint=True)
    counts = _fit_demand(np.asarray(counts, dtype=np.int64), supply, min_groups)

    dealt = rng.permutation(supply)
    indices = []
    owned = []
    position = 0
    for count in counts:
        mine = dealt[position : position + count]
        position += count
        owned.append(tuple(int(g) for g in mine))
        indices.append(np.sort(np.concatenate([groups[g] for g in mine])))
    return Partition(
        indices=tuple(indices),
        groups=tuple(owned),
        group_labels=group_labels,
        participation_count=np.zeros(num_ues, dtype=np.int64),
    )
