#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Dataset.py - in-memory labelled datasets

A Dataset is immutable once built : feature matrix (float64, one row per
sample) and integer labels. Subsets are new Dataset objects, never views
that could be written through.
"""

# --- standard Python modules ---
from dataclasses import dataclass

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import EmptyDatasetError

# ------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Dataset:
    samples: np.ndarray
    labels: np.ndarray
    num_classes: int = 10
    source: str = "synthetic"

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if samples.ndim != 2:
            raise ValueError("samples must be a 2-D matrix (got {})".format(samples.shape))
        if samples.shape[0] != labels.shape[0]:
            raise ValueError(
                "samples count ({}) differs from labels count ({})".format(
                    samples.shape[0], labels.shape[0]
                )
            )
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise ValueError(
                "labels must be in [0, {})".format(self.num_classes)
            )
        samples.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return int(self.labels.shape[0])

    @property
    def dim(self):
        return int(self.samples.shape[1])

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.samples[indices],
            self.labels[indices],
            num_classes=self.num_classes,
            source=self.source,
        )

    def label_counts(self):
        return np.bincount(self.labels, minlength=self.num_classes)

    def __repr__(self):
        return "Dataset({} | {} samples | dim {} | {} classes)".format(
            self.source, len(self), self.dim, self.num_classes
        )


def label_counts(labels, num_classes):
    return np.bincount(np.asarray(labels, dtype=np.int64), minlength=num_classes)


def generate_synthetic(num_classes, per_class, dim, rng, separation=4.0):
    """
    Gaussian class clusters. Class means are drawn N(0, separation²) per
    coordinate, samples add unit variance noise around them.

    :returns: Dataset with num_classes * per_class samples, labels balanced
    """
    if num_classes < 1 or per_class < 1 or dim < 1:
        raise EmptyDatasetError("Synthetic dataset sizes must be positive")
    means = rng.normal(0.0, separation, size=(num_classes, dim))
    labels = np.repeat(np.arange(num_classes), per_class)
    samples = means[labels] + rng.normal(0.0, 1.0, size=(labels.size, dim))
    return Dataset(samples, labels, num_classes=num_classes, source="synthetic")


def subsample(dataset, size, rng):
    """
    Uniform subsample without replacement (order of the original kept).
    """
    if size is None or size >= len(dataset):
        return dataset
    chosen = np.sort(rng.choice(len(dataset), size=size, replace=False))
    return dataset.subset(chosen)


def split_test(dataset, fraction, rng):
    """
    Stratified split into (train, server test).

    The test set gets round(fraction * n) samples. Each class gets the floor
    of its proportional share, the remaining samples go to the classes with
    the largest fractional parts (lowest class id on ties), so every class
    is within one sample of its exact proportion.
    """
    if not 0 < fraction < 1:
        raise ValueError("fraction must be in (0, 1) (got {})".format(fraction))
    counts = dataset.label_counts()
    quota = counts * fraction
    per_class = np.floor(quota).astype(np.int64)
    missing = int(round(fraction * len(dataset))) - int(per_class.sum())
    if missing > 0:
        order = sorted(range(len(counts)), key=lambda c: (-(quota[c] - per_class[c]), c))
        for c in order[:missing]:
            per_class[c] += 1

    test_indices = []
    train_indices = []
    for c in range(dataset.num_classes):
        members = np.flatnonzero(dataset.labels == c)
        members = rng.permutation(members)
        test_indices.append(members[: per_class[c]])
        train_indices.append(members[per_class[c] :])
    test_indices = np.sort(np.concatenate(test_indices))
    train_indices = np.sort(np.concatenate(train_indices))
    return dataset.subset(train_indices), dataset.subset(test_indices)
