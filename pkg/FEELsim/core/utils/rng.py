#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
rng.py - deterministic random streams

Every random draw of a simulation comes from a stream identified by
(seed, label, round, ue_id). Two streams with the same identity produce the
same sequence whatever the order in which modules ask for them, so a run
is reproducible bit for bit and per-UE work can be done in any order.

Labels used by the package ::

    topology, malicious, partition, split, subsample, synthetic,
    flip, init, fading, train, selection

Setup draws use round 0, global (not per UE) draws use ue_id -1.
"""

# --- standard Python modules ---
import hashlib

# --- 3rd party modules ---
import numpy as np

GLOBAL = -1


def _entropy(seed, label, round, ue_id):
    path = "{}/{}/{}/{}".format(int(seed), label, int(round), int(ue_id))
    return int.from_bytes(hashlib.sha256(path.encode("utf-8")).digest(), "big")


class RngStream:
    """
    Single owner pseudo-random stream (PCG64) derived from its identity.
    """

    def __init__(self, seed, label, round=0, ue_id=GLOBAL):
        self.seed = int(seed)
        self.label = label
        self.round = int(round)
        self.ue_id = int(ue_id)
        self._seed_sequence = np.random.SeedSequence(
            _entropy(self.seed, label, self.round, self.ue_id)
        )
        self.generator = np.random.Generator(np.random.PCG64(self._seed_sequence))

    def random(self, size=None):
        return self.generator.random(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def integers(self, low, high=None, size=None, endpoint=False):
        return self.generator.integers(low, high, size=size, endpoint=endpoint)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.generator.normal(loc, scale, size)

    def exponential(self, scale=1.0, size=None):
        return self.generator.exponential(scale, size)

    def permutation(self, x):
        return self.generator.permutation(x)

    def choice(self, a, size=None, replace=True):
        return self.generator.choice(a, size=size, replace=replace)

    def bytes(self, length):
        return self.generator.bytes(length)

    def __repr__(self):
        return "RngStream(seed={}, label={!r}, round={}, ue_id={})".format(
            self.seed, self.label, self.round, self.ue_id
        )


def derive_stream(seed, label, round=0, ue_id=GLOBAL):
    """
    :param seed: (int) run seed
    :param label: (str) purpose of the draws (ex. 'fading')
    :param round: (int) communication round, 0 for setup
    :param ue_id: (int) UE concerned, -1 for global draws

    :returns: RngStream
    """
    return RngStream(seed, label, round=round, ue_id=ue_id)
