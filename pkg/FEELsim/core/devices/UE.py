#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
UE.py - user equipments of the cell

UEs are dropped uniformly in a square cell with the base station at the
center. Their static facts (position, power, CPU) never change during a
run, only the channel is redrawn each round.
"""

# --- standard Python modules ---
from dataclasses import dataclass

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..utils.rng import derive_stream

# ------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UEProfile:
    id: int
    position: tuple
    distance: float
    transmit_power_P: float
    cpu_frequency_f: float
    cycles_per_sample_zeta: float
    dataset: object
    malicious: bool = False
    attack: object = None
    units_per_sample: float = 1.0

    def __post_init__(self):
        if self.transmit_power_P <= 0:
            raise ValueError("UE {} : transmit power must be > 0".format(self.id))
        if self.cpu_frequency_f <= 0:
            raise ValueError("UE {} : cpu frequency must be > 0".format(self.id))

    @property
    def dataset_size(self):
        return len(self.dataset)

    @property
    def workload_units(self):
        """
        Quantity zeta applies to : samples, or bits in bits mode.
        """
        return self.dataset_size * self.units_per_sample

    def __repr__(self):
        return "UE {:>3} | {:>7.1f} m | {:>5} samples | f {:.2e} Hz{}".format(
            self.id,
            self.distance,
            self.dataset_size,
            self.cpu_frequency_f,
            " | malicious {}".format(self.attack) if self.malicious else "",
        )


def drop_positions(num_ues, cell_side, rng):
    return rng.uniform(0.0, cell_side, size=(num_ues, 2))


def distances_to_center(positions, cell_side, min_distance):
    center = np.array([cell_side / 2.0, cell_side / 2.0])
    return np.maximum(min_distance, np.linalg.norm(positions - center, axis=1))


def build_population(config, local_data, seed, malicious_ids=(), attack=None):
    """
    :param local_data: one LocalData per UE, in id order
    :returns: tuple of UEProfile
    """
    topology = config.topology
    rng = derive_stream(seed, "topology")
    positions = drop_positions(topology.num_ues, topology.cell_side, rng)
    distances = distances_to_center(
        positions, topology.cell_side, topology.min_distance
    )
    frequencies = rng.uniform(*topology.cpu_frequency, size=topology.num_ues)
    zetas = rng.uniform(*topology.zeta, size=topology.num_ues)
    units = topology.bits_per_sample if topology.zeta_unit == "bit" else 1.0
    malicious_ids = set(malicious_ids)

    return tuple(
        UEProfile(
            id=k,
            position=(float(positions[k, 0]), float(positions[k, 1])),
            distance=float(distances[k]),
            transmit_power_P=topology.transmit_power_W,
            cpu_frequency_f=float(frequencies[k]),
            cycles_per_sample_zeta=float(zetas[k]),
            dataset=local_data[k],
            malicious=k in malicious_ids,
            attack=attack if k in malicious_ids else None,
            units_per_sample=units,
        )
        for k in range(topology.num_ues)
    )
