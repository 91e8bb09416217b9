#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Channel.py - wireless channel and latency model

Uplink OFDMA : UE k gets a fraction alpha_k of the bandwidth B.

    rate        r_k = alpha_k B log2(1 + g_k P_k / (alpha_k B N0))
    training    t_train = epochs |D_k| zeta_k / f_k
    upload      t_up = s / r_k
    deadline    t_train + t_up <= T

|g_k|² = d_k^-exponent |h_k|², |h_k|² exponential with unit mean (Rayleigh
amplitude), redrawn every round for every UE.
"""

# --- standard Python modules ---
from dataclasses import dataclass
from collections import namedtuple

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..utils.rng import derive_stream

# ------------------------------------------------------------------------------

BISECTION_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    g_sq: np.ndarray
    distance: np.ndarray
    h_sq: np.ndarray
    pathloss_exponent: float


@dataclass(frozen=True, eq=False)
class FeasibilityReport:
    """
    min_alpha and upload_time_at_min_alpha are NaN for infeasible UEs.
    """

    training_time: np.ndarray
    min_alpha: np.ndarray
    upload_time_at_min_alpha: np.ndarray

    @property
    def feasible(self):
        return ~np.isnan(self.min_alpha)

    def __len__(self):
        return int(self.min_alpha.shape[0])


FeasibilityEntry = namedtuple(
    "FeasibilityEntry", ["training_time", "min_alpha", "upload_time"]
)


def draw_fading(rng):
    """
    One |h|² draw : exponential, unit mean.
    """
    return float(rng.exponential(1.0))


def draw_channel(distances, pathloss_exponent, streams):
    """
    :param distances: UE to base station distances (m)
    :param streams: one RngStream per UE for this round
    """
    distances = np.asarray(distances, dtype=np.float64)
    h_sq = np.array([draw_fading(stream) for stream in streams], dtype=np.float64)
    g_sq = distances ** (-pathloss_exponent) * h_sq
    return ChannelRealization(
        g_sq=g_sq, distance=distances, h_sq=h_sq, pathloss_exponent=pathloss_exponent
    )


def rate(alpha, B, g_sq, P, N0):
    """
    Achievable rate (bits/s). rate(0) is 0, the limit as alpha -> 0.
    Works on scalars and arrays.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        bandwidth = alpha * B
        value = bandwidth * np.log2(1.0 + g_sq * P / (bandwidth * N0))
    value = np.where(alpha > 0, value, 0.0)
    if value.ndim == 0:
        return float(value)
    return value


def training_time(epochs, dataset_size, zeta, f):
    """
    Local computation time (s) of `epochs` passes over `dataset_size` units.
    """
    return epochs * dataset_size * zeta / f


def upload_time(alpha, s, B, g_sq, P, N0):
    achieved = rate(alpha, B, g_sq, P, N0)
    if achieved <= 0:
        return float("inf")
    return s / achieved


def min_bandwidth_fraction(
    t_train, T, s, B, g_sq, P, N0, tolerance=BISECTION_TOLERANCE
):
    """
    Smallest alpha meeting the deadline.

    The rate is strictly increasing in alpha, so the required rate
    s / (T - t_train) is matched by bisection on (0, 1]. The upper end of
    the final bracket is returned, it always meets the deadline.

    :returns: FeasibilityEntry, min_alpha NaN when the UE can't make it
    """
    nan = float("nan")
    budget = T - t_train
    if budget <= 0:
        return FeasibilityEntry(t_train, nan, nan)
    required = s / budget
    full = rate(1.0, B, g_sq, P, N0)
    if full < required:
        return FeasibilityEntry(t_train, nan, nan)
    if full == required:
        return FeasibilityEntry(t_train, 1.0, budget)

    low, high = 0.0, 1.0
    while high - low > tolerance:
        middle = 0.5 * (low + high)
        if rate(middle, B, g_sq, P, N0) >= required:
            high = middle
        else:
            low = middle
    return FeasibilityEntry(t_train, high, s / rate(high, B, g_sq, P, N0))


def feasibility_report(training_times, g_sq, config, transmit_powers):
    """
    min_bandwidth_fraction for every UE of a round.
    """
    entries = [
        min_bandwidth_fraction(
            t_train,
            config.deadline_T,
            config.model_size_s,
            config.bandwidth_B,
            gain,
            power,
            config.noise_psd_N0,
        )
        for t_train, gain, power in zip(training_times, g_sq, transmit_powers)
    ]
    return FeasibilityReport(
        training_time=np.array([e.training_time for e in entries], dtype=np.float64),
        min_alpha=np.array([e.min_alpha for e in entries], dtype=np.float64),
        upload_time_at_min_alpha=np.array(
            [e.upload_time for e in entries], dtype=np.float64
        ),
    )


class Channel:
    """
    Channel services of the simulator (mixin). Needs self.config,
    self.ues and self.seed.
    """

    def draw_round_channel(self, round):
        streams = [
            derive_stream(self.seed, "fading", round, ue.id) for ue in self.ues
        ]
        return draw_channel(
            [ue.distance for ue in self.ues],
            self.config.topology.pathloss_exponent,
            streams,
        )

    def training_times(self):
        return np.array(
            [
                training_time(
                    self.config.local_epochs,
                    ue.workload_units,
                    ue.cycles_per_sample_zeta,
                    ue.cpu_frequency_f,
                )
                for ue in self.ues
            ],
            dtype=np.float64,
        )

    def round_feasibility(self, channel):
        return feasibility_report(
            self.training_times(),
            channel.g_sq,
            self.config,
            [ue.transmit_power_P for ue in self.ues],
        )

    def achieved_round_time(self, ue_id, alpha, channel):
        """
        t_train + t_up of one UE at the bandwidth it was given.
        """
        ue = self.ues[ue_id]
        t_train = training_time(
            self.config.local_epochs,
            ue.workload_units,
            ue.cycles_per_sample_zeta,
            ue.cpu_frequency_f,
        )
        return t_train + upload_time(
            alpha,
            self.config.model_size_s,
            self.config.bandwidth_B,
            channel.g_sq[ue_id],
            ue.transmit_power_P,
            self.config.noise_psd_N0,
        )
