#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Channel and latency model
"""

import math

import numpy as np
import pytest

from FEELsim.core.functions.Channel import (
    draw_channel,
    rate,
    training_time,
    min_bandwidth_fraction,
)
from FEELsim.core.utils.rng import derive_stream

B = 1e6
# g_sq P / (B N0) = 1
UNIT_SNR = {"B": B, "g_sq": 1.0, "P": 1.0, "N0": 1e-6}


class UnitFading:
    def exponential(self, scale=1.0, size=None):
        return 1.0


def test_unit_distance_gain():
    channel = draw_channel([1.0], 3, [UnitFading()])
    assert channel.g_sq[0] == 1.0


def test_pathloss_gain():
    channel = draw_channel([100.0], 3, [UnitFading()])
    assert channel.g_sq[0] == pytest.approx(1e-6, rel=1e-12)


def test_fading_reproducible():
    def draw():
        streams = [derive_stream(4, "fading", 2, k) for k in range(5)]
        return draw_channel(np.linspace(10, 300, 5), 3.76, streams).g_sq

    assert np.array_equal(draw(), draw())


def test_rate_examples():
    assert rate(1.0, **UNIT_SNR) == pytest.approx(1e6, abs=1)
    assert rate(0.0, **UNIT_SNR) == 0.0
    assert rate(0.5, **UNIT_SNR) == pytest.approx(0.5e6 * math.log2(3), abs=1)
    assert rate(0.5, **UNIT_SNR) == pytest.approx(792481, abs=1)


def test_rate_increasing_and_concave():
    alphas = np.linspace(1e-3, 1.0, 1000)
    values = rate(alphas, B, 1e-9, 5e-6, 4e-21)
    assert np.all(np.diff(values) > 0)
    assert np.all(np.diff(values, 2) <= 1e-6 * values.max())


def test_training_time():
    assert training_time(5, 1000, 1e6, 1e9) == pytest.approx(5.0)
    assert training_time(1, 0, 1e6, 1e9) == 0.0
    assert training_time(5, 1000, 1e6, 2e9) == pytest.approx(2.5)


def test_no_upload_budget_is_infeasible():
    entry = min_bandwidth_fraction(300.0, 300.0, 8e5, **UNIT_SNR)
    assert math.isnan(entry.min_alpha)


def test_full_band_exactly_enough():
    # B N0 = 1 exactly, so rate(1) = 2**20 exactly
    band = 2.0 ** 20
    entry = min_bandwidth_fraction(0.0, 10.0, 10 * band, band, 1.0, 1.0, 2.0 ** -20)
    assert entry.min_alpha == 1.0


def test_full_band_not_enough():
    entry = min_bandwidth_fraction(0.0, 10.0, 1e8, **UNIT_SNR)
    assert math.isnan(entry.min_alpha)


def test_bisection_meets_required_rate():
    entry = min_bandwidth_fraction(290.0, 300.0, 8e5, **UNIT_SNR)
    achieved = rate(entry.min_alpha, **UNIT_SNR)
    assert 0 <= achieved - 8e4 <= 1
    assert entry.training_time + entry.upload_time <= 300.0 + 1e-6


def test_round_trip_on_fuzzed_ues():
    rng = np.random.default_rng(0)
    T, s = 300.0, 8e5
    checked = 0
    for _ in range(1000):
        t_train = rng.uniform(0, 320)
        distance = rng.uniform(1, 400)
        g_sq = distance ** -3.76 * rng.exponential(1.0)
        entry = min_bandwidth_fraction(t_train, T, s, B, g_sq, 5e-6, 4e-21)
        if math.isnan(entry.min_alpha):
            continue
        checked += 1
        assert 0 < entry.min_alpha <= 1
        assert rate(entry.min_alpha, B, g_sq, 5e-6, 4e-21) * (T - t_train) >= s - 1
        assert t_train + entry.upload_time <= T + 1e-6
    assert checked > 0
