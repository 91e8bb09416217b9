#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Round loop : timing, constraints, determinism and selection modes
"""

import numpy as np
import pytest

import FEELsim
from FEELsim.core.data.Dataset import generate_synthetic
from FEELsim.core.data.IDX import write_dataset_idx
from FEELsim.core.utils.rng import derive_stream

from conftest import SMOKE, smoke_config


def run(config, seed=None):
    simulation = FEELsim.Simulator(config, seed=seed)
    simulation.run()
    return simulation


def read_bytes(path):
    with open(path, "rb") as file:
        return file.read()


def test_one_record_per_round(feel_run):
    records = feel_run.records
    T = feel_run.config.deadline_T
    assert [r.round for r in records] == list(range(1, SMOKE["rounds_max"] + 1))
    assert [r.start_time for r in records] == [(t - 1) * T for t in range(1, len(records) + 1)]
    assert feel_run.simulation.clock == (len(records) - 1) * T


def test_bandwidth_and_deadline(feel_run):
    T = feel_run.config.deadline_T
    for record in feel_run.records:
        assert not record.skipped
        assert sum(record.alpha.values()) <= 1 + 1e-9
        assert all(0 < a <= 1 for a in record.alpha.values())
        assert set(record.alpha) == set(record.selected)
        assert list(record.selected) == sorted(record.selected)
        assert record.deadline_met
        assert all(t <= T + 1e-6 for t in record.ue_round_time.values())
        assert record.round_time == max(record.ue_round_time.values())


def test_objective_is_sum_of_values(feel_run):
    for record in feel_run.records:
        assert record.objective == pytest.approx(sum(record.V[k] for k in record.selected))


def test_age_counts_participations(feel_run):
    counts = np.zeros(feel_run.config.topology.num_ues, dtype=np.int64)
    for record in feel_run.records:
        counts[list(record.selected)] += 1
    assert np.array_equal(feel_run.simulation.partition.participation_count, counts)


def test_malicious_selected_are_attackers(feel_run):
    malicious = set(feel_run.simulation.malicious_ids)
    assert len(malicious) == SMOKE["attack"]["num_malicious"]
    for record in feel_run.records:
        assert set(record.malicious_selected) == malicious & set(record.selected)


def test_only_participants_report_accuracy(feel_run):
    for record in feel_run.records:
        assert set(record.acc_local) == set(record.selected)
        assert set(record.acc_test) == set(record.selected)


def test_runs_are_reproducible(feel_run, tmp_path):
    again = run(feel_run.config)
    paths = again.save(str(tmp_path))
    for key in ("ue", "global"):
        assert read_bytes(paths[key]) == read_bytes(feel_run.paths[key])


def test_seed_changes_the_run(feel_run):
    other = run(feel_run.config, seed=feel_run.config.seed + 1)
    first = [r.global_acc for r in feel_run.records]
    second = [r.global_acc for r in other.records]
    assert first != second or [r.selected for r in feel_run.records] != [
        r.selected for r in other.records
    ]


def test_workers_do_not_change_results(feel_run):
    threaded = run(feel_run.config.with_overrides(workers=2))
    assert [r.global_acc for r in threaded.records] == [r.global_acc for r in feel_run.records]
    assert np.array_equal(threaded.quality.R, feel_run.simulation.quality.R)


def test_unreachable_deadline_skips_every_round():
    simulation = run(smoke_config(deadline_T=0.01))
    records = simulation.records
    assert len(records) == SMOKE["rounds_max"]
    assert all(r.skipped for r in records)
    assert all(r.selected == () for r in records)
    assert len({r.global_acc for r in records}) == 1
    assert np.all(simulation.quality.R == 1.0)
    assert simulation.summary()["skipped_rounds"] == SMOKE["rounds_max"]


def test_attack_changes_diversity_of_attackers_only():
    attacked = FEELsim.Simulator(smoke_config())
    attacked.initialize()
    attacked.score_population(1)
    clean = FEELsim.Simulator(
        smoke_config(attack=dict(SMOKE["attack"], enabled=False))
    )
    clean.initialize()
    clean.score_population(1)
    honest = [k for k in range(SMOKE["topology"]["num_ues"]) if k not in attacked.malicious_ids]
    assert np.array_equal(attacked.quality.I[honest], clean.quality.I[honest])
    assert clean.malicious_ids == ()


def test_lying_attackers_inflate_reports():
    attack = dict(SMOKE["attack"], report_mode="lying", lie_inflation=0.3)
    simulation = FEELsim.Simulator(smoke_config(attack=attack))
    simulation.initialize()
    liar = simulation.malicious_ids[0]
    honest = next(k for k in range(len(simulation.ues)) if k not in simulation.malicious_ids)
    assert simulation.reported_accuracy(liar, 0.5) == pytest.approx(0.8)
    assert simulation.reported_accuracy(liar, 0.9) == 1.0
    assert simulation.reported_accuracy(honest, 0.5) == 0.5


def test_top_k_mode():
    simulation = run(smoke_config(selection_mode="top_k", top_k=4))
    for record in simulation.records:
        assert len(record.selected) == 4
        assert all(a == pytest.approx(0.25) for a in record.alpha.values())
        best = sorted(range(len(record.V)), key=lambda k: (-record.V[k], k))[:4]
        assert record.selected == tuple(sorted(best))


def test_random_mode_is_seeded():
    config = smoke_config(selection_mode="random", top_k=3, rounds_max=3)
    first = [r.selected for r in run(config).records]
    second = [r.selected for r in run(config).records]
    assert first == second
    assert all(len(s) == 3 for s in first)


def test_exact_solver_runs():
    simulation = run(smoke_config(solver="exact", rounds_max=2))
    assert all(r.solver == "exact" for r in simulation.records)


def test_idx_source(tmp_path):
    dataset = generate_synthetic(10, 30, 8, derive_stream(0, "synthetic"))
    write_dataset_idx(dataset, str(tmp_path))
    data = dict(SMOKE["data"], source="idx", data_dir=str(tmp_path))
    simulation = run(smoke_config(data=data, rounds_max=2))
    assert simulation.train_pool.source == "idx"
    assert simulation.train_pool.dim == 8
    assert len(simulation.train_pool) + len(simulation.test_set) == 300
    assert len(simulation.records) == 2


def test_multi_seed_runs_are_saved_apart(tmp_path):
    config = smoke_config(seeds=[1, 2], rounds_max=2)
    simulations = FEELsim.run_simulation(config, out=str(tmp_path))
    assert [s.seed for s in simulations] == [1, 2]
    assert (tmp_path / "seed_1" / "summary.json").is_file()
    assert (tmp_path / "seed_2" / "global_rounds.csv").is_file()


def test_mnist_preset_meets_bandwidth_and_deadline(tmp_path):
    import os
    from dataclasses import replace

    dataset = generate_synthetic(10, 400, 784, derive_stream(0, "synthetic"))
    write_dataset_idx(dataset, str(tmp_path), image_shape=(28, 28))
    preset = os.path.join(os.path.dirname(__file__), "..", "presets", "mnist_6_2.json")
    config = FEELsim.load_config(preset)
    config = config.with_overrides(data=replace(config.data, data_dir=str(tmp_path)))
    assert config.rounds_max == 15

    simulation = run(config)
    assert simulation.train_pool.dim == 784
    assert len(simulation.records) == 15
    for record in simulation.records:
        assert sum(record.alpha.values()) <= 1 + 1e-9
        assert all(t <= 300 + 1e-6 for t in record.ue_round_time.values())
        assert record.deadline_met
