#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Run files and multi-run aggregation
"""

import json
import os

import numpy as np
import pandas as pd
import pytest

from FEELsim.core.io.IOExceptions import SchemaMismatchError
from FEELsim.db.metrics import (
    GLOBAL_FILE,
    UE_COLUMNS,
    aggregate_runs,
    read_run,
    save_aggregate,
)

SUMMARY_KEYS = {
    "seed",
    "rounds",
    "selection_mode",
    "solver",
    "omega",
    "source_label",
    "final_accuracy",
    "best_accuracy",
    "source_recall_last_rounds",
    "skipped_rounds",
    "malicious_selection_fraction",
    "malicious_ids",
    "final_reputation_malicious",
    "final_reputation_honest",
}


def fake_run(directory, accuracies, recall_columns=2):
    os.makedirs(directory, exist_ok=True)
    frame = pd.DataFrame({"round": range(1, len(accuracies) + 1), "global_acc": accuracies})
    for c in range(recall_columns):
        frame["recall_{}".format(c)] = accuracies
    frame.to_csv(os.path.join(directory, GLOBAL_FILE), index=False)
    return str(directory)


def test_files_written(feel_run):
    for path in feel_run.paths.values():
        assert os.path.isfile(path)
    ue = pd.read_csv(feel_run.paths["ue"])
    assert list(ue.columns) == UE_COLUMNS
    num_ues = feel_run.config.topology.num_ues
    assert len(ue) == num_ues * len(feel_run.records)
    assert ue.loc[ue.selected == 0, "alpha"].eq(0).all()
    assert ue.loc[ue.selected == 0, "acc_local"].isna().all()


def test_global_table(feel_run):
    table = read_run(feel_run.out)
    assert list(table["round"]) == [r.round for r in feel_run.records]
    assert ["recall_{}".format(c) for c in range(10)] == [
        c for c in table.columns if c.startswith("recall_")
    ]
    assert table["global_acc"].tolist() == pytest.approx([r.global_acc for r in feel_run.records])
    assert list(table["num_selected"]) == [len(r.selected) for r in feel_run.records]


def test_summary(feel_run):
    with open(feel_run.paths["summary"], encoding="utf-8") as file:
        summary = json.load(file)
    assert set(summary) == SUMMARY_KEYS
    assert summary["rounds"] == len(feel_run.records)
    assert summary["seed"] == feel_run.config.seed
    assert summary["final_accuracy"] == pytest.approx(feel_run.records[-1].global_acc)
    assert summary["best_accuracy"] >= summary["final_accuracy"]
    assert 0 <= summary["malicious_selection_fraction"] <= 1
    assert summary["malicious_ids"] == list(feel_run.simulation.malicious_ids)


def test_aggregate_identical_runs(tmp_path):
    runs = [fake_run(tmp_path / name, [0.5, 0.7, 0.8]) for name in ("a", "b", "c")]
    aggregated = aggregate_runs(runs)
    assert list(aggregated.index) == [1, 2, 3]
    assert np.allclose(aggregated["global_acc_mean"], [0.5, 0.7, 0.8])
    assert np.allclose(aggregated["global_acc_std"], 0, atol=1e-12)
    assert np.allclose(aggregated["recall_1_std"], 0, atol=1e-12)
    assert np.all(aggregated["runs"] == 3)


def test_aggregate_mean_and_population_std(tmp_path):
    runs = [fake_run(tmp_path / "a", [0.8]), fake_run(tmp_path / "b", [0.9])]
    aggregated = aggregate_runs(runs)
    assert aggregated["global_acc_mean"].iloc[0] == pytest.approx(0.85)
    assert aggregated["global_acc_std"].iloc[0] == pytest.approx(0.05)


def test_save_aggregate(tmp_path):
    runs = [fake_run(tmp_path / "a", [0.8, 0.9]), fake_run(tmp_path / "b", [0.6, 0.7])]
    path = str(tmp_path / "out" / "aggregate.csv")
    save_aggregate(runs, path)
    saved = pd.read_csv(path, index_col="round")
    assert saved["global_acc_mean"].tolist() == pytest.approx([0.7, 0.8])


def test_aggregate_mismatches(tmp_path):
    short = fake_run(tmp_path / "short", [0.5, 0.6])
    long = fake_run(tmp_path / "long", [0.5, 0.6, 0.7])
    other = fake_run(tmp_path / "other", [0.5, 0.6], recall_columns=3)
    with pytest.raises(SchemaMismatchError):
        aggregate_runs([short, long])
    with pytest.raises(SchemaMismatchError):
        aggregate_runs([short, other])
    with pytest.raises(SchemaMismatchError):
        aggregate_runs([])
    with pytest.raises(FileNotFoundError):
        aggregate_runs([short, str(tmp_path / "missing")])
