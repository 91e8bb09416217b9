#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
metrics.py - round records as pandas tables, CSV / JSON persistence and
multi-run aggregation.

A run directory holds ::

    ue_rounds.csv       round,ue_id,selected,alpha,R,I,V,acc_local,acc_test
    global_rounds.csv   round,global_acc,recall_0..recall_C-1,objective,skipped,
                        start_time,round_time,deadline_met,num_selected,
                        malicious_selected
    summary.json
"""

# --- standard Python modules ---
import json
import math
import os

# --- 3rd party modules ---
import numpy as np
import pandas as pd

# --- this application's modules ---
from ..core.io.IOExceptions import SchemaMismatchError

# ------------------------------------------------------------------------------

UE_FILE = "ue_rounds.csv"
GLOBAL_FILE = "global_rounds.csv"
SUMMARY_FILE = "summary.json"
AGGREGATE_FILE = "aggregate.csv"
UE_COLUMNS = ["round", "ue_id", "selected", "alpha", "R", "I", "V", "acc_local", "acc_test"]
FLOAT_FORMAT = "%.17g"
LAST_ROUNDS = 3


def _json_number(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


class MetricsMixin(object):
    """
    Tables and files built from self.records. Needs self.config, self.seed,
    self.malicious_ids and self.quality.
    """

    def ue_frame(self):
        rows = []
        for record in self.records:
            chosen = set(record.selected)
            for k in range(len(record.R)):
                rows.append(
                    {
                        "round": record.round,
                        "ue_id": k,
                        "selected": int(k in chosen),
                        "alpha": record.alpha.get(k, 0.0),
                        "R": record.R[k],
                        "I": record.I[k],
                        "V": record.V[k],
                        "acc_local": record.acc_local.get(k, np.nan),
                        "acc_test": record.acc_test.get(k, np.nan),
                    }
                )
        return pd.DataFrame(rows, columns=UE_COLUMNS)

    def global_frame(self):
        rows = []
        for record in self.records:
            row = {"round": record.round, "global_acc": record.global_acc}
            for c, recall in enumerate(record.recall):
                row["recall_{}".format(c)] = recall
            row.update(
                {
                    "objective": record.objective,
                    "skipped": int(record.skipped),
                    "start_time": record.start_time,
                    "round_time": record.round_time,
                    "deadline_met": int(record.deadline_met),
                    "num_selected": len(record.selected),
                    "malicious_selected": " ".join(
                        str(k) for k in record.malicious_selected
                    ),
                }
            )
            rows.append(row)
        return pd.DataFrame(rows)

    def summary(self):
        executed = [r for r in self.records if not r.skipped]
        source = self.config.attack.source_label
        last = executed[-LAST_ROUNDS:]
        source_recall = (
            float(np.nanmean([r.recall[source] for r in last]))
            if last and not all(np.isnan(r.recall[source]) for r in last)
            else None
        )
        selections = sum(len(r.selected) for r in self.records)
        malicious_selections = sum(len(r.malicious_selected) for r in self.records)
        malicious = list(self.malicious_ids)
        honest = [k for k in range(len(self.quality.R)) if k not in set(malicious)]
        return {
            "seed": self.seed,
            "rounds": len(self.records),
            "selection_mode": self.config.selection_mode,
            "solver": self.config.solver,
            "omega": list(self.config.omega_for_round(len(self.records))),
            "source_label": source,
            "final_accuracy": _json_number(self.records[-1].global_acc) if self.records else None,
            "best_accuracy": _json_number(max(r.global_acc for r in self.records))
            if self.records
            else None,
            "source_recall_last_rounds": _json_number(source_recall),
            "skipped_rounds": sum(1 for r in self.records if r.skipped),
            "malicious_selection_fraction": malicious_selections / selections
            if selections
            else 0.0,
            "malicious_ids": malicious,
            "final_reputation_malicious": _json_number(np.mean(self.quality.R[malicious]))
            if malicious
            else None,
            "final_reputation_honest": _json_number(np.mean(self.quality.R[honest]))
            if honest
            else None,
        }

    def save(self, directory):
        """
        Write the run files to `directory` (created when needed).

        :returns: dict of written paths
        """
        os.makedirs(directory, exist_ok=True)
        paths = {
            "ue": os.path.join(directory, UE_FILE),
            "global": os.path.join(directory, GLOBAL_FILE),
            "summary": os.path.join(directory, SUMMARY_FILE),
        }
        self.ue_frame().to_csv(paths["ue"], index=False, float_format=FLOAT_FORMAT)
        self.global_frame().to_csv(paths["global"], index=False, float_format=FLOAT_FORMAT)
        with open(paths["summary"], "w", encoding="utf-8") as file:
            json.dump(self.summary(), file, indent=2, sort_keys=True)
        self.note("Run saved to {}".format(directory))
        return paths


def read_run(directory):
    """
    :returns: the global_rounds table of a run directory
    """
    path = os.path.join(directory, GLOBAL_FILE)
    if not os.path.isfile(path):
        raise FileNotFoundError("No {} in {}".format(GLOBAL_FILE, directory))
    return pd.read_csv(path)


def aggregate_runs(run_dirs):
    """
    Per round mean and standard deviation (population, ddof=0) of the
    global accuracy and of every class recall over several runs.

    :returns: pandas DataFrame indexed by round
    """
    if not run_dirs:
        raise SchemaMismatchError("Nothing to aggregate")
    frames = [read_run(d) for d in run_dirs]
    reference = frames[0]
    metrics = ["global_acc"] + [c for c in reference.columns if c.startswith("recall_")]
    for directory, frame in zip(run_dirs, frames):
        if list(frame.columns) != list(reference.columns):
            raise SchemaMismatchError(
                "Columns of {} differ from {}".format(directory, run_dirs[0])
            )
        if list(frame["round"]) != list(reference["round"]):
            raise SchemaMismatchError(
                "Rounds of {} ({}) differ from {} ({})".format(
                    directory, len(frame), run_dirs[0], len(reference)
                )
            )

    stacked = pd.concat(
        [f.set_index("round")[metrics] for f in frames], keys=range(len(frames))
    )
    grouped = stacked.groupby(level="round")
    result = pd.DataFrame(index=reference["round"].rename("round"))
    for metric in metrics:
        result["{}_mean".format(metric)] = grouped[metric].mean()
        result["{}_std".format(metric)] = grouped[metric].std(ddof=0)
    result["runs"] = len(frames)
    return result


def save_aggregate(run_dirs, path):
    aggregated = aggregate_runs(run_dirs)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    aggregated.to_csv(path, float_format=FLOAT_FORMAT)
    return aggregated
