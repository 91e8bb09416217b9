#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Simulator - the FEEL round loop

Every round the MEC server ::

    draws the channel, computes each UE's min_alpha
    scores the UEs (I_k, V_k)
    schedules (dqs, top_k or random)
    broadcasts g, the selected UEs train locally
    tests every local model on the server test set
    aggregates with FedAvg, updates the participants' reputation and age
    evaluates the new global model

Rounds run on a simulated clock : initialization at t=0 then one round
every deadline_T seconds ::

    sim = Simulator(load_config('presets/mnist_6_2.json'))
    records = sim.run()
    sim.save('out')
"""
# --- standard Python modules ---
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
import os

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from .Base import Base
from ..core.functions.Channel import Channel
from ..core.functions.Quality import Quality
from ..core.functions.Scheduler import Scheduling
from ..core.learner.MLP import local_train, evaluate
from ..core.learner.FedAvg import fedavg
from ..core.utils.rng import derive_stream
from ..core.utils.notes import note_and_log
from ..db.metrics import MetricsMixin
from ..tasks.TaskManager import Manager
from ..tasks.DoOnce import DoOnce
from ..tasks.RecurringTask import RecurringTask

# ------------------------------------------------------------------------------

DEADLINE_TOLERANCE = 1e-6


@dataclass(eq=False)
class RoundRecord:
    round: int
    start_time: float
    selected: tuple
    alpha: dict
    objective: float
    global_acc: float
    recall: np.ndarray
    R: np.ndarray
    I: np.ndarray
    V: np.ndarray
    acc_local: dict = field(default_factory=dict)
    acc_test: dict = field(default_factory=dict)
    round_time: float = 0.0
    deadline_met: bool = True
    ue_round_time: dict = field(default_factory=dict)
    malicious_selected: tuple = ()
    skipped: bool = False
    solver: str = "greedy"

    def __repr__(self):
        if self.skipped:
            return "Round {:>3} | skipped | global acc {:.4f}".format(
                self.round, self.global_acc
            )
        return "Round {:>3} | {} UEs {} | objective {:.4f} | global acc {:.4f} | {:.1f} s".format(
            self.round,
            len(self.selected),
            list(self.selected),
            self.objective,
            self.global_acc,
            self.round_time,
        )


@note_and_log
class Simulator(Base, Channel, Quality, Scheduling, MetricsMixin):
    """
    One seeded run of the simulation.

    :param config: validated SimulationConfig
    :param seed: run seed, defaults to config.seed
    """

    def __init__(self, config, seed=None):
        Base.__init__(self, config, seed=seed)
        self.records = []
        self.manager = None

    def run(self):
        """
        Initialize then play rounds 1..rounds_max.

        :returns: list of RoundRecord
        """
        self.records = []
        self.manager = Manager()
        DoOnce(self.initialize, name="initialize").start(self.manager)
        RecurringTask(
            self.run_round,
            delay=self.config.deadline_T,
            name="round",
            count=self.config.rounds_max,
        ).start(self.manager)
        self.manager.process()
        return self.records

    @property
    def clock(self):
        return self.manager.clock if self.manager else 0.0

    def reported_accuracy(self, ue_id, acc_local):
        ue = self.ues[ue_id]
        if ue.malicious and self.config.attack.report_mode == "lying":
            return min(1.0, acc_local + self.config.attack.lie_inflation)
        return acc_local

    def train_one(self, round, ue_id):
        learner = self.config.learner
        return local_train(
            self.params,
            self.ues[ue_id].dataset,
            self.config.local_epochs,
            learner.lr,
            learner.batch_size,
            derive_stream(self.seed, "train", round, ue_id),
        )

    def train_selected(self, round, selected):
        """
        :returns: {ue_id: (ModelParams, acc_local)}, collected in id order
        """
        if self.config.workers > 1 and len(selected) > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                futures = {k: pool.submit(self.train_one, round, k) for k in selected}
                return {k: futures[k].result() for k in sorted(selected)}
        return {k: self.train_one(round, k) for k in sorted(selected)}

    def run_round(self, round):
        if not self._initialized:
            self.initialize()
        start_time = self.clock
        self.log_subtitle("Round {} (t={:.1f} s)".format(round, start_time))

        channel = self.draw_round_channel(round)
        report = self.round_feasibility(channel)
        self.score_population(round)
        I = self.quality.I.copy()
        V = self.quality.V.copy()
        decision = self.schedule_round(round, report)

        if decision.empty:
            global_acc, recall = evaluate(self.params, self.test_set)
            record = RoundRecord(
                round=round,
                start_time=start_time,
                selected=(),
                alpha={},
                objective=0.0,
                global_acc=global_acc,
                recall=recall,
                R=self.quality.R.copy(),
                I=I,
                V=V,
                skipped=True,
                solver=decision.solver,
            )
            self.note(
                "Round {} skipped : no UE can meet the deadline".format(round),
                level=logging.WARNING,
            )
            self.records.append(record)
            return record

        results = self.train_selected(round, decision.selected)
        acc_local = {k: results[k][1] for k in decision.selected}
        acc_test = {k: evaluate(results[k][0], self.test_set)[0] for k in decision.selected}
        for k in decision.selected:
            self._log.debug(
                "UE {} | alpha {:.4f} | acc local {:.4f} | acc test {:.4f}".format(
                    k, decision.alpha[k], acc_local[k], acc_test[k]
                )
            )

        self.params = fedavg(
            [(k, results[k][0], self.ues[k].dataset_size) for k in decision.selected]
        )
        self.update_reputations(
            {k: (self.reported_accuracy(k, acc_local[k]), acc_test[k]) for k in decision.selected}
        )
        self.partition.record_participation(decision.selected)
        global_acc, recall = evaluate(self.params, self.test_set)

        ue_round_time = {
            k: self.achieved_round_time(k, decision.alpha[k], channel)
            for k in decision.selected
        }
        round_time = max(ue_round_time.values())
        deadline = self.config.deadline_T + DEADLINE_TOLERANCE
        record = RoundRecord(
            round=round,
            start_time=start_time,
            selected=decision.selected,
            alpha=dict(decision.alpha),
            objective=decision.objective,
            global_acc=global_acc,
            recall=recall,
            R=self.quality.R.copy(),
            I=I,
            V=V,
            acc_local=acc_local,
            acc_test=acc_test,
            round_time=round_time,
            deadline_met=all(t <= deadline for t in ue_round_time.values()),
            ue_round_time=ue_round_time,
            malicious_selected=tuple(k for k in decision.selected if self.ues[k].malicious),
            solver=decision.solver,
        )
        if not record.deadline_met:
            self._log.debug(
                "Round {} : deadline missed ({:.1f} s > {:.1f} s)".format(
                    round, round_time, self.config.deadline_T
                )
            )
        self.note("{!r}".format(record))
        self.records.append(record)
        return record


def run_simulation(config, out=None):
    """
    Run every seed of the config. With `out`, each run is saved there
    (in seed_<n>/ sub-directories when several seeds are given).

    :returns: list of Simulator, one per seed
    """
    simulations = []
    seeds = config.run_seeds
    for seed in seeds:
        simulation = Simulator(config, seed=seed)
        simulation.run()
        if out is not None:
            directory = out if len(seeds) == 1 else os.path.join(out, "seed_{}".format(seed))
            simulation.save(directory)
        simulations.append(simulation)
    return simulations
