#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Scheduler.py - joint UE selection and bandwidth allocation

    maximize    sum_k x_k V_k
    subject to  (t_train_k + t_up_k) x_k <= T     for all k
                sum_k alpha_k <= 1
                0 <= alpha_k <= 1,  x_k in {0, 1}

Giving every candidate its minimum feasible fraction min_alpha_k turns the
selection into a 0/1 knapsack (value V_k, weight min_alpha_k, capacity 1).

greedy_schedule is a density greedy with the classic best-single-item
fallback, so its objective is at least half the optimum. This heuristic is
our own : the procedure the scheduling step was designed around is not
published with the system model.
exact_schedule enumerates every subset and is used as a reference on small
instances (K <= 20).

Selection is done at min_alpha, the leftover bandwidth is then shared
among the selected UEs in proportion to their min_alpha.
"""

# --- standard Python modules ---
from dataclasses import dataclass, field
import math

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import InstanceTooLargeError, InstanceParseError
from ..utils.rng import derive_stream

# ------------------------------------------------------------------------------

EXACT_MAX_UES = 20
CAPACITY = 1.0
# absorbs summation order differences between solvers
CAPACITY_SLACK = 1e-12
_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class SchedulingInstance:
    values: np.ndarray
    min_alpha: np.ndarray
    min_selected_N: int = 0
    ids: tuple = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        min_alpha = np.asarray(self.min_alpha, dtype=np.float64)
        if values.shape != min_alpha.shape:
            raise ValueError("values and min_alpha must have the same length")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        # out of (0, 1] means the UE can't make the deadline
        min_alpha = np.where((min_alpha > 0) & (min_alpha <= 1), min_alpha, np.nan)
        ids = tuple(range(len(values))) if self.ids is None else tuple(self.ids)
        if len(ids) != len(values):
            raise ValueError("ids and values must have the same length")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "min_alpha", min_alpha)
        object.__setattr__(self, "ids", ids)

    def __len__(self):
        return len(self.ids)

    def feasible_positions(self):
        return [i for i in range(len(self)) if not math.isnan(self.min_alpha[i])]


@dataclass(frozen=True)
class ScheduleDecision:
    selected: tuple = ()
    alpha: dict = field(default_factory=dict)
    objective: float = 0.0
    solver: str = "greedy"

    @property
    def empty(self):
        return len(self.selected) == 0

    def __len__(self):
        return len(self.selected)

    def __repr__(self):
        return "ScheduleDecision({} | {} UEs {} | objective {:.4f})".format(
            self.solver, len(self.selected), list(self.selected), self.objective
        )


def _total(weights):
    return math.fsum(weights)


def _decision(instance, positions, solver, share_leftover=True):
    """
    Build the decision for the chosen positions, alpha at min_alpha scaled
    up to use the whole band.
    """
    positions = sorted(positions, key=lambda i: instance.ids[i])
    if not positions:
        return ScheduleDecision(solver=solver)
    used = _total(instance.min_alpha[i] for i in positions)
    scale = max(1.0, CAPACITY / used) if share_leftover else 1.0
    alpha = {
        instance.ids[i]: min(1.0, float(instance.min_alpha[i] * scale)) for i in positions
    }
    objective = float(sum(instance.values[i] for i in positions))
    return ScheduleDecision(
        selected=tuple(instance.ids[i] for i in positions),
        alpha=alpha,
        objective=objective,
        solver=solver,
    )


def greedy_schedule(instance):
    """
    1. drop infeasible UEs
    2. sort by V/min_alpha (ties : larger V, then smaller id)
    3. take UEs while the bandwidth fits
    4. the best single UE replaces the set if it alone is worth more
    5. top up towards min_selected_N with the cheapest remaining UEs
    6. share the leftover bandwidth proportionally to min_alpha
    """
    feasible = instance.feasible_positions()
    if not feasible:
        return ScheduleDecision(solver="greedy")
    values, weights, ids = instance.values, instance.min_alpha, instance.ids

    order = sorted(
        feasible, key=lambda i: (-values[i] / weights[i], -values[i], ids[i])
    )
    selected = []
    used = 0.0
    for i in order:
        if used + weights[i] <= CAPACITY + CAPACITY_SLACK:
            selected.append(i)
            used += weights[i]

    best_single = min(feasible, key=lambda i: (-values[i], ids[i]))
    if values[best_single] > sum(values[i] for i in selected):
        selected = [best_single]
        used = weights[best_single]

    if len(selected) < instance.min_selected_N:
        remaining = sorted(
            (i for i in feasible if i not in selected),
            key=lambda i: (weights[i], ids[i]),
        )
        for i in remaining:
            if len(selected) >= instance.min_selected_N:
                break
            if used + weights[i] <= CAPACITY + CAPACITY_SLACK:
                selected.append(i)
                used += weights[i]

    return _decision(instance, selected, "greedy")


def exact_schedule(instance):
    """
    Exhaustive search of the knapsack. Ties go to fewer UEs, then to the
    lexicographically smallest id tuple.
    """
    if len(instance) > EXACT_MAX_UES:
        raise InstanceTooLargeError(
            "Exact scheduling limited to {} UEs (got {})".format(
                EXACT_MAX_UES, len(instance)
            )
        )
    feasible = instance.feasible_positions()
    if not feasible:
        return ScheduleDecision(solver="exact")
    values = instance.values[feasible]
    weights = instance.min_alpha[feasible]
    count = len(feasible)
    shifts = np.arange(count, dtype=np.int64)
    tolerance = 1e-12 * max(1.0, float(np.abs(values).sum()))

    best = -math.inf
    candidates = []
    for start in range(0, 1 << count, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << count), dtype=np.int64)
        bits = ((codes[:, None] >> shifts) & 1).astype(np.float64)
        fits = bits @ weights <= CAPACITY + CAPACITY_SLACK
        if not np.any(fits):
            continue
        codes = codes[fits]
        totals = bits[fits] @ values
        chunk_best = float(totals.max())
        if chunk_best > best + tolerance:
            candidates = []
        best = max(best, chunk_best)
        keep = totals >= best - tolerance
        candidates.extend(int(c) for c in codes[keep])

    def members(code):
        return [feasible[j] for j in range(count) if (code >> j) & 1]

    scored = []
    for code in candidates:
        positions = members(code)
        total = sum(instance.values[i] for i in positions)
        if total >= best - tolerance:
            scored.append(
                (len(positions), tuple(sorted(instance.ids[i] for i in positions)), positions)
            )
    _, _, positions = min(scored, key=lambda s: (s[0], s[1]))
    return _decision(instance, positions, "exact")


def equal_share_decision(values, chosen_ids, solver):
    """
    Decision that ignores the wireless constraints : the band is split
    equally among the chosen UEs.
    """
    chosen = tuple(sorted(int(k) for k in chosen_ids))
    if not chosen:
        return ScheduleDecision(solver=solver)
    share = 1.0 / len(chosen)
    return ScheduleDecision(
        selected=chosen,
        alpha={k: share for k in chosen},
        objective=float(sum(values[k] for k in chosen)),
        solver=solver,
    )


def top_k_schedule(values, k):
    """
    The k UEs with the highest V (ties to the smaller id).
    """
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return equal_share_decision(values, order[:k], "top_k")


def random_schedule(values, k, rng):
    """
    k UEs drawn uniformly without replacement.
    """
    k = min(k, len(values))
    return equal_share_decision(values, rng.choice(len(values), size=k, replace=False), "random")


def check_decision(decision, instance, training_times=None, upload_times=None, T=None):
    """
    Constraint report of a decision.

    :returns: list of violated constraints (empty when the decision is valid)
    """
    problems = []
    position = {k: i for i, k in enumerate(instance.ids)}
    total = _total(decision.alpha.values())
    if total > CAPACITY + 1e-9:
        problems.append("sum of alpha {} > 1".format(total))
    if len(set(decision.selected)) != len(decision.selected):
        problems.append("UE selected twice")
    for k in decision.selected:
        alpha = decision.alpha.get(k, 0.0)
        if not 0 < alpha <= 1:
            problems.append("UE {} : alpha {} out of (0, 1]".format(k, alpha))
        i = position.get(k)
        if i is None:
            problems.append("UE {} unknown".format(k))
            continue
        if math.isnan(instance.min_alpha[i]):
            problems.append("UE {} infeasible but selected".format(k))
        elif alpha < instance.min_alpha[i]:
            problems.append("UE {} : alpha below min_alpha".format(k))
        if training_times is not None and upload_times is not None and T is not None:
            if training_times[i] + upload_times[k] > T + 1e-6:
                problems.append("UE {} misses the deadline".format(k))
    return problems


def read_instance(path, min_selected_N=0):
    """
    Instance file : one UE per line `id, V, min_alpha` (commas or blanks).
    Lines starting with # are ignored. min_alpha 'inf', 'nan', 'infeasible'
    or outside (0, 1] marks an infeasible UE.
    """
    ids, values, weights = [], [], []
    with open(path, "r", encoding="utf-8") as file:
        for number, line in enumerate(file, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 3:
                raise InstanceParseError(
                    "{}:{} : expected 'id, V, min_alpha' (got {!r})".format(
                        path, number, line
                    )
                )
            try:
                ue_id = int(parts[0])
                value = float(parts[1])
                weight = (
                    math.nan if parts[2].lower() == "infeasible" else float(parts[2])
                )
            except ValueError as error:
                raise InstanceParseError("{}:{} : {}".format(path, number, error))
            if not math.isfinite(value):
                raise InstanceParseError("{}:{} : V must be finite".format(path, number))
            if ue_id in ids:
                raise InstanceParseError("{}:{} : duplicate id {}".format(path, number, ue_id))
            ids.append(ue_id)
            values.append(value)
            weights.append(weight)
    return SchedulingInstance(
        values=np.array(values, dtype=np.float64),
        min_alpha=np.array(weights, dtype=np.float64),
        min_selected_N=min_selected_N,
        ids=tuple(ids),
    )


def objective_ratio(greedy, exact):
    """
    greedy / exact, 1.0 when both are 0.
    """
    if exact.objective == 0:
        return 1.0
    return greedy.objective / exact.objective


class Scheduling:
    """
    Scheduling services of the simulator (mixin). Needs self.config,
    self.quality and self.seed.
    """

    def schedule_round(self, round, report):
        values = self.quality.V
        mode = self.config.selection_mode
        if mode == "top_k":
            decision = top_k_schedule(values, self.config.top_k)
        elif mode == "random":
            decision = random_schedule(
                values, self.config.top_k, derive_stream(self.seed, "selection", round)
            )
        else:
            instance = SchedulingInstance(
                values=values,
                min_alpha=report.min_alpha,
                min_selected_N=self.config.min_selected_N,
            )
            infeasible = [k for k in range(len(instance)) if math.isnan(instance.min_alpha[k])]
            if infeasible:
                self._log.debug("Round {} infeasible UEs : {}".format(round, infeasible))
            if self.config.solver == "exact":
                decision = exact_schedule(instance)
            else:
                decision = greedy_schedule(instance)
        self._log.debug("Round {} {}".format(round, decision))
        return decision
