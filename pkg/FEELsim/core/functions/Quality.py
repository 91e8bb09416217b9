#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Quality.py - data-quality value of the UEs

    reputation  R_k <- clamp01(R_k - eta (beta1 (acc_local - avg_acc)
                                        + beta2 (acc_local - acc_test)))
    diversity   I_k = sum_i gamma_i v_ik,  i in (elements diversity, size, age)
    value       V_k = omega1 R_k + omega2 I_k

Metrics v_ik are normalized to [0, 1] :
    elements diversity  Gini-Simpson / (1 - 1/C)
    dataset size        |D_k| / max_j |D_j|
    age                 1 / (1 + rounds UE k already trained)
"""

# --- standard Python modules ---
from dataclasses import dataclass
from collections import namedtuple

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import EmptyDatasetError

# ------------------------------------------------------------------------------

PopulationStats = namedtuple(
    "PopulationStats", ["max_dataset_size", "max_participation", "num_classes"]
)


@dataclass(eq=False)
class QualityState:
    R: np.ndarray
    I: np.ndarray
    V: np.ndarray
    v: np.ndarray

    @classmethod
    def initial(cls, num_ues):
        """
        Everybody starts with full reputation.
        """
        return cls(
            R=np.ones(num_ues, dtype=np.float64),
            I=np.zeros(num_ues, dtype=np.float64),
            V=np.zeros(num_ues, dtype=np.float64),
            v=np.zeros((num_ues, 3), dtype=np.float64),
        )

    def copy(self):
        return QualityState(R=self.R.copy(), I=self.I.copy(), V=self.V.copy(), v=self.v.copy())


def gini_simpson(label_counts):
    """
    1 - sum_c p_c², probability that two samples drawn with replacement
    carry different labels.
    """
    counts = np.asarray(label_counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        raise EmptyDatasetError("Gini-Simpson index of an empty dataset")
    p = counts / total
    return float(1.0 - np.sum(p * p))


def normalized_gini_simpson(label_counts, num_classes):
    """
    Gini-Simpson divided by its maximum 1 - 1/C.
    """
    if num_classes < 2:
        return 0.0
    return gini_simpson(label_counts) / (1.0 - 1.0 / num_classes)


def diversity_metrics(label_counts, dataset_size, participation_count, population_stats):
    """
    :returns: numpy array (v_diversity, v_size, v_age)
    """
    return np.array(
        [
            normalized_gini_simpson(label_counts, population_stats.num_classes),
            dataset_size / population_stats.max_dataset_size,
            1.0 / (1.0 + participation_count),
        ],
        dtype=np.float64,
    )


def diversity_index(ue, partition, population_stats, gammas):
    """
    I_k of one UE, computed on the labels the UE reports.

    :returns: (I_k, metrics v)
    """
    v = diversity_metrics(
        ue.dataset.label_counts(),
        ue.dataset_size,
        int(partition.participation_count[ue.id]),
        population_stats,
    )
    return float(np.dot(v, np.asarray(gammas, dtype=np.float64))), v


def update_reputation(R_prev, acc_local, avg_acc, acc_test, eta, beta1, beta2):
    correction = beta1 * (acc_local - avg_acc) + beta2 * (acc_local - acc_test)
    return float(min(1.0, max(0.0, R_prev - eta * correction)))


def quality_value(R, I, omega1, omega2):
    return omega1 * R + omega2 * I


class Quality:
    """
    Quality services of the simulator (mixin). Needs self.config,
    self.ues, self.partition and self.quality.
    """

    def population_stats(self):
        return PopulationStats(
            max_dataset_size=max(ue.dataset_size for ue in self.ues),
            max_participation=int(self.partition.participation_count.max()),
            num_classes=self.config.data.num_classes,
        )

    def score_population(self, round):
        """
        Refresh I_k and V_k of every UE for this round.
        """
        stats = self.population_stats()
        omega1, omega2 = self.config.omega_for_round(round)
        for ue in self.ues:
            I, v = diversity_index(ue, self.partition, stats, self.config.gamma_weights)
            self.quality.I[ue.id] = I
            self.quality.v[ue.id] = v
            self.quality.V[ue.id] = quality_value(
                self.quality.R[ue.id], I, omega1, omega2
            )
        return self.quality

    def update_reputations(self, reports):
        """
        :param reports: {ue_id: (reported acc_local, acc_test)} for this
            round's participants only, the others keep their reputation
        """
        if not reports:
            return
        avg_acc = float(np.mean([reports[k][0] for k in sorted(reports)]))
        for ue_id in sorted(reports):
            acc_local, acc_test = reports[ue_id]
            before = self.quality.R[ue_id]
            self.quality.R[ue_id] = update_reputation(
                before,
                acc_local,
                avg_acc,
                acc_test,
                self.config.reputation_rate,
                self.config.beta1,
                self.config.beta2,
            )
            self._log.debug(
                "UE {} reputation {:.4f} -> {:.4f} (local {:.4f} | avg {:.4f} | test {:.4f})".format(
                    ue_id, before, self.quality.R[ue_id], acc_local, avg_acc, acc_test
                )
            )
        return avg_acc
