import sys

import numpy as np

import FEELsim

"""
This sample compares scheduling strategies over several seeds. Balanced
and diversity only take the 5 UEs with the highest quality value, random
takes 5 UEs at random.
For each one it prints the mean final global accuracy and the mean recall
of the attacked class, with the pooled standard deviation of the
difference against the balanced strategy.

    python samples/compare_strategies.py presets/mnist_6_2.json 10
"""

STRATEGIES = {
    "balanced": {"omega1": 0.5, "omega2": 0.5, "selection_mode": "top_k", "top_k": 5},
    "diversity only": {"omega1": 0.0, "omega2": 1.0, "selection_mode": "top_k", "top_k": 5},
    "random": {"selection_mode": "random", "top_k": 5},
}


def run_strategy(config, seeds, params):
    accuracies, recalls = [], []
    for seed in seeds:
        simulation = FEELsim.Simulator(config.with_overrides(seed=seed, **params))
        simulation.run()
        summary = simulation.summary()
        accuracies.append(summary["final_accuracy"])
        recall = summary["source_recall_last_rounds"]
        recalls.append(np.nan if recall is None else recall)
    return np.array(accuracies, dtype=float), np.array(recalls, dtype=float)


def pooled_std(a, b):
    return np.sqrt((np.nanvar(a, ddof=1) + np.nanvar(b, ddof=1)) / 2)


if __name__ == "__main__":
    preset = sys.argv[1] if len(sys.argv) > 1 else "presets/mnist_6_2.json"
    runs = int(sys.argv[2]) if len(sys.argv) > 2 else 10
    FEELsim.log_level("error")

    config = FEELsim.load_config(preset)
    seeds = range(runs)
    results = {name: run_strategy(config, seeds, p) for name, p in STRATEGIES.items()}

    reference_acc, reference_recall = results["balanced"]
    print("{:<16} {:>12} {:>14}".format("strategy", "final acc", "source recall"))
    for name, (acc, recall) in results.items():
        print(
            "{:<16} {:>12.4f} {:>14.4f}".format(name, np.nanmean(acc), np.nanmean(recall))
        )
        if name != "balanced" and runs > 1:
            print(
                "{:<16} acc gap {:+.4f} (pooled std {:.4f}) | recall gap {:+.4f} (pooled std {:.4f})".format(
                    "",
                    np.nanmean(reference_acc) - np.nanmean(acc),
                    pooled_std(reference_acc, acc),
                    np.nanmean(reference_recall) - np.nanmean(recall),
                    pooled_std(reference_recall, recall),
                )
            )
