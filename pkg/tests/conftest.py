#!/usr/bin/env python
# -*- coding utf-8 -*-

"""
Shared fixtures : a small synthetic simulation run once per session
"""

import pytest
from collections import namedtuple

import FEELsim
from FEELsim.core.io.Config import SimulationConfig

SMOKE = {
    "rounds_max": 5,
    "deadline_T": 300,
    "local_epochs": 2,
    "min_selected_N": 3,
    "seed": 3,
    "learner": {"hidden": 16, "lr": 0.05, "batch_size": 16},
    "attack": {"enabled": True, "num_malicious": 2, "source_label": 6, "target_label": 2},
    "topology": {"num_ues": 12},
    "data": {
        "source": "synthetic",
        "group_size": 10,
        "min_groups": 1,
        "max_groups": 5,
        "synthetic": {"num_classes": 10, "per_class": 60, "dim": 8},
    },
}


def smoke_config(**overrides):
    definition = dict(SMOKE)
    definition.update(overrides)
    return SimulationConfig.from_dict(definition)


@pytest.fixture(scope="session")
def feel_run(tmp_path_factory):
    FEELsim.log_level("error")
    config = smoke_config()
    simulation = FEELsim.Simulator(config)
    records = simulation.run()
    out = str(tmp_path_factory.mktemp("smoke_run"))
    paths = simulation.save(out)

    params = namedtuple("feel_run", ["config", "simulation", "records", "out", "paths"])
    yield params(config, simulation, records, out, paths)
