#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Config.py - simulation configuration

One JSON file fully determines a run. Sections map to frozen dataclasses ::

    {
        "rounds_max": 15,
        "deadline_T": 300,
        "bandwidth_B": 1e6,
        "omega1": 0.5, "omega2": 0.5,
        "learner": {"hidden": 64, "lr": 0.05},
        "attack": {"source_label": 6, "target_label": 2},
        "topology": {"num_ues": 50, "cell_side": 500},
        "data": {"source": "mnist", "train_pool_size": 50000}
    }

Missing keys take the defaults below, unknown keys are refused.
Validation stops at the first violated invariant and names it.
"""

# --- standard Python modules ---
from dataclasses import dataclass, field, fields, replace, asdict
import json
import math
import os

# --- this application's modules ---
from .IOExceptions import ConfigParseError, ConfigValidationError

# ------------------------------------------------------------------------------

SUM_TOLERANCE = 1e-12
SELECTION_MODES = ("dqs", "top_k", "random")
SOLVERS = ("greedy", "exact")
REPORT_MODES = ("sincere", "lying")
DATA_SOURCES = ("mnist", "synthetic", "idx")
ZETA_UNITS = ("sample", "bit")
MNIST_CLASSES = 10
DBM_LIMIT = 1000.0


def dbm_to_watt(dbm):
    return 10 ** ((dbm - 30) / 10)


def _check(condition, message, *args):
    if not condition:
        raise ConfigValidationError(message.format(*args))


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value):
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def _is_dbm(value):
    return _is_real(value) and -DBM_LIMIT <= value <= DBM_LIMIT


def _check_range_pair(name, pair):
    _check(
        isinstance(pair, (list, tuple)) and len(pair) == 2,
        "{} must be a [low, high] pair (got {!r})",
        name,
        pair,
    )
    low, high = pair
    _check(
        _is_real(low) and _is_real(high) and 0 < low <= high,
        "{} must satisfy 0 < low <= high (got {!r})",
        name,
        pair,
    )


def _check_weights(name, weights, count):
    _check(
        isinstance(weights, (list, tuple)) and len(weights) == count,
        "{} must hold {} weights (got {!r})",
        name,
        count,
        weights,
    )
    _check(
        all(_is_real(w) and w >= 0 for w in weights),
        "{} must be non-negative reals (got {!r})",
        name,
        weights,
    )
    _check(
        abs(sum(weights) - 1.0) <= SUM_TOLERANCE,
        "{} must sum to 1 (got {!r}, sum {})",
        name,
        weights,
        sum(weights),
    )


@dataclass(frozen=True)
class LearnerConfig:
    hidden: int = 64
    lr: float = 0.05
    batch_size: int = 32

    def validate(self):
        _check(_is_int(self.hidden) and self.hidden >= 1, "learner.hidden must be >= 1")
        _check(_is_real(self.lr) and self.lr >= 0, "learner.lr must be >= 0")
        _check(
            _is_int(self.batch_size) and self.batch_size >= 1,
            "learner.batch_size must be >= 1",
        )


@dataclass(frozen=True)
class AttackConfig:
    enabled: bool = True
    num_malicious: int = 5
    source_label: int = 6
    target_label: int = 2
    flip_fraction: float = 1.0
    report_mode: str = "sincere"
    lie_inflation: float = 0.3

    def validate(self, num_ues, num_classes):
        _check(isinstance(self.enabled, bool), "attack.enabled must be a boolean")
        _check(
            _is_int(self.num_malicious) and 0 <= self.num_malicious <= num_ues,
            "attack.num_malicious must be in [0, topology.num_ues] (got {!r})",
            self.num_malicious,
        )
        for name in ("source_label", "target_label"):
            label = getattr(self, name)
            _check(
                _is_int(label) and 0 <= label < num_classes,
                "attack.{} must be a class id in [0, {}) (got {!r})",
                name,
                num_classes,
                label,
            )
        _check(
            self.source_label != self.target_label,
            "attack.source_label and attack.target_label must differ (both {})",
            self.source_label,
        )
        _check(
            _is_real(self.flip_fraction) and 0.0 <= self.flip_fraction <= 1.0,
            "attack.flip_fraction must be in [0, 1] (got {!r})",
            self.flip_fraction,
        )
        _check(
            self.report_mode in REPORT_MODES,
            "attack.report_mode must be one of {} (got {!r})",
            REPORT_MODES,
            self.report_mode,
        )
        _check(
            _is_real(self.lie_inflation) and self.lie_inflation >= 0,
            "attack.lie_inflation must be >= 0",
        )


@dataclass(frozen=True)
class TopologyConfig:
    num_ues: int = 50
    cell_side: float = 500.0
    pathloss_exponent: float = 3.76
    min_distance: float = 1.0
    transmit_power_dbm: float = -23.0
    cpu_frequency: tuple = (1e9, 2e9)
    zeta: tuple = (2e7, 4e7)
    zeta_unit: str = "sample"
    bits_per_sample: float = 6272.0

    @property
    def transmit_power_W(self):
        return dbm_to_watt(self.transmit_power_dbm)

    def validate(self):
        _check(_is_int(self.num_ues) and self.num_ues >= 1, "topology.num_ues must be >= 1")
        _check(
            _is_real(self.cell_side) and self.cell_side > 0,
            "topology.cell_side must be > 0",
        )
        _check(
            _is_real(self.pathloss_exponent) and self.pathloss_exponent >= 0,
            "topology.pathloss_exponent must be >= 0",
        )
        _check(
            _is_real(self.min_distance) and self.min_distance > 0,
            "topology.min_distance must be > 0",
        )
        _check(
            _is_dbm(self.transmit_power_dbm),
            "topology.transmit_power_dbm must be a real in [-{0}, {0}] dBm (got {1!r})",
            DBM_LIMIT,
            self.transmit_power_dbm,
        )
        _check_range_pair("topology.cpu_frequency", self.cpu_frequency)
        _check_range_pair("topology.zeta", self.zeta)
        _check(
            self.zeta_unit in ZETA_UNITS,
            "topology.zeta_unit must be one of {} (got {!r})",
            ZETA_UNITS,
            self.zeta_unit,
        )
        _check(
            _is_real(self.bits_per_sample) and self.bits_per_sample > 0,
            "topology.bits_per_sample must be > 0",
        )


@dataclass(frozen=True)
class SyntheticConfig:
    num_classes: int = 10
    per_class: int = 500
    dim: int = 20
    separation: float = 4.0

    def validate(self):
        _check(
            _is_int(self.num_classes) and self.num_classes >= 2,
            "data.synthetic.num_classes must be >= 2",
        )
        _check(
            _is_int(self.per_class) and self.per_class >= 1,
            "data.synthetic.per_class must be >= 1",
        )
        _check(_is_int(self.dim) and self.dim >= 1, "data.synthetic.dim must be >= 1")
        _check(
            _is_real(self.separation) and self.separation > 0,
            "data.synthetic.separation must be > 0",
        )


@dataclass(frozen=True)
class DataConfig:
    source: str = "mnist"
    data_dir: str = None
    train_pool_size: int = 50000
    test_fraction: float = 0.1
    group_size: int = 50
    min_groups: int = 1
    max_groups: int = 30
    synthetic: SyntheticConfig = field(default_factory=SyntheticConfig)

    @property
    def num_classes(self):
        if self.source == "synthetic":
            return self.synthetic.num_classes
        return MNIST_CLASSES

    def resolved_data_dir(self):
        """
        Explicit data_dir, then FEEL_DATA_DIR, then ./data
        """
        if self.data_dir:
            return self.data_dir
        return os.environ.get("FEEL_DATA_DIR", os.path.join(os.getcwd(), "data"))

    def validate(self):
        _check(
            self.source in DATA_SOURCES,
            "data.source must be one of {} (got {!r})",
            DATA_SOURCES,
            self.source,
        )
        _check(
            self.data_dir is None or isinstance(self.data_dir, str),
            "data.data_dir must be a path or null",
        )
        _check(
            self.train_pool_size is None
            or (_is_int(self.train_pool_size) and self.train_pool_size >= 1),
            "data.train_pool_size must be >= 1 or null",
        )
        _check(
            _is_real(self.test_fraction) and 0 < self.test_fraction < 1,
            "data.test_fraction must be in (0, 1) (got {!r})",
            self.test_fraction,
        )
        _check(
            _is_int(self.group_size) and self.group_size >= 1,
            "data.group_size must be >= 1",
        )
        _check(
            _is_int(self.min_groups) and self.min_groups >= 1,
            "data.min_groups must be >= 1",
        )
        _check(
            _is_int(self.max_groups) and self.max_groups >= self.min_groups,
            "data.max_groups must be >= data.min_groups",
        )
        self.synthetic.validate()


@dataclass(frozen=True)
class SimulationConfig:
    rounds_max: int = 15
    deadline_T: float = 300.0
    bandwidth_B: float = 1e6
    model_size_s: float = 800000.0
    local_epochs: int = 5
    min_selected_N: int = 5
    noise_psd_N0: float = dbm_to_watt(-174.0)
    reputation_rate: float = 1.0
    beta1: float = 0.5
    beta2: float = 0.5
    gamma_weights: tuple = (1 / 3, 1 / 3, 1 / 3)
    omega1: float = 0.5
    omega2: float = 0.5
    omega_schedule: tuple = None
    seed: int = 0
    seeds: tuple = None
    selection_mode: str = "dqs"
    top_k: int = 5
    solver: str = "greedy"
    workers: int = 1
    learner: LearnerConfig = field(default_factory=LearnerConfig)
    attack: AttackConfig = field(default_factory=AttackConfig)
    topology: TopologyConfig = field(default_factory=TopologyConfig)
    data: DataConfig = field(default_factory=DataConfig)

    def validate(self):
        """
        Raise ConfigValidationError on the first violated invariant.
        """
        _check(
            _is_int(self.rounds_max) and self.rounds_max >= 1,
            "rounds_max must be >= 1 (got {!r})",
            self.rounds_max,
        )
        _check(
            _is_real(self.deadline_T) and self.deadline_T > 0,
            "deadline_T must be > 0 (got {!r})",
            self.deadline_T,
        )
        _check(
            _is_real(self.bandwidth_B) and self.bandwidth_B > 0,
            "bandwidth_B must be > 0 (got {!r})",
            self.bandwidth_B,
        )
        _check(
            _is_real(self.model_size_s) and self.model_size_s > 0,
            "model_size_s must be > 0 (got {!r})",
            self.model_size_s,
        )
        _check(
            _is_int(self.local_epochs) and self.local_epochs >= 1,
            "local_epochs must be >= 1 (got {!r})",
            self.local_epochs,
        )
        _check(
            _is_int(self.min_selected_N) and self.min_selected_N >= 0,
            "min_selected_N must be >= 0 (got {!r})",
            self.min_selected_N,
        )
        _check(
            _is_real(self.noise_psd_N0) and self.noise_psd_N0 > 0,
            "noise_psd_N0 must be > 0 (got {!r})",
            self.noise_psd_N0,
        )
        _check(
            _is_real(self.reputation_rate) and 0.0 <= self.reputation_rate <= 1.0,
            "reputation_rate must be in [0, 1] (got {!r})",
            self.reputation_rate,
        )
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            _check(
                _is_real(value) and value >= 0,
                "{} must be >= 0 (got {!r})",
                name,
                value,
            )
        _check_weights("gamma_weights", self.gamma_weights, 3)
        _check_weights("omega1 + omega2", (self.omega1, self.omega2), 2)
        if self.omega_schedule is not None:
            _check(
                isinstance(self.omega_schedule, (list, tuple))
                and len(self.omega_schedule) >= 1,
                "omega_schedule must be a non-empty list of [omega1, omega2] pairs",
            )
            for index, pair in enumerate(self.omega_schedule):
                _check_weights("omega_schedule[{}]".format(index), pair, 2)
        _check(
            _is_int(self.seed) and 0 <= self.seed < 2 ** 64,
            "seed must be a 64-bit unsigned integer (got {!r})",
            self.seed,
        )
        if self.seeds is not None:
            _check(
                isinstance(self.seeds, (list, tuple))
                and len(self.seeds) >= 1
                and all(_is_int(s) and 0 <= s < 2 ** 64 for s in self.seeds),
                "seeds must be a non-empty list of 64-bit unsigned integers",
            )
        _check(
            self.selection_mode in SELECTION_MODES,
            "selection_mode must be one of {} (got {!r})",
            SELECTION_MODES,
            self.selection_mode,
        )
        _check(_is_int(self.top_k) and self.top_k >= 1, "top_k must be >= 1")
        _check(
            self.solver in SOLVERS,
            "solver must be one of {} (got {!r})",
            SOLVERS,
            self.solver,
        )
        _check(_is_int(self.workers) and self.workers >= 1, "workers must be >= 1")
        self.learner.validate()
        self.topology.validate()
        self.data.validate()
        self.attack.validate(self.topology.num_ues, self.data.num_classes)
        return self

    def omega_for_round(self, round):
        """
        (omega1, omega2) used at round t (1-based). A schedule's last entry repeats.
        """
        if not self.omega_schedule:
            return (self.omega1, self.omega2)
        index = min(max(round, 1), len(self.omega_schedule)) - 1
        omega1, omega2 = self.omega_schedule[index]
        return (omega1, omega2)

    @property
    def run_seeds(self):
        return tuple(self.seeds) if self.seeds else (self.seed,)

    def with_overrides(self, seed=None, **params):
        if seed is not None:
            params["seed"] = seed
            params["seeds"] = None
        return replace(self, **params).validate()

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, definition):
        if not isinstance(definition, dict):
            raise ConfigParseError("Configuration root must be a JSON object")
        definition = dict(definition)
        if "noise_psd_dbm_hz" in definition:
            noise_dbm = definition.pop("noise_psd_dbm_hz")
            _check(
                "noise_psd_N0" not in definition,
                "Set noise_psd_dbm_hz or noise_psd_N0, not both",
            )
            _check(
                _is_dbm(noise_dbm),
                "noise_psd_dbm_hz must be a real in [-{0}, {0}] dBm/Hz (got {1!r})",
                DBM_LIMIT,
                noise_dbm,
            )
            definition["noise_psd_N0"] = dbm_to_watt(noise_dbm)

        sections = {
            "learner": LearnerConfig,
            "attack": AttackConfig,
            "topology": TopologyConfig,
            "data": DataConfig,
        }
        params = _build(cls, definition, "", skip=sections)
        for name, section in sections.items():
            value = definition.get(name, {})
            if name == "data":
                value = dict(value) if isinstance(value, dict) else value
                synthetic = value.pop("synthetic", {}) if isinstance(value, dict) else {}
                params[name] = section(
                    synthetic=SyntheticConfig(
                        **_build(SyntheticConfig, synthetic, "data.synthetic.")
                    ),
                    **_build(section, value, "data.", skip=("synthetic",)),
                )
            else:
                params[name] = section(**_build(section, value, name + "."))
        return cls(**params).validate()


def _build(cls, definition, prefix, skip=()):
    if not isinstance(definition, dict):
        raise ConfigParseError("Section {!r} must be a JSON object".format(prefix[:-1]))
    known = {f.name for f in fields(cls)}
    params = {}
    for key, value in definition.items():
        if key in skip:
            continue
        if key not in known:
            raise ConfigValidationError("Unknown configuration key {}{}".format(prefix, key))
        # JSON lists become tuples so configs stay hashable and immutable
        if isinstance(value, list):
            value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
        params[key] = value
    return params


def load_config(path):
    """
    Read and validate a JSON configuration file.

    :param path: file path
    :returns: SimulationConfig
    """
    with open(path, "r", encoding="utf-8") as file:
        try:
            definition = json.load(file)
        except json.JSONDecodeError as error:
            raise ConfigParseError("Can't parse {} : {}".format(path, error))
    return SimulationConfig.from_dict(definition)
