#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
Base - everything the MEC server sets up before the first round

    * load the dataset (MNIST IDX files, IDX files written by gen-synthetic,
      or an in-memory synthetic set)
    * reduce it to the training pool and keep a stratified server test split
    * deal non-IID label groups to the UEs
    * pick the attackers and flip their labels
    * drop the UEs in the cell
    * initialize the global model and the reputations (all 1)

Class::
    Base(config, seed=None)
        def initialize()
"""
# --- standard Python modules ---

# --- this application's modules ---
from ..core.data.Dataset import generate_synthetic, subsample, split_test
from ..core.data.IDX import find_idx_files, load_mnist_idx
from ..core.data.Partition import LocalData, partition_sorted_groups
from ..core.data.Attack import AttackSpec, apply_label_flip, choose_malicious
from ..core.devices.UE import build_population
from ..core.functions.Quality import QualityState
from ..core.learner.MLP import init_params
from ..core.utils.rng import derive_stream
from ..core.utils.notes import note_and_log
from ..infos import __version__ as version

# ------------------------------------------------------------------------------


@note_and_log
class Base:
    """
    Simulation state. Nothing is loaded until initialize() runs.

    :param config: validated SimulationConfig
    :param seed: run seed, defaults to config.seed
    """

    def __init__(self, config, seed=None):
        self.config = config
        self.seed = config.seed if seed is None else int(seed)
        self._initialized = False

        self.train_pool = None
        self.test_set = None
        self.partition = None
        self.local_data = ()
        self.malicious_ids = ()
        self.attack = None
        self.ues = ()
        self.params = None
        self.quality = None

    def load_dataset(self):
        data = self.config.data
        if data.source == "synthetic":
            synthetic = data.synthetic
            return generate_synthetic(
                synthetic.num_classes,
                synthetic.per_class,
                synthetic.dim,
                derive_stream(self.seed, "synthetic"),
                separation=synthetic.separation,
            )
        data_dir = data.resolved_data_dir()
        images, labels = find_idx_files(data_dir, "train")
        self._log.debug("Loading {} / {}".format(images, labels))
        return load_mnist_idx(
            images, labels, num_classes=data.num_classes, source=data.source
        )

    def initialize(self):
        config = self.config
        self.log_title("FEELsim {} | seed {}".format(version, self.seed))

        dataset = self.load_dataset()
        pool = subsample(
            dataset, config.data.train_pool_size, derive_stream(self.seed, "subsample")
        )
        self.train_pool, self.test_set = split_test(
            pool, config.data.test_fraction, derive_stream(self.seed, "split")
        )
        self._log.info(
            "{} | train pool {} | server test set {}".format(
                dataset, len(self.train_pool), len(self.test_set)
            )
        )

        num_ues = config.topology.num_ues
        self.partition = partition_sorted_groups(
            self.train_pool,
            num_ues,
            config.data.group_size,
            config.data.min_groups,
            config.data.max_groups,
            derive_stream(self.seed, "partition"),
        )
        local_data = [
            LocalData(
                ue_id=k,
                samples=self.train_pool.samples[indices],
                labels=self.train_pool.labels[indices],
                true_labels=self.train_pool.labels[indices],
                num_classes=self.train_pool.num_classes,
            )
            for k, indices in enumerate(self.partition.indices)
        ]

        if config.attack.enabled and config.attack.num_malicious > 0:
            self.attack = AttackSpec.from_config(config.attack)
            self.malicious_ids = choose_malicious(
                num_ues,
                config.attack.num_malicious,
                derive_stream(self.seed, "malicious"),
            )
            for k in self.malicious_ids:
                local_data[k] = apply_label_flip(
                    local_data[k], self.attack, derive_stream(self.seed, "flip", 0, k)
                )
            self._log.info(
                "Label flipping {} on UEs {}".format(self.attack, list(self.malicious_ids))
            )
        self.local_data = tuple(local_data)

        self.ues = build_population(
            config, self.local_data, self.seed, self.malicious_ids, self.attack
        )
        for ue in self.ues:
            self._log.debug("{!r}".format(ue))

        dims = (self.train_pool.dim, config.learner.hidden, self.train_pool.num_classes)
        self.params = init_params(dims, derive_stream(self.seed, "init"))
        self.quality = QualityState.initial(num_ues)
        self._initialized = True
        self.note("Initialized {} UEs, model {}".format(num_ues, self.params))

    @property
    def initialized(self):
        return self._initialized

    def __repr__(self):
        return "{} (seed {} | {} UEs{})".format(
            self.__class__.__name__,
            self.seed,
            self.config.topology.num_ues,
            "" if self._initialized else " | not initialized",
        )
