#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
MLP.py - two fully connected layers, trained with mini-batch SGD

    hidden  a = relu(W1 x + b1)
    output  p = softmax(W2 a + b2)

Loss is the mean softmax cross-entropy of the batch. Gradients are computed
by hand (exact backpropagation), everything in float64.
"""

# --- standard Python modules ---
from dataclasses import dataclass

# --- 3rd party modules ---
import numpy as np

# ------------------------------------------------------------------------------


@dataclass(eq=False)
class ModelParams:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray

    FIELDS = ("W1", "b1", "W2", "b2")

    @property
    def dims(self):
        """
        (input, hidden, classes)
        """
        return (self.W1.shape[1], self.W1.shape[0], self.W2.shape[0])

    def arrays(self):
        return [getattr(self, name) for name in self.FIELDS]

    def copy(self):
        return ModelParams(*(a.copy() for a in self.arrays()))

    def is_finite(self):
        return all(np.all(np.isfinite(a)) for a in self.arrays())

    def __repr__(self):
        return "ModelParams({} -> {} -> {})".format(*self.dims)


def glorot_bound(fan_in, fan_out):
    return np.sqrt(6.0 / (fan_in + fan_out))


def init_params(dims, rng):
    """
    :param dims: (input, hidden, classes)
    :param rng: stream, weights uniform in +/- sqrt(6 / (fan_in + fan_out))
    """
    n_in, n_hidden, n_classes = (int(d) for d in dims)
    bound1 = glorot_bound(n_in, n_hidden)
    W1 = rng.uniform(-bound1, bound1, size=(n_hidden, n_in))
    bound2 = glorot_bound(n_hidden, n_classes)
    W2 = rng.uniform(-bound2, bound2, size=(n_classes, n_hidden))
    return ModelParams(
        W1=np.asarray(W1, dtype=np.float64),
        b1=np.zeros(n_hidden, dtype=np.float64),
        W2=np.asarray(W2, dtype=np.float64),
        b2=np.zeros(n_classes, dtype=np.float64),
    )


def softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def _hidden(params, batch):
    pre = np.asarray(batch, dtype=np.float64) @ params.W1.T + params.b1
    return pre, np.maximum(pre, 0.0)


def forward(params, batch):
    """
    :returns: class probabilities, one row per sample
    """
    _, hidden = _hidden(params, batch)
    return softmax(hidden @ params.W2.T + params.b2)


def predict(params, batch):
    # argmax ties go to the lowest class
    return np.argmax(forward(params, batch), axis=1)


def loss_and_grads(params, batch, labels):
    """
    Mean cross-entropy of the batch and its exact gradient.

    :returns: (loss, ModelParams holding the gradients)
    """
    x = np.asarray(batch, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n = x.shape[0]
    pre, hidden = _hidden(params, x)
    probs = softmax(hidden @ params.W2.T + params.b2)
    rows = np.arange(n)
    loss = float(-np.mean(np.log(np.maximum(probs[rows, labels], 1e-300))))

    delta_out = probs.copy()
    delta_out[rows, labels] -= 1.0
    delta_out /= n
    delta_hidden = (delta_out @ params.W2) * (pre > 0)
    grads = ModelParams(
        W1=delta_hidden.T @ x,
        b1=delta_hidden.sum(axis=0),
        W2=delta_out.T @ hidden,
        b2=delta_out.sum(axis=0),
    )
    return loss, grads


def sgd_step(params, grads, lr):
    for name in ModelParams.FIELDS:
        getattr(params, name)[...] -= lr * getattr(grads, name)


def accuracy(params, samples, labels):
    labels = np.asarray(labels)
    if labels.size == 0:
        return float("nan")
    return float(np.mean(predict(params, samples) == labels))


def local_train(params, local_data, epochs, lr, batch_size, rng, losses=None):
    """
    Train a copy of `params` on the UE's data (its own labels, flipped ones
    for an attacker). The data is reshuffled from the stream every epoch.

    :param losses: optional list, receives the mean loss of every epoch
    :returns: (trained ModelParams, accuracy on the local labels)
    """
    trained = params.copy()
    samples = local_data.samples
    labels = local_data.labels
    n = len(labels)
    for _ in range(int(epochs)):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            loss, grads = loss_and_grads(trained, samples[batch], labels[batch])
            epoch_loss += loss * len(batch)
            if lr != 0:
                sgd_step(trained, grads, lr)
        if losses is not None:
            losses.append(epoch_loss / n)
    return trained, accuracy(trained, samples, labels)


def evaluate(params, dataset):
    """
    Accuracy on the true labels of `dataset`.

    :returns: (accuracy, per-class recall array, NaN for absent classes)
    """
    labels = np.asarray(dataset.labels, dtype=np.int64)
    predictions = predict(params, dataset.samples)
    correct = predictions == labels
    num_classes = params.dims[2]
    support = np.bincount(labels, minlength=num_classes)[:num_classes]
    hits = np.bincount(labels[correct], minlength=num_classes)[:num_classes]
    with np.errstate(divide="ignore", invalid="ignore"):
        recall = np.where(support > 0, hits / np.maximum(support, 1), np.nan)
    return float(np.mean(correct)), recall.astype(np.float64)
