"""Deterministic mini-batch SGD over models with explicit gradients.

A trainable model exposes:
  params                         -- dict name -> float64 ndarray (updated in place)
  example_loss_and_grads(x, y)   -- (loss, dict of per-example gradients)
  predict(x)                     -- hard label
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, EmptyDataset, NumericalError


@dataclass
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 50
    batch_size: int = 32
    seed: int = 0
    l2: float = 0.0

    def __post_init__(self):
        if self.learning_rate <= 0 or self.epochs <= 0 or self.batch_size <= 0:
            raise ConfigError("learning_rate, epochs and batch_size must be positive")
        if self.l2 < 0:
            raise ConfigError("l2 penalty must be nonnegative")


@dataclass
class TrainResult:
    params: dict
    history: list = field(default_factory=list)


def _accuracy(model, data) -> float:
    if not data:
        return 0.0
    hits = sum(1 for x, y in data if model.predict(x) == y)
    return hits / len(data)


def train_classifier(model, data, cfg: TrainConfig, eval_data=None, stop_at=None) -> TrainResult:
    """SGD loop; deterministic for a fixed seed (seeded shuffle, fixed order).

    When eval_data is given, the returned params are the best-validation
    checkpoint; stop_at optionally halts once validation accuracy reaches it.
    """
    if not data:
        raise EmptyDataset("train_classifier got no examples")
    rng = np.random.RandomState(cfg.seed)
    n = len(data)
    history = []
    best_acc = -1.0
    best_params = {k: v.copy() for k, v in model.params.items()}
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            batch_grads = {k: np.zeros_like(v) for k, v in model.params.items()}
            for i in idx:
                x, y = data[i]
                loss, grads = model.example_loss_and_grads(x, y)
                if not math.isfinite(loss):
                    raise NumericalError(f"non-finite loss at epoch {epoch}")
                epoch_loss += loss
                for k, g in grads.items():
                    batch_grads[k] += g
            scale = cfg.learning_rate / len(idx)
            for k, p in model.params.items():
                p -= scale * batch_grads[k] + cfg.learning_rate * cfg.l2 * p
        record = {"epoch": epoch, "loss": epoch_loss / n, "train_acc": _accuracy(model, data)}
        if eval_data is not None:
            record["val_acc"] = _accuracy(model, eval_data)
            if record["val_acc"] > best_acc:
                best_acc = record["val_acc"]
                best_params = {k: v.copy() for k, v in model.params.items()}
        history.append(record)
        if stop_at is not None and eval_data is not None and best_acc >= stop_at:
            break
    if eval_data is not None:
        for k in model.params:
            model.params[k][...] = best_params[k]
    return TrainResult(params=model.params, history=history)
