"""Finite-difference verification of analytic gradients.

Models under check expose:
  params            -- dict name -> float64 ndarray (probed in place)
  loss_and_grads(batch) -> (scalar loss, dict name -> ndarray)
  relu_kink_margin(batch) -> float   (optional; min |pre-activation| at ReLUs)
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigError, NumericalError

KINK_THRESHOLD = 1e-6


def gradient_check(model, batch, eps: float = 1e-4) -> float:
    """Max over all parameter coordinates of the relative error between the
    analytic gradient and the central finite difference.

    Coordinates whose perturbed forward pass puts a ReLU pre-activation
    within 1e-6 of its kink are skipped (the subgradient is ambiguous there).
    """
    if not (1e-6 <= eps <= 1e-3):
        raise ConfigError(f"gradient_check eps {eps} outside [1e-6, 1e-3]")
    loss, grads = model.loss_and_grads(batch)
    if not math.isfinite(loss):
        raise NumericalError(f"non-finite loss {loss}")
    margin_fn = getattr(model, "relu_kink_margin", None)
    max_err = 0.0
    for name, p in model.params.items():
        g = grads[name]
        flat = p.reshape(-1)
        gflat = np.asarray(g).reshape(-1)
        for j in range(flat.size):
            orig = flat[j]
            flat[j] = orig + eps
            lp = model.loss_and_grads(batch)[0]
            mp = margin_fn(batch) if margin_fn is not None else np.inf
            flat[j] = orig - eps
            lm = model.loss_and_grads(batch)[0]
            mm = margin_fn(batch) if margin_fn is not None else np.inf
            flat[j] = orig
            if not (math.isfinite(lp) and math.isfinite(lm)):
                raise NumericalError(f"non-finite loss while probing {name}[{j}]")
            if min(mp, mm) < KINK_THRESHOLD:
                continue
            cd = (lp - lm) / (2.0 * eps)
            denom = max(abs(gflat[j]), abs(cd), 1e-12)
            max_err = max(max_err, abs(gflat[j] - cd) / denom)
    return max_err
