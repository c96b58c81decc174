"""Elementary layer math: activations, dense layers, seeded init.

All functions operate on float64 numpy arrays and come in forward/backward
pairs so models can assemble exact analytic gradients.
"""
from __future__ import annotations

import numpy as np

from ..errors import EmptyInput, ShapeError


def softmax(x: np.ndarray) -> np.ndarray:
    """Stable softmax over a 1-d vector (shift by max before exponentiating)."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise EmptyInput("softmax of empty vector")
    z = np.exp(x - np.max(x))
    return z / np.sum(z)


def softmax_backward(alpha: np.ndarray, dalpha: np.ndarray) -> np.ndarray:
    """Gradient of loss wrt softmax input, given output ``alpha`` and d/d alpha."""
    return alpha * (dalpha - np.dot(alpha, dalpha))


def sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ez = np.exp(x[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def relu(x):
    return np.maximum(0.0, x)


def dense_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """y = W x + b for a single vector x."""
    if w.shape[1] != x.shape[0]:
        raise ShapeError(f"dense expects input dim {w.shape[1]}, got {x.shape[0]}")
    return w @ x + b


def dense_backward(x, w, dy):
    """Returns (dx, dW, db) for y = W x + b."""
    return w.T @ dy, np.outer(dy, x), dy.copy()


def glorot_uniform(rng: np.random.RandomState, shape: tuple[int, ...]) -> np.ndarray:
    """Uniform(-r, r) with r = sqrt(6 / (fan_in + fan_out))."""
    if len(shape) == 1:
        fan_in = fan_out = shape[0]
    else:
        fan_out, fan_in = shape[0], int(np.prod(shape[1:]))
    r = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-r, r, size=shape)
