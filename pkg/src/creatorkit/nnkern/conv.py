"""2-D convolution building blocks for the built-in feature extractor.

Layouts: images and activation maps are (H, W, C); conv kernels are
(out_ch, 3, 3, in_ch). Convolutions are 3x3, stride 1, zero-padded to keep
spatial size ("same").
"""
from __future__ import annotations

import numpy as np

from ..errors import ShapeError


def conv3x3_forward(x: np.ndarray, k: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Same-padded 3x3 convolution. x: (H,W,Cin), k: (Cout,3,3,Cin), b: (Cout,)."""
    if x.ndim != 3 or x.shape[2] != k.shape[3]:
        raise ShapeError(f"conv input {x.shape} vs kernel {k.shape}")
    h, w, _ = x.shape
    xp = np.pad(x, ((1, 1), (1, 1), (0, 0)))
    out = np.broadcast_to(b, (h, w, k.shape[0])).copy()
    for dy in range(3):
        for dx in range(3):
            out += np.tensordot(xp[dy : dy + h, dx : dx + w, :], k[:, dy, dx, :], axes=([2], [1]))
    return out


def conv3x3_backward(x, k, dout):
    """Returns (dx, dk, db) for the same-padded conv above."""
    h, w, _ = x.shape
    xp = np.pad(x, ((1, 1), (1, 1), (0, 0)))
    dxp = np.zeros_like(xp)
    dk = np.zeros_like(k)
    db = dout.sum(axis=(0, 1))
    for dy in range(3):
        for dx in range(3):
            patch = xp[dy : dy + h, dx : dx + w, :]
            dk[:, dy, dx, :] = np.tensordot(dout, patch, axes=([0, 1], [0, 1])).reshape(
                k.shape[0], k.shape[3]
            )
            dxp[dy : dy + h, dx : dx + w, :] += np.tensordot(dout, k[:, dy, dx, :], axes=([2], [0]))
    return dxp[1:-1, 1:-1, :], dk, db


def maxpool2_forward(x: np.ndarray):
    """2x2 max pooling, stride 2; odd trailing rows/columns are dropped.

    Returns (out, argmax_idx) where argmax_idx selects the winner inside each
    2x2 window (needed for the backward scatter).
    """
    h2, w2 = x.shape[0] // 2, x.shape[1] // 2
    c = x.shape[2]
    win = (
        x[: 2 * h2, : 2 * w2, :]
        .reshape(h2, 2, w2, 2, c)
        .transpose(0, 2, 4, 1, 3)
        .reshape(h2, w2, c, 4)
    )
    idx = win.argmax(axis=3)
    out = np.take_along_axis(win, idx[..., None], axis=3)[..., 0]
    return out, (idx, x.shape)


def maxpool2_backward(cache, dout):
    idx, shape = cache
    h2, w2, c = dout.shape
    dwin = np.zeros((h2, w2, c, 4))
    np.put_along_axis(dwin, idx[..., None], dout[..., None], axis=3)
    dx = np.zeros(shape)
    dx[: 2 * h2, : 2 * w2, :] = (
        dwin.reshape(h2, w2, c, 2, 2).transpose(0, 3, 1, 4, 2).reshape(2 * h2, 2 * w2, c)
    )
    return dx


def global_avg_pool_forward(x: np.ndarray) -> np.ndarray:
    return x.mean(axis=(0, 1))


def global_avg_pool_backward(shape, dout):
    h, w, _ = shape
    return np.broadcast_to(dout / (h * w), shape).copy()
