"""LSTM cell and bi-directional sequence encoder with exact backward passes.

Gate layout follows the standard equations: a single stacked pre-activation
z = W x + U h_prev + b is split into four H-sized blocks (i, f, o, g);
i = sigmoid, f = sigmoid, o = sigmoid, g = tanh;
c = f * c_prev + i * g;  h = o * tanh(c).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, ShapeError
from .ops import glorot_uniform, sigmoid


@dataclass
class LstmParams:
    """One direction's weights: W (4H x D), U (4H x H), b (4H)."""

    w: np.ndarray
    u: np.ndarray
    b: np.ndarray

    @property
    def hidden(self) -> int:
        return self.u.shape[1]

    @property
    def input_dim(self) -> int:
        return self.w.shape[1]

    @classmethod
    def init(cls, rng: np.random.RandomState, input_dim: int, hidden: int) -> "LstmParams":
        return cls(
            w=glorot_uniform(rng, (4 * hidden, input_dim)),
            u=glorot_uniform(rng, (4 * hidden, hidden)),
            b=np.zeros(4 * hidden),
        )


def lstm_step(x, h_prev, c_prev, p: LstmParams):
    """One cell update. Returns (h, c, cache) with cache kept for backward."""
    hdim = p.hidden
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    c_prev = np.asarray(c_prev, dtype=np.float64)
    if x.shape != (p.input_dim,) or h_prev.shape != (hdim,) or c_prev.shape != (hdim,):
        raise ShapeError(
            f"lstm_step dims: x {x.shape}, h {h_prev.shape}, c {c_prev.shape} "
            f"vs params D={p.input_dim} H={hdim}"
        )
    z = p.w @ x + p.u @ h_prev + p.b
    i = sigmoid(z[:hdim])
    f = sigmoid(z[hdim : 2 * hdim])
    o = sigmoid(z[2 * hdim : 3 * hdim])
    g = np.tanh(z[3 * hdim :])
    c = f * c_prev + i * g
    tc = np.tanh(c)
    h = o * tc
    cache = (x, h_prev, c_prev, i, f, o, g, tc)
    return h, c, cache


def lstm_step_backward(cache, p: LstmParams, dh, dc, grads):
    """Backward for one step; accumulates into grads dict keys 'w','u','b'.

    Returns (dx, dh_prev, dc_prev).
    """
    x, h_prev, c_prev, i, f, o, g, tc = cache
    do = dh * tc
    dc_total = dc + dh * o * (1.0 - tc * tc)
    di = dc_total * g
    df = dc_total * c_prev
    dg = dc_total * i
    dc_prev = dc_total * f
    dz = np.concatenate(
        [
            di * i * (1.0 - i),
            df * f * (1.0 - f),
            do * o * (1.0 - o),
            dg * (1.0 - g * g),
        ]
    )
    grads["w"] += np.outer(dz, x)
    grads["u"] += np.outer(dz, h_prev)
    grads["b"] += dz
    dx = p.w.T @ dz
    dh_prev = p.u.T @ dz
    return dx, dh_prev, dc_prev


def lstm_forward(seq: list[np.ndarray], p: LstmParams):
    """Run the cell over a sequence from zero state. Returns (hs, caches)."""
    h = np.zeros(p.hidden)
    c = np.zeros(p.hidden)
    hs, caches = [], []
    for x in seq:
        h, c, cache = lstm_step(x, h, c, p)
        hs.append(h)
        caches.append(cache)
    return hs, caches


def lstm_backward(caches, p: LstmParams, dhs):
    """BPTT over a stored forward run. dhs: per-step upstream dL/dh_t.

    Returns (dxs, grads) with grads keyed 'w','u','b'.
    """
    grads = {"w": np.zeros_like(p.w), "u": np.zeros_like(p.u), "b": np.zeros_like(p.b)}
    dh_next = np.zeros(p.hidden)
    dc_next = np.zeros(p.hidden)
    dxs = [None] * len(caches)
    for t in reversed(range(len(caches))):
        dx, dh_next, dc_next = lstm_step_backward(
            caches[t], p, dhs[t] + dh_next, dc_next, grads
        )
        dxs[t] = dx
    return dxs, grads


def bilstm_encode(seq: list[np.ndarray], fw: LstmParams, bw: LstmParams):
    """Encode a sequence both ways; output t = concat(forward h_t, backward h_t).

    Returns (outputs, cache) where cache feeds bilstm_backward.
    """
    if len(seq) == 0:
        raise EmptyInput("bilstm_encode of empty sequence")
    hs_f, caches_f = lstm_forward(seq, fw)
    hs_b_rev, caches_b = lstm_forward(list(reversed(seq)), bw)
    hs_b = list(reversed(hs_b_rev))
    outputs = [np.concatenate([hf, hb]) for hf, hb in zip(hs_f, hs_b)]
    return outputs, (caches_f, caches_b, fw.hidden, len(seq))


def bilstm_backward(cache, fw: LstmParams, bw: LstmParams, douts):
    """Backward through both directions. douts: per-position dL/d output_t.

    Returns (dxs, grads_fw, grads_bw).
    """
    caches_f, caches_b, hdim, length = cache
    dhs_f = [d[:hdim] for d in douts]
    dhs_b_rev = [douts[length - 1 - t][hdim:] for t in range(length)]
    dxs_f, grads_f = lstm_backward(caches_f, fw, dhs_f)
    dxs_b_rev, grads_b = lstm_backward(caches_b, bw, dhs_b_rev)
    dxs = [dxs_f[t] + dxs_b_rev[length - 1 - t] for t in range(length)]
    return dxs, grads_f, grads_b
