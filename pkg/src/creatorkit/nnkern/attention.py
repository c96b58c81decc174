"""Additive attention pooling: e_t = v . tanh(Wa h_t + ba), alpha = softmax(e),
context = sum_t alpha_t h_t.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, ShapeError
from .ops import glorot_uniform, softmax, softmax_backward


@dataclass
class AttentionParams:
    wa: np.ndarray  # (A x H)
    ba: np.ndarray  # (A,)
    v: np.ndarray  # (A,)

    @classmethod
    def init(cls, rng: np.random.RandomState, input_dim: int, att_dim: int) -> "AttentionParams":
        return cls(
            wa=glorot_uniform(rng, (att_dim, input_dim)),
            ba=np.zeros(att_dim),
            v=glorot_uniform(rng, (att_dim,)),
        )


def attention_pool(hs: list[np.ndarray], p: AttentionParams):
    """Returns (context, weights, cache). Weights sum to 1."""
    if len(hs) == 0:
        raise EmptyInput("attention_pool over empty sequence")
    hdim = p.wa.shape[1]
    for h in hs:
        if np.shape(h) != (hdim,):
            raise ShapeError(f"attention input dim {np.shape(h)} vs params H={hdim}")
    us = [np.tanh(p.wa @ h + p.ba) for h in hs]
    scores = np.array([p.v @ u for u in us])
    alpha = softmax(scores)
    context = np.sum([a * h for a, h in zip(alpha, hs)], axis=0)
    return context, alpha, (hs, us, alpha)


def attention_backward(cache, p: AttentionParams, dcontext, dalpha_extra=None):
    """Backward pass. Returns (dhs, grads) with grads keyed 'wa','ba','v'."""
    hs, us, alpha = cache
    length = len(hs)
    dalpha = np.array([np.dot(dcontext, h) for h in hs])
    if dalpha_extra is not None:
        dalpha = dalpha + dalpha_extra
    dhs = [alpha[t] * dcontext for t in range(length)]
    de = softmax_backward(alpha, dalpha)
    grads = {"wa": np.zeros_like(p.wa), "ba": np.zeros_like(p.ba), "v": np.zeros_like(p.v)}
    for t in range(length):
        grads["v"] += de[t] * us[t]
        dpre = de[t] * p.v * (1.0 - us[t] * us[t])
        grads["wa"] += np.outer(dpre, hs[t])
        grads["ba"] += dpre
        dhs[t] = dhs[t] + p.wa.T @ dpre
    return dhs, grads
