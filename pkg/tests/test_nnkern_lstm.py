import numpy as np
import pytest

from creatorkit.errors import EmptyInput, ShapeError
from creatorkit.nnkern import (
    LstmParams,
    bilstm_backward,
    bilstm_encode,
    gradient_check,
    lstm_backward,
    lstm_forward,
    lstm_step,
)


def zero_params(d, h):
    return LstmParams(w=np.zeros((4 * h, d)), u=np.zeros((4 * h, h)), b=np.zeros(4 * h))


def test_all_zero_step_is_zero():
    p = zero_params(3, 2)
    h, c, _ = lstm_step(np.zeros(3), np.zeros(2), np.zeros(2), p)
    np.testing.assert_array_equal(h, 0.0)
    np.testing.assert_array_equal(c, 0.0)


def test_saturated_gates_carry_cell_state():
    hdim = 3
    p = zero_params(2, hdim)
    p.b[hdim : 2 * hdim] = 20.0  # forget gate ~ 1
    p.b[:hdim] = -20.0  # input gate ~ 0
    c_prev = np.array([0.3, -0.7, 1.1])
    _, c, _ = lstm_step(np.zeros(2), np.zeros(hdim), c_prev, p)
    np.testing.assert_allclose(c, c_prev, atol=1e-6)


def test_step_dim_mismatch():
    p = zero_params(3, 2)
    with pytest.raises(ShapeError):
        lstm_step(np.zeros(4), np.zeros(2), np.zeros(2), p)


class LstmSeqModel:
    """Gradient-check wrapper: loss = sum_t ||h_t||^2 over one sequence."""

    def __init__(self, seed=0, d=3, h=4):
        rng = np.random.RandomState(seed)
        self.p = LstmParams.init(rng, d, h)
        self.params = {"w": self.p.w, "u": self.p.u, "b": self.p.b}

    def loss_and_grads(self, seq):
        hs, caches = lstm_forward(seq, self.p)
        loss = sum(float(h @ h) for h in hs)
        _, grads = lstm_backward(caches, self.p, [2.0 * h for h in hs])
        return loss, grads


def test_lstm_gradients_match_finite_differences():
    model = LstmSeqModel(seed=1)
    rng = np.random.RandomState(2)
    seq = [rng.randn(3) for _ in range(5)]
    assert gradient_check(model, seq, eps=1e-4) <= 1e-4


def test_bilstm_shapes_and_empty():
    rng = np.random.RandomState(0)
    fw = LstmParams.init(rng, 3, 4)
    bw = LstmParams.init(rng, 3, 4)
    outs, _ = bilstm_encode([np.ones(3)], fw, bw)
    assert len(outs) == 1 and outs[0].shape == (8,)
    with pytest.raises(EmptyInput):
        bilstm_encode([], fw, bw)


def test_bilstm_reversal_oracle():
    """Swapping directions and reversing the input mirrors the halves."""
    rng = np.random.RandomState(4)
    fw = LstmParams.init(rng, 3, 4)
    bw = LstmParams.init(rng, 3, 4)
    seq = [rng.randn(3) for _ in range(6)]
    outs, _ = bilstm_encode(seq, fw, bw)
    outs_rev, _ = bilstm_encode(list(reversed(seq)), bw, fw)
    length = len(seq)
    for t in range(length):
        np.testing.assert_allclose(outs_rev[t][4:], outs[length - 1 - t][:4], atol=1e-12)
        np.testing.assert_allclose(outs_rev[t][:4], outs[length - 1 - t][4:], atol=1e-12)


class BilstmModel:
    """Gradient-check wrapper: loss = sum_t ||out_t||^2."""

    def __init__(self, seed=0, d=3, h=3):
        rng = np.random.RandomState(seed)
        self.fw = LstmParams.init(rng, d, h)
        self.bw = LstmParams.init(rng, d, h)
        self.params = {
            "fw.w": self.fw.w, "fw.u": self.fw.u, "fw.b": self.fw.b,
            "bw.w": self.bw.w, "bw.u": self.bw.u, "bw.b": self.bw.b,
        }

    def loss_and_grads(self, seq):
        outs, cache = bilstm_encode(seq, self.fw, self.bw)
        loss = sum(float(o @ o) for o in outs)
        _, gf, gb = bilstm_backward(cache, self.fw, self.bw, [2.0 * o for o in outs])
        grads = {f"fw.{k}": v for k, v in gf.items()}
        grads.update({f"bw.{k}": v for k, v in gb.items()})
        return loss, grads


def test_bilstm_gradients_match_finite_differences():
    model = BilstmModel(seed=5)
    rng = np.random.RandomState(6)
    seq = [rng.randn(3) for _ in range(4)]
    assert gradient_check(model, seq, eps=1e-4) <= 1e-4
