"""Minimal deterministic neural kernels with analytic backward passes."""

from .attention import AttentionParams, attention_backward, attention_pool
from .checkpoint import load_checkpoint, save_checkpoint
from .conv import (
    conv3x3_backward,
    conv3x3_forward,
    global_avg_pool_backward,
    global_avg_pool_forward,
    maxpool2_backward,
    maxpool2_forward,
)
from .gradcheck import gradient_check
from .lstm import (
    LstmParams,
    bilstm_backward,
    bilstm_encode,
    lstm_backward,
    lstm_forward,
    lstm_step,
    lstm_step_backward,
)
from .ops import (
    dense_backward,
    dense_forward,
    glorot_uniform,
    relu,
    sigmoid,
    softmax,
    softmax_backward,
)
from .train import TrainConfig, TrainResult, train_classifier

__all__ = [
    "AttentionParams",
    "LstmParams",
    "TrainConfig",
    "TrainResult",
    "attention_backward",
    "attention_pool",
    "bilstm_backward",
    "bilstm_encode",
    "conv3x3_backward",
    "conv3x3_forward",
    "dense_backward",
    "dense_forward",
    "global_avg_pool_backward",
    "global_avg_pool_forward",
    "glorot_uniform",
    "gradient_check",
    "load_checkpoint",
    "lstm_backward",
    "lstm_forward",
    "lstm_step",
    "lstm_step_backward",
    "maxpool2_backward",
    "maxpool2_forward",
    "relu",
    "save_checkpoint",
    "sigmoid",
    "softmax",
    "softmax_backward",
    "train_classifier",
]
