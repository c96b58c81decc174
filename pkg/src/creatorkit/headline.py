"""Headline popularity scoring: tokenizer, bi-LSTM + attention classifier,
per-word contribution output.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

import numpy as np

from .datapipe import POPULAR, EmbeddingTable, LabeledCorpus
from .errors import EmptyDataset, EmptyTitle, ShapeError
from .nnkern import (
    AttentionParams,
    LstmParams,
    TrainConfig,
    attention_backward,
    attention_pool,
    bilstm_backward,
    bilstm_encode,
    glorot_uniform,
    load_checkpoint,
    save_checkpoint,
    sigmoid,
    train_classifier,
)

MAX_TITLE_TOKENS = 30

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


def tokenize(title: str) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, keep the first 30 tokens."""
    tokens = [t for t in _TOKEN_SPLIT.split(title.lower()) if t]
    if not tokens:
        raise EmptyTitle(f"no tokens left after cleaning {title!r}")
    return tokens[:MAX_TITLE_TOKENS]


@dataclass
class HeadlineScore:
    probability_popular: float
    contributions: list[tuple[str, float]]
    oov_tokens: list[str]


class HeadlineModel:
    """Bi-LSTM encoder, additive attention pooling, sigmoid head.

    Embeddings are frozen inputs; only encoder/attention/head parameters
    train. Training examples are (list of embedding vectors, 0/1 label).
    """

    def __init__(self, embed_dim: int, hidden: int = 8, att_dim: int = 8, seed: int = 0):
        self.embed_dim = embed_dim
        self.hidden = hidden
        self.att_dim = att_dim
        rng = np.random.RandomState(seed)
        fw = LstmParams.init(rng, embed_dim, hidden)
        bw = LstmParams.init(rng, embed_dim, hidden)
        att = AttentionParams.init(rng, 2 * hidden, att_dim)
        self.params = {
            "fw.w": fw.w,
            "fw.u": fw.u,
            "fw.b": fw.b,
            "bw.w": bw.w,
            "bw.u": bw.u,
            "bw.b": bw.b,
            "att.wa": att.wa,
            "att.ba": att.ba,
            "att.v": att.v,
            "head.w": glorot_uniform(rng, (2 * hidden,)),
            "head.b": np.zeros(1),
        }

    def _views(self):
        p = self.params
        fw = LstmParams(p["fw.w"], p["fw.u"], p["fw.b"])
        bw = LstmParams(p["bw.w"], p["bw.u"], p["bw.b"])
        att = AttentionParams(p["att.wa"], p["att.ba"], p["att.v"])
        return fw, bw, att

    def forward(self, vecs: list[np.ndarray]):
        """Returns (probability, attention weights, cache)."""
        if vecs and vecs[0].shape[0] != self.embed_dim:
            raise ShapeError(
                f"embedding dim {vecs[0].shape[0]} does not match model {self.embed_dim}"
            )
        fw, bw, att = self._views()
        hs, enc_cache = bilstm_encode(vecs, fw, bw)
        context, alpha, att_cache = attention_pool(hs, att)
        logit = float(self.params["head.w"] @ context + self.params["head.b"][0])
        prob = float(sigmoid(np.array([logit]))[0])
        return prob, alpha, (enc_cache, att_cache, context)

    def example_loss_and_grads(self, vecs, y):
        """Binary cross-entropy loss and gradients for one title."""
        prob, _, (enc_cache, att_cache, context) = self.forward(vecs)
        eps = 1e-12
        loss = -(y * np.log(prob + eps) + (1 - y) * np.log(1 - prob + eps))
        dlogit = prob - y
        grads = {
            "head.w": dlogit * context,
            "head.b": np.array([dlogit]),
        }
        dcontext = dlogit * self.params["head.w"]
        fw, bw, att = self._views()
        dhs, att_grads = attention_backward(att_cache, att, dcontext)
        _, fw_grads, bw_grads = bilstm_backward(enc_cache, fw, bw, dhs)
        grads.update({f"att.{k}": v for k, v in att_grads.items()})
        grads.update({f"fw.{k}": v for k, v in fw_grads.items()})
        grads.update({f"bw.{k}": v for k, v in bw_grads.items()})
        return float(loss), grads

    def predict(self, vecs) -> int:
        return int(self.forward(vecs)[0] > 0.5)

    def loss_and_grads(self, batch):
        """Mean loss/grads over a batch of (vecs, label); gradient-check hook."""
        total = 0.0
        acc = {k: np.zeros_like(v) for k, v in self.params.items()}
        for vecs, y in batch:
            loss, grads = self.example_loss_and_grads(vecs, y)
            total += loss
            for k, g in grads.items():
                acc[k] += g
        n = len(batch)
        return total / n, {k: v / n for k, v in acc.items()}


def embed_title(tokens: list[str], embeddings: EmbeddingTable):
    """Map tokens to vectors; OOV tokens become zero vectors and are reported."""
    vecs, oov = [], []
    for tok in tokens:
        vec, is_oov = embeddings.lookup(tok)
        vecs.append(vec)
        if is_oov:
            oov.append(tok)
    return vecs, oov


def score_headline(title: str, model: HeadlineModel, embeddings: EmbeddingTable) -> HeadlineScore:
    tokens = tokenize(title)
    if embeddings.dim != model.embed_dim:
        raise ShapeError(
            f"embedding dim {embeddings.dim} does not match model {model.embed_dim}"
        )
    vecs, oov = embed_title(tokens, embeddings)
    prob, alpha, _ = model.forward(vecs)
    return HeadlineScore(
        probability_popular=prob,
        contributions=list(zip(tokens, [float(a) for a in alpha])),
        oov_tokens=oov,
    )


def train_headline_model(
    corpus: LabeledCorpus,
    embeddings: EmbeddingTable,
    cfg: TrainConfig,
    hidden: int = 8,
    att_dim: int = 8,
    val_fraction: float = 0.1,
    stop_at: float | None = None,
):
    """Train on median-split labels; returns (model, history) at the
    best-validation checkpoint. Deterministic under cfg.seed."""
    if not corpus.examples:
        raise EmptyDataset("empty labeled corpus")
    data = []
    for record, _, label in corpus.examples:
        try:
            tokens = tokenize(record.title)
        except EmptyTitle:
            continue
        vecs, _ = embed_title(tokens, embeddings)
        data.append((vecs, 1 if label == POPULAR else 0))
    if not data:
        raise EmptyDataset("no usable titles in corpus")
    rng = np.random.RandomState(cfg.seed)
    order = rng.permutation(len(data))
    n_val = max(1, int(val_fraction * len(data)))
    val = [data[i] for i in order[:n_val]]
    train = [data[i] for i in order[n_val:]] or val
    model = HeadlineModel(embeddings.dim, hidden=hidden, att_dim=att_dim, seed=cfg.seed)
    result = train_classifier(model, train, cfg, eval_data=val, stop_at=stop_at)
    return model, result.history


def save_headline_model(model: HeadlineModel, path, embeddings: EmbeddingTable | None = None):
    """NNK1 checkpoint plus a JSON sidecar describing the architecture."""
    save_checkpoint(path, model.params)
    vocab_hash = ""
    if embeddings is not None:
        digest = hashlib.sha256()
        for token in sorted(embeddings.entries):
            digest.update(token.encode("utf-8"))
        vocab_hash = digest.hexdigest()
    sidecar = {
        "embed_dim": model.embed_dim,
        "hidden": model.hidden,
        "att_dim": model.att_dim,
        "vocab_hash": vocab_hash,
    }
    with open(str(path) + ".json", "w", encoding="utf-8") as f:
        json.dump(sidecar, f)


def load_headline_model(path) -> HeadlineModel:
    with open(str(path) + ".json", encoding="utf-8") as f:
        sidecar = json.load(f)
    model = HeadlineModel(
        embed_dim=sidecar["embed_dim"],
        hidden=sidecar["hidden"],
        att_dim=sidecar["att_dim"],
    )
    loaded = load_checkpoint(path)
    for k in model.params:
        model.params[k][...] = loaded[k]
    return model
