"""Archive access: inverted tag index, per-tag interaction statistics, and a
dense+ReLU+softmax topic classifier over fixed-size text embeddings.
"""
from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field

import numpy as np

from .datapipe import EmbeddingTable, VideoRecord
from .errors import ConfigError, NoVideos, ShapeError
from .nnkern import glorot_uniform, relu, softmax

TEXT_EMBED_DIM = 400

METRICS = ("views", "shares", "comments")


@dataclass
class TagIndex:
    by_tag: dict[str, list[str]] = field(default_factory=dict)
    records: dict[str, VideoRecord] = field(default_factory=dict)

    @property
    def vocabulary(self) -> list[str]:
        return sorted(self.by_tag)


@dataclass
class TagStats:
    tag: str
    metric: str
    count: int
    mean: float
    median: float
    total: int


def build_tag_index(corpus: list[VideoRecord]) -> TagIndex:
    """Index every (tag, video) pair; tags are lowercased and deduplicated,
    empty or whitespace-only tags are dropped."""
    by_tag: dict[str, set[str]] = {}
    records = {}
    for rec in corpus:
        records[rec.video_id] = rec
        for raw in rec.tags:
            tag = raw.strip().lower()
            if not tag:
                continue
            by_tag.setdefault(tag, set()).add(rec.video_id)
    return TagIndex(
        by_tag={tag: sorted(ids) for tag, ids in by_tag.items()},
        records=records,
    )


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def suggest_tags(index: TagIndex, tag: str, max_distance: int = 2, limit: int = 3) -> list[str]:
    """Closest known tags by edit distance; ties resolved alphabetically."""
    scored = []
    for known in index.vocabulary:
        d = levenshtein(tag, known)
        if d <= max_distance:
            scored.append((d, known))
    scored.sort()
    return [t for _, t in scored[:limit]]


def query_by_tag(index: TagIndex, tag: str) -> tuple[list[VideoRecord], list[str]]:
    """Case-insensitive exact lookup. Unknown tags return an empty list plus
    up to three near-miss suggestions (edit distance <= 2)."""
    key = tag.strip().lower()
    ids = index.by_tag.get(key)
    if ids is None:
        return [], suggest_tags(index, key)
    return [index.records[i] for i in ids], []


def tag_stats(index: TagIndex, tag: str, metric: str = "views") -> TagStats:
    if metric not in METRICS:
        raise ConfigError(f"unknown metric {metric!r}; expected one of {METRICS}")
    key = tag.strip().lower()
    ids = index.by_tag.get(key)
    if not ids:
        raise NoVideos(f"no videos tagged {tag!r}")
    values = [getattr(index.records[i], metric) for i in ids]
    return TagStats(
        tag=key,
        metric=metric,
        count=len(values),
        mean=float(np.mean(values)),
        median=float(statistics.median(values)),
        total=int(sum(values)),
    )


def save_index(index: TagIndex, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(index.by_tag, f, indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# Topic classification over the flattened two-tier category set.
# ---------------------------------------------------------------------------


class TopicClassifier:
    """dense -> ReLU -> dense -> softmax over joint (tier1, tier2) classes."""

    def __init__(self, classes: list[tuple[str, str]], hidden: int = 32,
                 input_dim: int = TEXT_EMBED_DIM, seed: int = 0):
        if not classes:
            raise ConfigError("topic classifier needs at least one class")
        rng = np.random.RandomState(seed)
        self.classes = [tuple(c) for c in classes]
        self.input_dim = input_dim
        self.params = {
            "w1": glorot_uniform(rng, (hidden, input_dim)),
            "b1": np.zeros(hidden),
            "w2": glorot_uniform(rng, (len(classes), hidden)),
            "b2": np.zeros(len(classes)),
        }

    def forward(self, embedding: np.ndarray) -> np.ndarray:
        embedding = np.asarray(embedding, dtype=np.float64)
        if embedding.shape != (self.input_dim,):
            raise ShapeError(f"embedding dim {embedding.shape} vs classifier {self.input_dim}")
        h = relu(self.params["w1"] @ embedding + self.params["b1"])
        return softmax(self.params["w2"] @ h + self.params["b2"])

    def example_loss_and_grads(self, x, y: int):
        x = np.asarray(x, dtype=np.float64)
        z1 = self.params["w1"] @ x + self.params["b1"]
        h = relu(z1)
        probs = softmax(self.params["w2"] @ h + self.params["b2"])
        loss = -np.log(probs[y] + 1e-12)
        dz2 = probs.copy()
        dz2[y] -= 1.0
        dh = self.params["w2"].T @ dz2
        dz1 = dh * (z1 > 0)
        grads = {
            "w2": np.outer(dz2, h),
            "b2": dz2,
            "w1": np.outer(dz1, x),
            "b1": dz1,
        }
        return float(loss), grads

    def predict(self, x) -> int:
        return int(np.argmax(self.forward(x)))

    def loss_and_grads(self, batch):
        total = 0.0
        acc = {k: np.zeros_like(v) for k, v in self.params.items()}
        for x, y in batch:
            loss, grads = self.example_loss_and_grads(x, y)
            total += loss
            for k, g in grads.items():
                acc[k] += g
        n = len(batch)
        return total / n, {k: v / n for k, v in acc.items()}

    def relu_kink_margin(self, batch) -> float:
        margin = np.inf
        for x, _ in batch:
            z1 = self.params["w1"] @ np.asarray(x, dtype=np.float64) + self.params["b1"]
            margin = min(margin, float(np.min(np.abs(z1))))
        return margin


def text_embedding(tokens: list[str], table: EmbeddingTable) -> np.ndarray:
    """Document vector = mean of per-token vectors (OOV tokens contribute 0)."""
    if not tokens:
        return np.zeros(table.dim)
    return np.mean([table.lookup(t)[0] for t in tokens], axis=0)


def classify_topic(embedding: np.ndarray, classifier: TopicClassifier):
    """Returns (distribution over classes, argmax (tier1, tier2) pair)."""
    probs = classifier.forward(embedding)
    return probs, classifier.classes[int(np.argmax(probs))]
