"""Corpus ingestion, popularity normalization and labeling, splits,
category de-biasing, embedding and feature-file loading.
"""
from __future__ import annotations

import json
import statistics
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    DegenerateCategory,
    EmptyDataset,
    FormatError,
    MissingChannelStats,
)

POPULAR = "popular"
UNPOPULAR = "unpopular"

FVEC_MAGIC = b"FVC1"


@dataclass
class VideoRecord:
    video_id: str
    title: str
    channel_id: str
    views: int
    category: tuple[str, str]
    tags: list[str] = field(default_factory=list)
    features_path: str | None = None
    published_at: str = ""
    channel_likes: int | None = None
    shares: int = 0
    comments: int = 0

    def __post_init__(self):
        if not self.video_id:
            raise FormatError("video_id must be nonempty")
        if self.views < 0:
            raise FormatError(f"negative views on {self.video_id}")
        self.category = tuple(self.category)  # type: ignore[assignment]


@dataclass
class EmbeddingTable:
    dim: int
    entries: dict[str, np.ndarray]

    def lookup(self, token: str) -> tuple[np.ndarray, bool]:
        """Returns (vector, oov_flag); unknown tokens map to the zero vector."""
        vec = self.entries.get(token)
        if vec is None:
            return np.zeros(self.dim), True
        return vec, False


@dataclass
class LabeledCorpus:
    examples: list[tuple[VideoRecord, float, str]]
    median_used: float


def load_corpus(path, channel_stats_path=None) -> list[VideoRecord]:
    """Read a JSON-lines corpus, one VideoRecord per line.

    channel_likes may be inlined per record or joined by channel_id from a
    separate channel-stats JSON-lines file ({channel_id, likes}).
    """
    likes_by_channel: dict[str, int] = {}
    if channel_stats_path is not None:
        with open(channel_stats_path, encoding="utf-8") as f:
            for line in f:
                if line.strip():
                    row = json.loads(line)
                    likes_by_channel[row["channel_id"]] = int(row["likes"])
    records = []
    seen = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"corpus line {lineno}: {exc}") from exc
            rec = VideoRecord(
                video_id=row["video_id"],
                title=row.get("title", ""),
                channel_id=row.get("channel_id", ""),
                views=int(row.get("views", 0)),
                category=tuple(row.get("category", ("", ""))),
                tags=list(row.get("tags", [])),
                features_path=row.get("features_path"),
                published_at=row.get("published_at", ""),
                channel_likes=row.get("channel_likes"),
                shares=int(row.get("shares", 0)),
                comments=int(row.get("comments", 0)),
            )
            if rec.channel_likes is None and rec.channel_id in likes_by_channel:
                rec.channel_likes = likes_by_channel[rec.channel_id]
            if rec.video_id in seen:
                raise FormatError(f"duplicate video_id {rec.video_id} at line {lineno}")
            seen.add(rec.video_id)
            records.append(rec)
    return records


def normalize_views(views: int, likes: int) -> float:
    """Views divided by channel likes, removing channel-size effects."""
    if likes is None or likes <= 0:
        raise MissingChannelStats(f"channel likes must be positive, got {likes}")
    if views < 0:
        raise FormatError(f"negative views {views}")
    return views / likes


def label_by_median(scores: list[float]) -> tuple[list[str], float]:
    """Binary labels against the corpus median; ties go to unpopular."""
    if not scores:
        raise EmptyDataset("label_by_median on empty scores")
    med = statistics.median(scores)
    labels = [POPULAR if s > med else UNPOPULAR for s in scores]
    return labels, med


def build_labeled_corpus(records: list[VideoRecord]) -> LabeledCorpus:
    """Normalize every record by its channel likes and median-split."""
    if not records:
        raise EmptyDataset("no records to label")
    scores = [normalize_views(r.views, r.channel_likes) for r in records]
    labels, med = label_by_median(scores)
    return LabeledCorpus(
        examples=list(zip(records, scores, labels)),
        median_used=med,
    )


def split_dataset(records, ratios=(0.8, 0.1, 0.1), seed=0):
    """Seeded shuffle, then contiguous train/val/test cut at floor boundaries;
    the remainder goes to train."""
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ConfigError(f"split ratios must be nonnegative and sum to 1, got {ratios}")
    n = len(records)
    order = np.random.RandomState(seed).permutation(n)
    n_val = int(np.floor(ratios[1] * n))
    n_test = int(np.floor(ratios[2] * n))
    n_train = n - n_val - n_test
    shuffled = [records[i] for i in order]
    return (
        shuffled[:n_train],
        shuffled[n_train : n_train + n_val],
        shuffled[n_train + n_val :],
    )


def category_normalize(scored: list[tuple[str, float]]) -> list[float]:
    """Divide each score by the median of its tier-1 category.

    Input is (category, score) pairs; output preserves order. After this,
    every category's median is exactly 1.
    """
    by_cat: dict[str, list[float]] = {}
    for cat, score in scored:
        by_cat.setdefault(cat, []).append(score)
    medians = {}
    for cat, vals in by_cat.items():
        med = statistics.median(vals)
        if med <= 0:
            raise DegenerateCategory(f"category {cat!r} has median {med}")
        medians[cat] = med
    return [score / medians[cat] for cat, score in scored]


def load_embeddings(path, expected_dim: int) -> EmbeddingTable:
    """Parse a plain-text embedding file: token then expected_dim reals per line."""
    entries: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            parts = line.split()
            if dim is None:
                dim = len(parts) - 1
                if dim != expected_dim:
                    raise ConfigError(
                        f"embedding dim {dim} does not match expected {expected_dim}"
                    )
            if len(parts) != dim + 1:
                raise FormatError(f"embedding line {lineno}: expected {dim + 1} fields")
            try:
                vec = np.array([float(v) for v in parts[1:]])
            except ValueError as exc:
                raise FormatError(f"embedding line {lineno}: {exc}") from exc
            entries[parts[0]] = vec
    return EmbeddingTable(dim=expected_dim, entries=entries)


def write_feature_file(path, matrix: np.ndarray) -> None:
    """FVEC writer: magic, dim and count as u32 LE, then f32 LE row-major."""
    matrix = np.asarray(matrix, dtype=np.float32)
    if matrix.ndim != 2:
        raise FormatError(f"feature matrix must be 2-d, got shape {matrix.shape}")
    with open(path, "wb") as f:
        f.write(FVEC_MAGIC)
        f.write(struct.pack("<II", matrix.shape[1], matrix.shape[0]))
        f.write(matrix.astype("<f4").tobytes())


def read_feature_file(path) -> np.ndarray:
    with open(path, "rb") as f:
        blob = f.read()
    return parse_feature_bytes(blob)


def parse_feature_bytes(blob: bytes) -> np.ndarray:
    if blob[:4] != FVEC_MAGIC:
        raise FormatError(f"bad feature-file magic {blob[:4]!r}")
    if len(blob) < 12:
        raise FormatError("truncated feature-file header")
    dim, count = struct.unpack("<II", blob[4:12])
    expected = 12 + 4 * dim * count
    if len(blob) != expected:
        raise FormatError(f"feature-file payload {len(blob)} bytes, expected {expected}")
    values = np.frombuffer(blob[12:], dtype="<f4")
    return values.reshape(count, dim).astype(np.float32)
