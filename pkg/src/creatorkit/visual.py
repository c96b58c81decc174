"""Frame sampling, thumbnail scoring and recommendation, opening-scene
popularity model, built-in tiny CNN feature extractor, and gradient-weighted
saliency maps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, EmptyInput, EmptyVideo, FormatError, ShapeError
from .nnkern import (
    AttentionParams,
    attention_backward,
    attention_pool,
    conv3x3_backward,
    conv3x3_forward,
    global_avg_pool_backward,
    global_avg_pool_forward,
    glorot_uniform,
    maxpool2_backward,
    maxpool2_forward,
    relu,
    sigmoid,
)

OPENING_FRAME_COUNT = 18
OPENING_WINDOW_SECONDS = 6.0
THUMBNAIL_FRAME_COUNT = 40


def sample_frame_indices(total_frames: int, k: int = THUMBNAIL_FRAME_COUNT) -> list[int]:
    """Uniformly spaced frame indices covering the whole video.

    For N > k: index_i = floor(i * (N-1) / (k-1)), so the first and last
    frames are always included.
    """
    if total_frames == 0:
        raise EmptyVideo("video has no frames")
    if total_frames < 0 or k < 1:
        raise ConfigError(f"bad sampling args N={total_frames}, k={k}")
    if total_frames <= k:
        return list(range(total_frames))
    return [i * (total_frames - 1) // (k - 1) for i in range(k)]


def opening_frame_indices(fps: float, duration_s: float, total_frames: int | None = None) -> list[int]:
    """18 evenly spaced frame indices over the first six seconds (or the whole
    video when shorter). Indices are clamped to the last available frame."""
    if fps <= 0:
        raise ConfigError(f"fps must be positive, got {fps}")
    if duration_s <= 0:
        raise EmptyVideo(f"duration must be positive, got {duration_s}")
    window = min(OPENING_WINDOW_SECONDS, duration_s)
    if total_frames is None:
        total_frames = max(1, int(np.ceil(duration_s * fps)))
    last = total_frames - 1
    indices = []
    for i in range(OPENING_FRAME_COUNT):
        t = i * window / OPENING_FRAME_COUNT
        indices.append(min(int(np.floor(t * fps)), last))
    return indices


# ---------------------------------------------------------------------------
# Thumbnail head: single dense + sigmoid over frozen backbone features.
# ---------------------------------------------------------------------------


class ThumbnailHead:
    """Binary logistic head over fixed feature vectors (last-layer fine-tune)."""

    def __init__(self, feature_dim: int, seed: int = 0):
        rng = np.random.RandomState(seed)
        self.feature_dim = feature_dim
        self.params = {
            "w": glorot_uniform(rng, (feature_dim,)),
            "b": np.zeros(1),
        }

    def score(self, feature: np.ndarray) -> float:
        if feature.shape != (self.feature_dim,):
            raise ShapeError(f"feature dim {feature.shape} vs head {self.feature_dim}")
        return float(sigmoid(np.array([self.params["w"] @ feature + self.params["b"][0]]))[0])

    def example_loss_and_grads(self, x, y):
        p = self.score(x)
        eps = 1e-12
        loss = -(y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps))
        d = p - y
        return float(loss), {"w": d * x, "b": np.array([d])}

    def predict(self, x) -> int:
        return int(self.score(x) > 0.5)


def score_frames(features: list[np.ndarray], head: ThumbnailHead) -> list[float]:
    """Per-frame popularity scores in [0,1]."""
    return [head.score(np.asarray(f, dtype=np.float64)) for f in features]


def recommend_thumbnail(scores: list[float]) -> int:
    """Index of the highest-scoring frame; ties go to the lowest index."""
    if len(scores) == 0:
        raise EmptyInput("no frame scores to rank")
    return int(np.argmax(scores))


# ---------------------------------------------------------------------------
# Opening-scene model: shared dense projection, attention pooling, sigmoid.
# ---------------------------------------------------------------------------


@dataclass
class OpeningScore:
    probability_popular: float
    frame_attention: list[float]


class OpeningModel:
    """Classifies the 18-frame opening window from per-frame features."""

    def __init__(self, feature_dim: int, proj_dim: int = 8, att_dim: int = 8, seed: int = 0):
        rng = np.random.RandomState(seed)
        self.feature_dim = feature_dim
        self.proj_dim = proj_dim
        att = AttentionParams.init(rng, proj_dim, att_dim)
        self.params = {
            "proj.w": glorot_uniform(rng, (proj_dim, feature_dim)),
            "proj.b": np.zeros(proj_dim),
            "att.wa": att.wa,
            "att.ba": att.ba,
            "att.v": att.v,
            "head.w": glorot_uniform(rng, (proj_dim,)),
            "head.b": np.zeros(1),
        }

    def forward(self, features: list[np.ndarray]):
        if len(features) != OPENING_FRAME_COUNT:
            raise ShapeError(
                f"score_opening needs exactly {OPENING_FRAME_COUNT} frames, got {len(features)}"
            )
        feats = [np.asarray(f, dtype=np.float64) for f in features]
        for f in feats:
            if f.shape != (self.feature_dim,):
                raise ShapeError(f"feature dim {f.shape} vs model {self.feature_dim}")
        hs = [np.tanh(self.params["proj.w"] @ f + self.params["proj.b"]) for f in feats]
        att = AttentionParams(self.params["att.wa"], self.params["att.ba"], self.params["att.v"])
        context, alpha, att_cache = attention_pool(hs, att)
        logit = float(self.params["head.w"] @ context + self.params["head.b"][0])
        prob = float(sigmoid(np.array([logit]))[0])
        return prob, alpha, (feats, hs, att_cache, context)

    def example_loss_and_grads(self, features, y):
        prob, _, (feats, hs, att_cache, context) = self.forward(features)
        eps = 1e-12
        loss = -(y * np.log(prob + eps) + (1 - y) * np.log(1 - prob + eps))
        dlogit = prob - y
        grads = {
            "head.w": dlogit * context,
            "head.b": np.array([dlogit]),
            "proj.w": np.zeros_like(self.params["proj.w"]),
            "proj.b": np.zeros_like(self.params["proj.b"]),
        }
        dcontext = dlogit * self.params["head.w"]
        att = AttentionParams(self.params["att.wa"], self.params["att.ba"], self.params["att.v"])
        dhs, att_grads = attention_backward(att_cache, att, dcontext)
        grads.update({f"att.{k}": v for k, v in att_grads.items()})
        for f, h, dh in zip(feats, hs, dhs):
            dpre = dh * (1.0 - h * h)
            grads["proj.w"] += np.outer(dpre, f)
            grads["proj.b"] += dpre
        return float(loss), grads

    def predict(self, features) -> int:
        return int(self.forward(features)[0] > 0.5)

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


def score_opening(features: list[np.ndarray], model: OpeningModel) -> OpeningScore:
    prob, alpha, _ = model.forward(features)
    return OpeningScore(probability_popular=prob, frame_attention=[float(a) for a in alpha])


# ---------------------------------------------------------------------------
# Tiny CNN backbone: conv3x3(8) -> ReLU -> pool2 -> conv3x3(16) -> ReLU ->
# pool2 -> global average pool -> 16-d features.
# ---------------------------------------------------------------------------

TINYCNN_FEATURE_DIM = 16


class TinyCnn:
    """Built-in differentiable backbone; stands in for an external feature
    extractor when end-to-end saliency is needed."""

    def __init__(self, in_channels: int = 3, seed: int = 0):
        rng = np.random.RandomState(seed)
        self.in_channels = in_channels
        self.params = {
            "c1.k": glorot_uniform(rng, (8, 3, 3, in_channels)),
            "c1.b": np.zeros(8),
            "c2.k": glorot_uniform(rng, (16, 3, 3, 8)),
            "c2.b": np.zeros(16),
            "head.w": glorot_uniform(rng, (TINYCNN_FEATURE_DIM,)),
            "head.b": np.zeros(1),
        }

    def _check_image(self, image: np.ndarray) -> np.ndarray:
        image = np.asarray(image, dtype=np.float64)
        if image.ndim != 3 or image.shape[2] != self.in_channels:
            raise ShapeError(f"expected HxWx{self.in_channels} image, got {image.shape}")
        if image.shape[0] < 8 or image.shape[1] < 8:
            raise ShapeError(f"image {image.shape[:2]} too small; need at least 8x8")
        return image

    def forward(self, image: np.ndarray):
        """Full forward pass with cached intermediates for backward."""
        image = self._check_image(image)
        z1 = conv3x3_forward(image, self.params["c1.k"], self.params["c1.b"])
        a1 = relu(z1)
        p1, pool1_cache = maxpool2_forward(a1)
        z2 = conv3x3_forward(p1, self.params["c2.k"], self.params["c2.b"])
        a2 = relu(z2)
        p2, pool2_cache = maxpool2_forward(a2)
        features = global_avg_pool_forward(p2)
        logit = float(self.params["head.w"] @ features + self.params["head.b"][0])
        prob = float(sigmoid(np.array([logit]))[0])
        cache = (image, z1, a1, p1, pool1_cache, z2, a2, p2, pool2_cache, features)
        return prob, cache

    def extract(self, image: np.ndarray):
        """(16-d feature vector, retained activation maps) for one image.

        The retained maps are the post-pool activations the classifier
        averages over; saliency is computed against them.
        """
        _, cache = self.forward(image)
        return cache[9].copy(), cache[7].copy()

    def example_loss_and_grads(self, image, y):
        prob, cache = self.forward(image)
        image, z1, a1, p1, pool1_cache, z2, a2, p2, pool2_cache, features = cache
        eps = 1e-12
        loss = -(y * np.log(prob + eps) + (1 - y) * np.log(1 - prob + eps))
        dlogit = prob - y
        grads = {"head.w": dlogit * features, "head.b": np.array([dlogit])}
        dfeat = dlogit * self.params["head.w"]
        dp2 = global_avg_pool_backward(p2.shape, dfeat)
        da2 = maxpool2_backward(pool2_cache, dp2)
        dz2 = da2 * (z2 > 0)
        dp1, dk2, db2 = conv3x3_backward(p1, self.params["c2.k"], dz2)
        da1 = maxpool2_backward(pool1_cache, dp1)
        dz1 = da1 * (z1 > 0)
        _, dk1, db1 = conv3x3_backward(image, self.params["c1.k"], dz1)
        grads.update({"c1.k": dk1, "c1.b": db1, "c2.k": dk2, "c2.b": db2})
        return float(loss), grads

    def predict(self, image) -> int:
        return int(self.forward(image)[0] > 0.5)

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
        """Min |pre-activation| over both ReLU layers on the batch."""
        margin = np.inf
        for x, _ in batch:
            image = self._check_image(x)
            z1 = conv3x3_forward(image, self.params["c1.k"], self.params["c1.b"])
            p1, _ = maxpool2_forward(relu(z1))
            z2 = conv3x3_forward(p1, self.params["c2.k"], self.params["c2.b"])
            margin = min(margin, float(np.min(np.abs(z1))), float(np.min(np.abs(z2))))
        return margin

    def saliency_inputs(self, image: np.ndarray):
        """(activations, d logit / d activations) for the retained maps."""
        _, cache = self.forward(image)
        p2 = cache[7]
        h, w, _ = p2.shape
        grads = np.broadcast_to(self.params["head.w"] / (h * w), p2.shape).copy()
        return p2.copy(), grads


def tinycnn_extract(image: np.ndarray, model: TinyCnn):
    """Module-level convenience wrapper around TinyCnn.extract."""
    return model.extract(image)


# ---------------------------------------------------------------------------
# Gradient-weighted saliency (class-activation heatmaps).
# ---------------------------------------------------------------------------


@dataclass
class SaliencyMap:
    grid: np.ndarray  # (H, W) values in [0, 1]
    frame_index: int = 0
    raw_min: float = 0.0
    raw_max: float = 0.0


def bilinear_resize(grid: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Corner-aligned bilinear interpolation of a 2-d grid."""
    h, w = grid.shape
    ys = np.linspace(0, h - 1, out_h) if out_h > 1 else np.zeros(1)
    xs = np.linspace(0, w - 1, out_w) if out_w > 1 else np.zeros(1)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    top = grid[np.ix_(y0, x0)] * (1 - fx) + grid[np.ix_(y0, x1)] * fx
    bot = grid[np.ix_(y1, x0)] * (1 - fx) + grid[np.ix_(y1, x1)] * fx
    return top * (1 - fy) + bot * fy


def gradcam(
    activations: np.ndarray,
    gradients: np.ndarray,
    target_hw: tuple[int, int],
    frame_index: int = 0,
) -> SaliencyMap:
    """Channel weights = spatial mean of the class-score gradients;
    heat = ReLU of the weighted activation sum, min-max normalized and
    bilinearly upsampled to the source frame size."""
    activations = np.asarray(activations, dtype=np.float64)
    gradients = np.asarray(gradients, dtype=np.float64)
    if activations.shape != gradients.shape or activations.ndim != 3:
        raise ShapeError(
            f"activations {activations.shape} vs gradients {gradients.shape}"
        )
    weights = gradients.mean(axis=(0, 1))
    heat = relu(np.tensordot(activations, weights, axes=([2], [0])))
    raw_min, raw_max = float(heat.min()), float(heat.max())
    if raw_max == 0.0:
        norm = np.zeros_like(heat)
    elif raw_max == raw_min:
        norm = np.ones_like(heat)
    else:
        norm = (heat - raw_min) / (raw_max - raw_min)
    grid = bilinear_resize(norm, target_hw[0], target_hw[1])
    return SaliencyMap(
        grid=np.clip(grid, 0.0, 1.0),
        frame_index=frame_index,
        raw_min=raw_min,
        raw_max=raw_max,
    )


# ---------------------------------------------------------------------------
# Frame image IO: binary PPM (P6) and PGM (P5), 8-bit.
# ---------------------------------------------------------------------------


def _parse_netpbm_header(blob: bytes, magic: bytes):
    if not blob.startswith(magic):
        raise FormatError(f"expected {magic.decode()} file, got {blob[:2]!r}")
    fields: list[int] = []
    pos = 2
    while len(fields) < 3:
        while pos < len(blob) and blob[pos : pos + 1].isspace():
            pos += 1
        if pos < len(blob) and blob[pos : pos + 1] == b"#":
            while pos < len(blob) and blob[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated netpbm header")
        fields.append(int(blob[start:pos]))
    return fields[0], fields[1], fields[2], pos + 1


def parse_ppm_bytes(blob: bytes) -> np.ndarray:
    """P6 bytes -> (H, W, 3) floats in [0, 1]."""
    width, height, maxval, offset = _parse_netpbm_header(blob, b"P6")
    expected = width * height * 3
    payload = blob[offset : offset + expected]
    if len(payload) != expected:
        raise FormatError(f"ppm payload {len(payload)} bytes, expected {expected}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return pixels.astype(np.float64) / maxval


def parse_pgm_bytes(blob: bytes) -> np.ndarray:
    """P5 bytes -> (H, W) floats in [0, 1]."""
    width, height, maxval, offset = _parse_netpbm_header(blob, b"P5")
    expected = width * height
    payload = blob[offset : offset + expected]
    if len(payload) != expected:
        raise FormatError(f"pgm payload {len(payload)} bytes, expected {expected}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return pixels.astype(np.float64) / maxval


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as f:
        return parse_ppm_bytes(f.read())


def write_ppm(path, image: np.ndarray) -> None:
    image = np.asarray(image)
    pixels = np.clip(np.round(image * 255), 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(f"P6\n{image.shape[1]} {image.shape[0]}\n255\n".encode())
        f.write(pixels.tobytes())


def pgm_bytes(grid: np.ndarray) -> bytes:
    pixels = np.clip(np.round(np.asarray(grid) * 255), 0, 255).astype(np.uint8)
    header = f"P5\n{grid.shape[1]} {grid.shape[0]}\n255\n".encode()
    return header + pixels.tobytes()


def write_pgm(path, grid: np.ndarray) -> None:
    with open(path, "wb") as f:
        f.write(pgm_bytes(grid))


def save_saliency(saliency: SaliencyMap, path) -> None:
    """PGM heat grid plus a JSON sidecar with the pre-normalization range."""
    write_pgm(path, saliency.grid)
    sidecar = {
        "frame_index": saliency.frame_index,
        "min": saliency.raw_min,
        "max": saliency.raw_max,
    }
    with open(str(path) + ".json", "w", encoding="utf-8") as f:
        json.dump(sidecar, f)
