import numpy as np
import pytest

from creatorkit.datapipe import EmbeddingTable, LabeledCorpus, VideoRecord, build_labeled_corpus

FILLERS = [
    "clip", "daily", "news", "fun", "with", "video", "watch", "best",
    "today", "cats", "dogs", "street", "live", "show", "short", "new",
]
POSITIVE_KEYWORD = "amazing"
NEGATIVE_KEYWORD = "boring"


def make_embeddings(dim=8, seed=7, extra_tokens=()):
    """Random Gaussian embedding table over the synthetic vocabulary."""
    rng = np.random.RandomState(seed)
    tokens = FILLERS + [POSITIVE_KEYWORD, NEGATIVE_KEYWORD] + list(extra_tokens)
    return EmbeddingTable(dim=dim, entries={t: rng.randn(dim) for t in tokens})


def synthetic_headline_corpus(n=1000, seed=0, title_len=6) -> LabeledCorpus:
    """Half the titles carry the popular keyword, half the unpopular one;
    views/likes are set so the median split reproduces those labels."""
    rng = np.random.RandomState(seed)
    records = []
    for i in range(n):
        words = [FILLERS[j] for j in rng.randint(0, len(FILLERS), title_len - 1)]
        positive = i % 2 == 0
        keyword = POSITIVE_KEYWORD if positive else NEGATIVE_KEYWORD
        words.insert(rng.randint(0, len(words) + 1), keyword)
        records.append(
            VideoRecord(
                video_id=f"v{i}",
                title=" ".join(words),
                channel_id="ch0",
                views=200 if positive else 50,
                category=("general", "misc"),
                channel_likes=100,
            )
        )
    return build_labeled_corpus(records)


def synthetic_opening_videos(n=200, dim=6, seed=0, signal_scale=3.0):
    """(features, label, signal_index) triples: positives carry one frame
    shifted along a fixed signal direction."""
    rng = np.random.RandomState(seed)
    direction = np.zeros(dim)
    direction[0] = 1.0
    direction[1] = -1.0
    videos = []
    for i in range(n):
        frames = [rng.randn(dim) for _ in range(18)]
        positive = i % 2 == 0
        signal_index = -1
        if positive:
            signal_index = int(rng.randint(0, 18))
            frames[signal_index] = frames[signal_index] + signal_scale * direction
        videos.append((frames, 1 if positive else 0, signal_index))
    return videos


def synthetic_patch_images(n=120, size=32, patch=8, seed=0):
    """(image, label, (y, x)) triples: positives carry a bright patch."""
    rng = np.random.RandomState(seed)
    images = []
    for i in range(n):
        img = rng.uniform(0.0, 0.25, size=(size, size, 1))
        positive = i % 2 == 0
        pos = (-1, -1)
        if positive:
            y = int(rng.randint(0, size - patch + 1))
            x = int(rng.randint(0, size - patch + 1))
            img[y : y + patch, x : x + patch, 0] = rng.uniform(0.85, 1.0, size=(patch, patch))
            pos = (y, x)
        images.append((img, 1 if positive else 0, pos))
    return images


@pytest.fixture(scope="session")
def small_embeddings():
    return make_embeddings()
