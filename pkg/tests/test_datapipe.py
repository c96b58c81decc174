import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from creatorkit.datapipe import (
    POPULAR,
    UNPOPULAR,
    VideoRecord,
    build_labeled_corpus,
    category_normalize,
    label_by_median,
    load_corpus,
    load_embeddings,
    normalize_views,
    read_feature_file,
    split_dataset,
    write_feature_file,
)
from creatorkit.errors import (
    ConfigError,
    DegenerateCategory,
    EmptyDataset,
    FormatError,
    MissingChannelStats,
)


def make_records(n):
    return [
        VideoRecord(
            video_id=f"v{i}", title=f"t{i}", channel_id="c", views=i,
            category=("a", "b"), channel_likes=10,
        )
        for i in range(n)
    ]


def test_normalize_views_examples():
    assert normalize_views(1000, 500) == 2.0
    assert normalize_views(0, 10) == 0.0
    with pytest.raises(MissingChannelStats):
        normalize_views(5, 0)


def test_label_by_median_examples():
    labels, med = label_by_median([1, 2, 3, 4])
    assert med == 2.5
    assert labels == [UNPOPULAR, UNPOPULAR, POPULAR, POPULAR]

    labels, med = label_by_median([2, 2, 2])
    assert med == 2
    assert labels == [UNPOPULAR] * 3

    labels, med = label_by_median([5])
    assert med == 5
    assert labels == [UNPOPULAR]

    with pytest.raises(EmptyDataset):
        label_by_median([])


@given(st.integers(min_value=1, max_value=50), st.integers(min_value=0, max_value=10000))
@settings(max_examples=100)
def test_label_by_median_odd_distinct_counts(half, seed):
    n = 2 * half + 1
    rng = np.random.RandomState(seed)
    scores = list(rng.permutation(n).astype(float))
    labels, med = label_by_median(scores)
    # brute-force oracle: strictly-greater-than-median comparison
    assert labels == [POPULAR if s > sorted(scores)[n // 2] else UNPOPULAR for s in scores]
    assert labels.count(POPULAR) == (n - 1) // 2


def test_split_sizes_80_10_10():
    train, val, test = split_dataset(make_records(10), (0.8, 0.1, 0.1), seed=0)
    assert (len(train), len(val), len(test)) == (8, 1, 1)


def test_split_deterministic_and_partition():
    records = make_records(23)
    a = split_dataset(records, seed=42)
    b = split_dataset(records, seed=42)
    for pa, pb in zip(a, b):
        assert [r.video_id for r in pa] == [r.video_id for r in pb]
    ids = [r.video_id for part in a for r in part]
    assert sorted(ids) == sorted(r.video_id for r in records)


def test_split_bad_ratios():
    with pytest.raises(ConfigError):
        split_dataset(make_records(4), (0.5, 0.5, 0.5))


@given(
    st.integers(min_value=0, max_value=200),
    st.integers(min_value=0, max_value=10000),
    st.tuples(
        st.floats(min_value=0, max_value=1),
        st.floats(min_value=0, max_value=1),
    ),
)
@settings(max_examples=100)
def test_split_partition_property(n, seed, rv):
    a, b = rv
    total = a + b
    if total > 1:
        a, b = a / (total + 1e-9), b / (total + 1e-9)
    # rounding can push 1 - a - b a hair below zero; the remainder is clamped
    ratios = (max(0.0, 1.0 - a - b), a, b)
    records = make_records(n)
    train, val, test = split_dataset(records, ratios, seed=seed)
    ids = sorted(r.video_id for part in (train, val, test) for r in part)
    assert ids == sorted(r.video_id for r in records)
    assert len(set(ids)) == n


def test_category_normalize_examples():
    out = category_normalize([("x", 2.0), ("x", 4.0), ("x", 6.0)])
    assert out == [0.5, 1.0, 1.5]
    assert category_normalize([("solo", 7.0)]) == [1.0]
    with pytest.raises(DegenerateCategory):
        category_normalize([("z", 0.0), ("z", 0.0)])


def test_category_normalize_median_is_one():
    rng = np.random.RandomState(0)
    scored = [
        (cat, float(rng.uniform(0.1, 9.0)))
        for cat in ["a", "b", "c"]
        for _ in range(rng.randint(1, 20))
    ]
    out = category_normalize(scored)
    for cat in "abc":
        vals = [o for (c, _), o in zip(scored, out) if c == cat]
        assert abs(np.median(vals) - 1.0) <= 1e-12


def test_load_embeddings(tmp_path):
    path = tmp_path / "emb.txt"
    path.write_text("cat 1 0 0\ndog 0 1 0\n")
    table = load_embeddings(path, expected_dim=3)
    assert len(table.entries) == 2
    vec, oov = table.lookup("cat")
    assert not oov
    np.testing.assert_array_equal(vec, [1, 0, 0])
    vec, oov = table.lookup("zebra")
    assert oov
    np.testing.assert_array_equal(vec, np.zeros(3))


def test_load_embeddings_format_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("cat 1 0 0\ndog 0 1\n")
    with pytest.raises(FormatError, match="2"):
        load_embeddings(path, expected_dim=3)
    path.write_text("cat 1 0\n")
    with pytest.raises(ConfigError):
        load_embeddings(path, expected_dim=3)


def test_feature_file_roundtrip(tmp_path):
    rng = np.random.RandomState(1)
    matrix = rng.randn(3, 4).astype(np.float32)
    path = tmp_path / "f.fvec"
    write_feature_file(path, matrix)
    np.testing.assert_array_equal(read_feature_file(path), matrix)


def test_feature_file_empty_and_corrupt(tmp_path):
    path = tmp_path / "empty.fvec"
    write_feature_file(path, np.zeros((0, 5), dtype=np.float32))
    out = read_feature_file(path)
    assert out.shape == (0, 5)

    bad = tmp_path / "bad.fvec"
    bad.write_bytes(b"NOPE" + b"\x00" * 8)
    with pytest.raises(FormatError):
        read_feature_file(bad)

    trunc = tmp_path / "trunc.fvec"
    write_feature_file(path, np.ones((2, 2), dtype=np.float32))
    trunc.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(FormatError):
        read_feature_file(trunc)


def test_load_corpus_with_channel_stats(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    rows = [
        {"video_id": "a", "title": "Cats", "channel_id": "c1", "views": 100,
         "category": ["animals", "cats"], "tags": ["cats"]},
        {"video_id": "b", "title": "Dogs", "channel_id": "c1", "views": 50,
         "category": ["animals", "dogs"], "tags": ["dogs"], "channel_likes": 25},
    ]
    corpus.write_text("\n".join(json.dumps(r) for r in rows))
    stats = tmp_path / "channels.jsonl"
    stats.write_text(json.dumps({"channel_id": "c1", "likes": 10}))
    records = load_corpus(corpus, stats)
    assert records[0].channel_likes == 10  # joined from stats file
    assert records[1].channel_likes == 25  # inline value wins

    labeled = build_labeled_corpus(records)
    assert labeled.examples[0][2] == POPULAR


def test_load_corpus_duplicate_id(tmp_path):
    corpus = tmp_path / "dup.jsonl"
    row = json.dumps({"video_id": "a", "title": "x", "channel_id": "c", "views": 1})
    corpus.write_text(row + "\n" + row)
    with pytest.raises(FormatError, match="duplicate"):
        load_corpus(corpus)
