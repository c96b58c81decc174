import json

import numpy as np

from conftest import make_embeddings, synthetic_headline_corpus
from creatorkit.cli import main, read_config
from creatorkit.datapipe import write_feature_file


def write_corpus(path, n=60):
    corpus = synthetic_headline_corpus(n=n, seed=0)
    with open(path, "w") as f:
        for rec, _, _ in corpus.examples:
            f.write(json.dumps({
                "video_id": rec.video_id,
                "title": rec.title,
                "channel_id": rec.channel_id,
                "views": rec.views,
                "category": list(rec.category),
                "tags": ["cats"] if rec.views > 100 else ["dogs"],
                "channel_likes": rec.channel_likes,
            }) + "\n")


def write_embeddings(path):
    emb = make_embeddings()
    with open(path, "w") as f:
        for token, vec in emb.entries.items():
            f.write(token + " " + " ".join(f"{v:.6f}" for v in vec) + "\n")


def test_read_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text('epochs = 3\nlearning_rate = 0.5  # fast\n\n# comment\nhidden="4"\n')
    assert read_config(cfg) == {"epochs": "3", "learning_rate": "0.5", "hidden": "4"}


def test_index_command(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus)
    out = tmp_path / "index.json"
    assert main(["index", "--corpus", str(corpus), "--out", str(out)]) == 0
    index = json.loads(out.read_text())
    assert set(index) == {"cats", "dogs"}


def test_ab_command(capsys):
    assert main(["ab", "--group-a", "100,100", "--group-b", "112.9,112.9",
                 "--resamples", "50"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert abs(body["lift_percent"] - 12.9) <= 1e-9


def test_train_and_score_headline(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    embeddings = tmp_path / "emb.txt"
    cfg = tmp_path / "run.cfg"
    write_corpus(corpus)
    write_embeddings(embeddings)
    cfg.write_text("epochs=3\nembed_dim=8\nhidden=4\natt_dim=4\n")
    model_path = tmp_path / "headline.nnk"
    assert main([
        "train-headline", "--corpus", str(corpus), "--embeddings", str(embeddings),
        "--out", str(model_path), "--config", str(cfg), "--seed", "1",
    ]) == 0
    capsys.readouterr()
    assert main([
        "score", "--kind", "headline", "--model", str(model_path),
        "--embeddings", str(embeddings), "--title", "amazing cats video",
    ]) == 0
    body = json.loads(capsys.readouterr().out)
    assert 0.0 <= body["probability_popular"] <= 1.0


def test_train_thumbnail_command(tmp_path, capsys):
    rng = np.random.RandomState(0)
    rows = []
    for i in range(20):
        positive = i % 2 == 0
        feats = rng.randn(1, 6) + (2.0 if positive else -2.0)
        fpath = tmp_path / f"feat{i}.fvec"
        write_feature_file(fpath, feats.astype(np.float32))
        rows.append({
            "video_id": f"v{i}", "title": f"t{i}", "channel_id": "c",
            "views": 200 if positive else 50, "category": ["a", "b"],
            "channel_likes": 100, "features_path": str(fpath),
        })
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text("\n".join(json.dumps(r) for r in rows))
    out = tmp_path / "thumb.nnk"
    assert main(["train-thumbnail", "--corpus", str(corpus), "--out", str(out)]) == 0
    assert out.exists()


def test_cli_reports_errors(capsys):
    assert main(["ab", "--group-a", "0,0", "--group-b", "1"]) == 1
    assert "error:" in capsys.readouterr().err
