"""Command-line entry point: training, scoring, indexing, serving, A/B."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import archive, datapipe, visual
from .errors import ConfigError
from .headline import (
    load_headline_model,
    save_headline_model,
    score_headline,
    train_headline_model,
)
from .nnkern import TrainConfig, load_checkpoint, save_checkpoint, train_classifier
from .service import ServiceState, ab_lift, create_app


def read_config(path) -> dict[str, str]:
    """key=value file, one pair per line; '#' starts a comment."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip().strip('"')
    return out


def _train_config(args, overrides: dict[str, str]) -> TrainConfig:
    return TrainConfig(
        learning_rate=float(overrides.get("learning_rate", 0.5)),
        epochs=int(overrides.get("epochs", 50)),
        batch_size=int(overrides.get("batch_size", 32)),
        seed=args.seed,
        l2=float(overrides.get("l2", 0.0)),
    )


def _load_labeled(args):
    records = datapipe.load_corpus(args.corpus)
    return datapipe.build_labeled_corpus(records), records


def cmd_train_headline(args, overrides):
    labeled, _ = _load_labeled(args)
    embeddings = datapipe.load_embeddings(args.embeddings, int(overrides.get("embed_dim", 50)))
    cfg = _train_config(args, overrides)
    model, history = train_headline_model(
        labeled,
        embeddings,
        cfg,
        hidden=int(overrides.get("hidden", 8)),
        att_dim=int(overrides.get("att_dim", 8)),
    )
    save_headline_model(model, args.out, embeddings)
    print(f"saved {args.out}; final val_acc={history[-1].get('val_acc'):.3f}")


def _frame_features(record, row: int | None = None):
    matrix = datapipe.read_feature_file(record.features_path)
    if row is not None:
        return np.asarray(matrix[row], dtype=np.float64)
    return [np.asarray(r, dtype=np.float64) for r in matrix]


def cmd_train_thumbnail(args, overrides):
    labeled, _ = _load_labeled(args)
    data = [
        (_frame_features(rec, row=0), 1 if label == datapipe.POPULAR else 0)
        for rec, _, label in labeled.examples
        if rec.features_path
    ]
    dim = data[0][0].shape[0]
    head = visual.ThumbnailHead(dim, seed=args.seed)
    result = train_classifier(head, data, _train_config(args, overrides))
    save_checkpoint(args.out, head.params)
    print(f"saved {args.out}; train_acc={result.history[-1]['train_acc']:.3f}")


def cmd_train_opening(args, overrides):
    labeled, _ = _load_labeled(args)
    data = [
        (_frame_features(rec), 1 if label == datapipe.POPULAR else 0)
        for rec, _, label in labeled.examples
        if rec.features_path
    ]
    dim = data[0][0][0].shape[0]
    model = visual.OpeningModel(
        dim,
        proj_dim=int(overrides.get("proj_dim", 8)),
        att_dim=int(overrides.get("att_dim", 8)),
        seed=args.seed,
    )
    result = train_classifier(model, data, _train_config(args, overrides))
    save_checkpoint(args.out, model.params)
    print(f"saved {args.out}; train_acc={result.history[-1]['train_acc']:.3f}")


def cmd_score(args, overrides):
    if args.kind == "headline":
        model = load_headline_model(args.model)
        embeddings = datapipe.load_embeddings(args.embeddings, model.embed_dim)
        score = score_headline(args.title, model, embeddings)
        print(json.dumps({
            "probability_popular": score.probability_popular,
            "contributions": score.contributions,
            "oov_tokens": score.oov_tokens,
        }))
    elif args.kind == "thumbnail":
        params = load_checkpoint(args.model)
        head = visual.ThumbnailHead(params["w"].shape[0])
        for k in head.params:
            head.params[k][...] = params[k]
        features = [np.asarray(r, dtype=np.float64) for r in datapipe.read_feature_file(args.features)]
        scores = visual.score_frames(features, head)
        print(json.dumps({
            "scores": scores,
            "recommended_index": visual.recommend_thumbnail(scores),
        }))
    else:
        params = load_checkpoint(args.model)
        model = visual.OpeningModel(
            params["proj.w"].shape[1], proj_dim=params["proj.w"].shape[0],
            att_dim=params["att.ba"].shape[0],
        )
        for k in model.params:
            model.params[k][...] = params[k]
        features = [np.asarray(r, dtype=np.float64) for r in datapipe.read_feature_file(args.features)]
        result = visual.score_opening(features, model)
        print(json.dumps({
            "probability_popular": result.probability_popular,
            "frame_attention": result.frame_attention,
        }))


def cmd_index(args, overrides):
    records = datapipe.load_corpus(args.corpus)
    index = archive.build_tag_index(records)
    archive.save_index(index, args.out)
    print(f"indexed {len(index.by_tag)} tags over {len(records)} videos into {args.out}")


def cmd_serve(args, overrides):
    state = ServiceState()
    if args.corpus:
        state.tag_index = archive.build_tag_index(datapipe.load_corpus(args.corpus))
    if args.headline_model:
        state.headline_model = load_headline_model(args.headline_model)
        if args.embeddings:
            state.embeddings = datapipe.load_embeddings(
                args.embeddings, state.headline_model.embed_dim
            )
    import uvicorn

    uvicorn.run(create_app(state), host=args.host, port=args.port)


def cmd_ab(args, overrides):
    group_a = [float(v) for v in args.group_a.split(",")]
    group_b = [float(v) for v in args.group_b.split(",")]
    result = ab_lift(group_a, group_b, seed=args.seed, resamples=args.resamples)
    print(json.dumps({
        "mean_a": result.mean_a,
        "mean_b": result.mean_b,
        "lift_percent": result.lift_percent,
        "ci_low": result.ci_low,
        "ci_high": result.ci_high,
    }))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="creatorkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, corpus=False, embeddings=False, model=False, out=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", help="key=value overrides file")
        if corpus:
            p.add_argument("--corpus", required=True)
        if embeddings:
            p.add_argument("--embeddings")
        if model:
            p.add_argument("--model", required=True)
        if out:
            p.add_argument("--out", required=True)

    p = sub.add_parser("train-headline", help="train the headline classifier")
    common(p, corpus=True, embeddings=True, out=True)
    p.set_defaults(func=cmd_train_headline)

    p = sub.add_parser("train-thumbnail", help="train the thumbnail head")
    common(p, corpus=True, out=True)
    p.set_defaults(func=cmd_train_thumbnail)

    p = sub.add_parser("train-opening", help="train the opening-scene model")
    common(p, corpus=True, out=True)
    p.set_defaults(func=cmd_train_opening)

    p = sub.add_parser("score", help="score a title or feature file")
    common(p, embeddings=True, model=True)
    p.add_argument("--kind", choices=["headline", "thumbnail", "opening"], required=True)
    p.add_argument("--title")
    p.add_argument("--features")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("index", help="build the tag index")
    common(p, corpus=True, out=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("serve", help="run the HTTP service")
    common(p, embeddings=True)
    p.add_argument("--corpus")
    p.add_argument("--headline-model")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("ab", help="A/B lift analysis")
    p.add_argument("--group-a", required=True, help="comma-separated view counts")
    p.add_argument("--group-b", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resamples", type=int, default=10000)
    p.add_argument("--config")
    p.set_defaults(func=cmd_ab)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = read_config(args.config) if getattr(args, "config", None) else {}
    try:
        args.func(args, overrides)
    except Exception as exc:  # surface errors as messages, not tracebacks
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
