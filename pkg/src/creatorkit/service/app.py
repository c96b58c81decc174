"""HTTP API over the trained models: scoring, recommendation, chat,
alerting and A/B analysis. All payloads are JSON; binary inputs (feature
files, frames) travel base64-encoded inside the JSON body.
"""
from __future__ import annotations

import base64
import hashlib
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import archive, chat, visual
from ..datapipe import EmbeddingTable, parse_feature_bytes
from ..errors import CreatorKitError, ShapeError
from ..headline import HeadlineModel, score_headline
from .ab import ab_lift
from .alerts import ScoreLog


@dataclass
class ServiceState:
    """Everything the endpoints read; models are immutable once loaded."""

    headline_model: HeadlineModel | None = None
    embeddings: EmbeddingTable | None = None
    thumbnail_head: visual.ThumbnailHead | None = None
    opening_model: visual.OpeningModel | None = None
    backbone: visual.TinyCnn | None = None
    tag_index: archive.TagIndex | None = None
    score_log: ScoreLog = field(default_factory=ScoreLog)

    def checksums(self) -> dict[str, str]:
        out = {}
        for name in ("headline_model", "thumbnail_head", "opening_model", "backbone"):
            model = getattr(self, name)
            if model is not None:
                digest = hashlib.sha256()
                for key in sorted(model.params):
                    digest.update(key.encode())
                    digest.update(np.ascontiguousarray(model.params[key]).tobytes())
                out[name] = digest.hexdigest()[:16]
        return out


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error_code": code, "message": message})


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="creatorkit")

    @app.exception_handler(CreatorKitError)
    async def _handle_domain_error(request: Request, exc: CreatorKitError):
        return _error(400, exc.error_code, str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok", "models": state.checksums()}

    @app.post("/headline/score")
    async def headline_score(request: Request):
        body = await request.json()
        title = body.get("title", "")
        if state.headline_model is None or state.embeddings is None:
            return _error(400, "model_missing", "headline model not loaded")
        score = score_headline(title, state.headline_model, state.embeddings)
        return {
            "probability_popular": score.probability_popular,
            "contributions": [{"token": t, "weight": w} for t, w in score.contributions],
            "oov_tokens": score.oov_tokens,
        }

    @app.post("/thumbnail/recommend")
    async def thumbnail_recommend(request: Request):
        body = await request.json()
        if state.thumbnail_head is None:
            return _error(400, "model_missing", "thumbnail head not loaded")
        if "features_fvec_b64" in body:
            features = parse_feature_bytes(base64.b64decode(body["features_fvec_b64"]))
            features = [np.asarray(row, dtype=np.float64) for row in features]
        elif "features" in body:
            features = [np.asarray(row, dtype=np.float64) for row in body["features"]]
        elif "frames_ppm_b64" in body:
            if state.backbone is None:
                return _error(400, "model_missing", "no backbone loaded for raw frames")
            features = []
            for blob in body["frames_ppm_b64"]:
                image = visual.parse_ppm_bytes(base64.b64decode(blob))
                features.append(state.backbone.extract(image)[0])
        else:
            return _error(400, "config_error", "provide features, features_fvec_b64 or frames_ppm_b64")
        scores = visual.score_frames(features, state.thumbnail_head)
        return {"scores": scores, "recommended_index": visual.recommend_thumbnail(scores)}

    @app.post("/video/score")
    async def video_score(request: Request):
        body = await request.json()
        if state.opening_model is None:
            return _error(400, "model_missing", "opening-scene model not loaded")
        saliency_payload = None
        if "frames_ppm_b64" in body:
            if state.backbone is None:
                return _error(400, "model_missing", "no backbone loaded for raw frames")
            images = [
                visual.parse_ppm_bytes(base64.b64decode(blob))
                for blob in body["frames_ppm_b64"]
            ]
            features = [state.backbone.extract(img)[0] for img in images]
            result = visual.score_opening(features, state.opening_model)
            if body.get("saliency", False):
                saliency_payload = []
                for idx, img in enumerate(images):
                    acts, grads = state.backbone.saliency_inputs(img)
                    smap = visual.gradcam(acts, grads, img.shape[:2], frame_index=idx)
                    saliency_payload.append(
                        {
                            "frame_index": idx,
                            "pgm_b64": base64.b64encode(visual.pgm_bytes(smap.grid)).decode(),
                            "min": smap.raw_min,
                            "max": smap.raw_max,
                        }
                    )
        else:
            rows = body.get("features")
            if rows is None:
                return _error(400, "config_error", "provide features or frames_ppm_b64")
            features = [np.asarray(row, dtype=np.float64) for row in rows]
            result = visual.score_opening(features, state.opening_model)
        out = {
            "probability_popular": result.probability_popular,
            "frame_attention": result.frame_attention,
        }
        if saliency_payload is not None:
            out["saliency"] = saliency_payload
        return out

    @app.post("/alert/check")
    async def alert_check_endpoint(request: Request):
        body = await request.json()
        score = float(body["score"])
        category = str(body.get("category", ""))
        decision = state.score_log.check_and_record(category, score)
        return {
            "score": decision.score,
            "threshold": decision.threshold,
            "alert": decision.alert,
            "history_size": decision.history_size,
        }

    @app.post("/chat")
    async def chat_endpoint(request: Request):
        body = await request.json()
        text = body.get("text", "")
        vocab = state.tag_index.vocabulary if state.tag_index else []
        intent = chat.parse_utterance(text, vocab)
        message = chat.respond(
            intent,
            state.tag_index or archive.TagIndex(),
            state.headline_model,
            state.embeddings,
        )
        return {"intent": intent.name, "slots": intent.slots, "message": message}

    @app.post("/ab/lift")
    async def ab_lift_endpoint(request: Request):
        body = await request.json()
        result = ab_lift(
            body["group_a"],
            body["group_b"],
            seed=int(body.get("seed", 0)),
            resamples=int(body.get("resamples", 10000)),
        )
        return {
            "mean_a": result.mean_a,
            "mean_b": result.mean_b,
            "lift_percent": result.lift_percent,
            "ci_low": result.ci_low,
            "ci_high": result.ci_high,
            "n_a": result.n_a,
            "n_b": result.n_b,
        }

    return app
