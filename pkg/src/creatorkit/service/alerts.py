"""Pre-publication unpopularity alerting against a per-category score log."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass
class AlertDecision:
    score: float
    threshold: float
    alert: bool
    history_size: int


def nearest_rank_percentile(values, p: float) -> float:
    """Value at rank ceil(p * n) (1-based) of the ascending-sorted sample."""
    ordered = sorted(values)
    rank = max(1, math.ceil(p * len(ordered)))
    return ordered[rank - 1]


def alert_check(score: float, history, percentile: float = 0.2) -> AlertDecision:
    """Alert iff the score is strictly below the history's 20th-percentile
    threshold. An empty history never alerts (threshold reported as the
    score itself)."""
    if len(history) == 0:
        return AlertDecision(score=score, threshold=score, alert=False, history_size=0)
    threshold = nearest_rank_percentile(history, percentile)
    return AlertDecision(
        score=score,
        threshold=threshold,
        alert=score < threshold,
        history_size=len(history),
    )


class ScoreLog:
    """Append-only per-category score history backing the alert endpoint."""

    def __init__(self):
        self._by_category: dict[str, list[float]] = {}

    def history(self, category: str) -> list[float]:
        return list(self._by_category.get(category, ()))

    def append(self, category: str, score: float) -> None:
        self._by_category.setdefault(category, []).append(score)

    def check_and_record(self, category: str, score: float) -> AlertDecision:
        decision = alert_check(score, self._by_category.get(category, ()))
        self.append(category, score)
        return decision
