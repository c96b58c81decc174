"""Deployment layer: HTTP API, alerting, A/B lift analysis."""

from .ab import AbResult, ab_lift
from .alerts import AlertDecision, ScoreLog, alert_check, nearest_rank_percentile
from .app import ServiceState, create_app

__all__ = [
    "AbResult",
    "AlertDecision",
    "ScoreLog",
    "ServiceState",
    "ab_lift",
    "alert_check",
    "create_app",
    "nearest_rank_percentile",
]
