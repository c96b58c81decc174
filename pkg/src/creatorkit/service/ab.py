"""A/B lift analysis with a seeded percentile-bootstrap confidence interval."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateBaseline, EmptyGroup


@dataclass
class AbResult:
    mean_a: float
    mean_b: float
    lift_percent: float
    ci_low: float
    ci_high: float
    n_a: int
    n_b: int


def ab_lift(group_a, group_b, seed: int = 0, resamples: int = 10000) -> AbResult:
    """Point lift = 100 * (mean_b - mean_a) / mean_a, with a 95% percentile
    bootstrap interval. Reproducible for a fixed seed."""
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise EmptyGroup("both A/B groups must be nonempty")
    mean_a = float(a.mean())
    mean_b = float(b.mean())
    if mean_a == 0.0:
        raise DegenerateBaseline("group A mean is zero; lift undefined")
    lift = 100.0 * (mean_b - mean_a) / mean_a
    rng = np.random.RandomState(seed)
    lifts = np.empty(resamples)
    for i in range(resamples):
        ma = a[rng.randint(0, a.size, a.size)].mean()
        mb = b[rng.randint(0, b.size, b.size)].mean()
        lifts[i] = 100.0 * (mb - ma) / ma if ma != 0 else np.nan
    lifts = lifts[np.isfinite(lifts)]
    ci_low, ci_high = np.percentile(lifts, [2.5, 97.5])
    return AbResult(
        mean_a=mean_a,
        mean_b=mean_b,
        lift_percent=lift,
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        n_a=int(a.size),
        n_b=int(b.size),
    )
