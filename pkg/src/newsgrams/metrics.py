"""Per-day vocabulary-diversity measures and the daily-size trend fit.

Three measures per day: information-theoretic redundancy of the unigram
distribution, mean segmental type-token ratio (MSTTR) over the ordered token
stream, and the token share of the day's 100 most frequent forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from typing import Mapping, Sequence

from scipy import stats as _scipy_stats

from .corpus import DailyTable
from .errors import DegenerateFit, EmptyDay, EmptyDistribution, StreamTooShort

DEFAULT_SEGMENT_LENGTH = 100
DEFAULT_TOP_K = 100


def entropy(counts: Mapping[str, int]) -> float:
    """Shannon entropy in bits of a frequency distribution."""
    total = sum(counts.values())
    if total <= 0:
        raise EmptyDistribution("entropy of an empty distribution")
    h = 0.0
    for count in counts.values():
        if count > 0:
            p = count / total
            h -= p * math.log2(p)
    return h


def redundancy(counts: Mapping[str, int]) -> float:
    """1 - H/H_max; 0 = maximally diverse, 1 = maximally repetitive.

    A single-type day has undefined H_max (log2 1 = 0) and is defined as
    maximally redundant, 1.0.
    """
    total = sum(counts.values())
    if total <= 0:
        raise EmptyDay("redundancy of an empty day")
    types = sum(1 for c in counts.values() if c > 0)
    if types == 1:
        return 1.0
    return 1.0 - entropy(counts) / math.log2(types)


def msttr(tokens: Sequence[str], segment_length: int = DEFAULT_SEGMENT_LENGTH) -> float:
    """Mean type-token ratio over consecutive full segments of the stream.

    The trailing remainder shorter than one segment is discarded.
    """
    if segment_length < 1:
        raise ValueError("segment_length must be >= 1")
    if len(tokens) < segment_length:
        raise StreamTooShort(
            f"stream of {len(tokens)} tokens is shorter than one segment of {segment_length}"
        )
    segments = len(tokens) // segment_length
    ratios = []
    for i in range(segments):
        segment = tokens[i * segment_length : (i + 1) * segment_length]
        ratios.append(len(set(segment)) / segment_length)
    return sum(ratios) / segments


def top_k_share(counts: Mapping[str, int], k: int = DEFAULT_TOP_K) -> float:
    """Token share of the k most frequent forms (ties broken by form ascending)."""
    total = sum(counts.values())
    if total <= 0:
        raise EmptyDay("top-k share of an empty day")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    top = ranked[: min(k, len(ranked))]
    return sum(count for _, count in top) / total


@dataclass
class DiversityRecord:
    """The three per-day measures; msttr is None for days shorter than one segment."""

    day: date
    redundancy: float
    msttr: float | None
    top100_share: float


def daily_diversity(
    table: DailyTable,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
    top_k: int = DEFAULT_TOP_K,
) -> DiversityRecord:
    if table.token_total <= 0:
        raise EmptyDay(f"no tokens on {table.day}")
    try:
        segmental = msttr(table.token_order, segment_length)
    except StreamTooShort:
        segmental = None
    return DiversityRecord(
        day=table.day,
        redundancy=redundancy(table.unigrams),
        msttr=segmental,
        top100_share=top_k_share(table.unigrams, top_k),
    )


@dataclass
class TrendFit:
    """OLS fit of daily corpus size on the day offset.

    For a perfect fit the residual variance is zero: slope_se is reported as
    0.0 and, unless the slope is exactly zero, t_stat and p_value are None
    rather than fabricated.
    """

    slope: float
    intercept: float
    slope_se: float
    t_stat: float | None
    p_value: float | None
    n: int

    @property
    def perfect(self) -> bool:
        return self.slope_se == 0.0


def ols_fit(x: Sequence[float], y: Sequence[float]) -> TrendFit:
    """Simple linear regression with exact-t two-sided p-value (n-2 df)."""
    n = len(x)
    if n != len(y):
        raise ValueError("x and y differ in length")
    if n < 3:
        raise DegenerateFit(f"need at least 3 points, got {n}")
    x_mean = sum(x) / n
    y_mean = sum(y) / n
    sxx = sum((xi - x_mean) ** 2 for xi in x)
    if sxx == 0.0:
        raise DegenerateFit("all x values are equal")
    sxy = sum((xi - x_mean) * (yi - y_mean) for xi, yi in zip(x, y))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    rss = sum((yi - (intercept + slope * xi)) ** 2 for xi, yi in zip(x, y))
    s2 = rss / (n - 2)
    slope_se = math.sqrt(s2 / sxx)
    if slope_se == 0.0:
        if slope == 0.0:
            # a constant series shows no effect at all
            return TrendFit(slope, intercept, 0.0, 0.0, 1.0, n)
        return TrendFit(slope, intercept, 0.0, None, None, n)
    t_stat = slope / slope_se
    p_value = 2.0 * float(_scipy_stats.t.sf(abs(t_stat), n - 2))
    return TrendFit(slope, intercept, slope_se, t_stat, p_value, n)


def fit_linear_trend(series: Sequence[tuple[date, int]]) -> TrendFit:
    """Fit token totals against day offsets from the earliest date in the series."""
    if len(series) < 3:
        raise DegenerateFit(f"need at least 3 points, got {len(series)}")
    ordered = sorted(series, key=lambda pair: pair[0])
    start = ordered[0][0]
    x = [float((day - start).days) for day, _ in ordered]
    y = [float(value) for _, value in ordered]
    return ols_fit(x, y)


def weekly_mean(
    series: Sequence[tuple[date, float]], corpus_start: date
) -> list[tuple[int, float]]:
    """Mean value per 7-day week counted from the corpus start date.

    Partial weeks average over the days present.
    """
    buckets: dict[int, list[float]] = {}
    for day, value in series:
        idx = (day - corpus_start).days // 7 + 1
        buckets.setdefault(idx, []).append(value)
    return [(idx, sum(vals) / len(vals)) for idx, vals in sorted(buckets.items())]
