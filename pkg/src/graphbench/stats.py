"""Rank correlation with tie correction, granularity, and CI aggregation.

``kendall_tau_b`` counts every vertex pair exactly (the O(n^2) route,
vectorized; cheap at workbench sizes) and applies the standard tie
correction: concordant minus discordant over the geometric mean of the
pair counts not tied in each variable. Pairs tied in both variables count
toward neither. Degenerate inputs are pinned by convention: two constant
vectors correlate at 1.0 (identical trivial rankings), exactly one
constant vector yields 0.0. Both conventions are surfaced as
:data:`TAU_CONVENTIONS` so downstream reports can echo them.

``granularity`` is the percentage of distinct values after rounding to
six decimal places, half away from zero, on the shortest decimal
representation; this matches the fixed 6-decimal print convention and is
bit-reproducible.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from statistics import NormalDist
from typing import Iterable, Mapping, Sequence

import numpy as np

TAU_CONVENTIONS = {"both_constant": 1.0, "one_constant": 0.0}

_SIX_PLACES = decimal.Decimal("0.000001")

# Wide enough for any float64 magnitude (~1e308) quantized to 6 decimals.
_DECIMAL_CTX = decimal.Context(prec=340, rounding=decimal.ROUND_HALF_UP)


def kendall_tau_b(x, y) -> float:
    """Kendall tau-b of two equal-length vectors (length >= 2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("inputs must be one-dimensional")
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("need at least two observations")
    x_const = bool(np.all(x == x[0]))
    y_const = bool(np.all(y == y[0]))
    if x_const and y_const:
        return TAU_CONVENTIONS["both_constant"]
    if x_const or y_const:
        return TAU_CONVENTIONS["one_constant"]
    iu, ju = np.triu_indices(x.size, 1)
    sx = np.sign(x[iu] - x[ju])
    sy = np.sign(y[iu] - y[ju])
    prod = sx * sy
    concordant = int(np.count_nonzero(prod > 0))
    discordant = int(np.count_nonzero(prod < 0))
    tied_x_only = int(np.count_nonzero((sx == 0) & (sy != 0)))
    tied_y_only = int(np.count_nonzero((sx != 0) & (sy == 0)))
    cd = concordant + discordant
    denom = np.sqrt(float(cd + tied_x_only) * float(cd + tied_y_only))
    return (concordant - discordant) / denom


def round6(value: float) -> decimal.Decimal:
    """Round to six decimal places, half away from zero."""
    return decimal.Decimal(repr(float(value))).quantize(
        _SIX_PLACES, rounding=decimal.ROUND_HALF_UP, context=_DECIMAL_CTX
    )


def distinct_count(values) -> int:
    """Number of distinct values at 6-decimal resolution."""
    return len({round6(v) for v in np.asarray(values, dtype=float)})


def granularity(values) -> float:
    """Percentage of distinct 6-decimal-rounded values (length >= 1)."""
    values = np.asarray(values, dtype=float)
    if values.size < 1:
        raise ValueError("need at least one value")
    return 100.0 * distinct_count(values) / values.size


def mean_ci(samples, confidence: float) -> tuple[float, float]:
    """Mean and normal-approximation CI half-width ``z * s / sqrt(n)``.

    ``s`` is the sample standard deviation; needs at least two samples.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise ValueError("need at least two samples for a confidence interval")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence level must be in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    mean = float(samples.mean())
    s = float(samples.std(ddof=1))
    return mean, z * s / np.sqrt(samples.size)


def best_granularity_tally(
    per_network_counts: Sequence[Mapping[str, int]],
) -> dict[str, float]:
    """Percentage of networks on which each metric attains the maximum
    distinct-value count; ties award every maximal metric, so the
    percentages can sum well above 100.
    """
    if not per_network_counts:
        raise ValueError("need at least one network")
    metrics = tuple(sorted(per_network_counts[0]))
    best = {m: 0 for m in metrics}
    for counts in per_network_counts:
        if tuple(sorted(counts)) != metrics:
            raise ValueError("inconsistent metric sets across networks")
        top = max(counts.values())
        for m in metrics:
            if counts[m] == top:
                best[m] += 1
    total = len(per_network_counts)
    return {m: 100.0 * best[m] / total for m in metrics}


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class RankCorrelationMatrix:
    """Mean tau-b per metric pair with sample counts and CI half-widths."""

    measures: tuple[str, ...]
    mean: dict
    count: dict
    half_width: dict
    confidence: float

    def value(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        return self.mean[_pair_key(a, b)]

    def pair_count(self, a: str, b: str) -> int:
        return self.count[_pair_key(a, b)]

    def is_complete(self) -> bool:
        return all(
            _pair_key(a, b) in self.mean
            for i, a in enumerate(self.measures)
            for b in self.measures[i + 1:]
        )


def aggregate_correlations(
    tau_maps: Iterable[Mapping[tuple[str, str], float]],
    measures: Sequence[str],
    confidence: float = 0.99,
) -> RankCorrelationMatrix:
    """Pool per-network tau values into unweighted means per pair.

    ``tau_maps`` must arrive in a canonical order so the floating-point
    sums do not depend on scheduling.
    """
    measures = tuple(measures)
    buckets: dict[tuple[str, str], list[float]] = {}
    for taus in tau_maps:
        for pair, value in taus.items():
            buckets.setdefault(_pair_key(*pair), []).append(float(value))
    mean: dict = {}
    count: dict = {}
    half_width: dict = {}
    for pair, values in buckets.items():
        arr = np.asarray(values)
        if np.max(np.abs(arr)) > 1.0 + 1e-12:
            raise ValueError(f"tau value out of [-1, 1] for pair {pair}")
        mean[pair] = float(arr.mean())
        count[pair] = arr.size
        half_width[pair] = mean_ci(arr, confidence)[1] if arr.size >= 2 else None
    return RankCorrelationMatrix(
        measures=measures, mean=mean, count=count,
        half_width=half_width, confidence=confidence,
    )


@dataclass(frozen=True)
class GranularityReport:
    """Distinct-value statistics for one group of networks."""

    measures: tuple[str, ...]
    mean_percent: dict
    half_width: dict
    best_count: dict
    network_count: int
    confidence: float

    def __post_init__(self):
        for m in self.measures:
            pct = self.mean_percent[m]
            if not 0.0 <= pct <= 100.0:
                raise ValueError(f"{m}: mean percent {pct} outside [0, 100]")
            if not 0 <= self.best_count[m] <= self.network_count:
                raise ValueError(f"{m}: best tally outside 0..{self.network_count}")
        if self.network_count and sum(self.best_count.values()) < self.network_count:
            raise ValueError("some network has no best metric")

    def best_percent(self, measure: str) -> float:
        return 100.0 * self.best_count[measure] / self.network_count


def granularity_report(
    per_network_percent: Sequence[Mapping[str, float]],
    per_network_distinct: Sequence[Mapping[str, int]],
    measures: Sequence[str],
    confidence: float = 0.99,
) -> GranularityReport:
    if len(per_network_percent) != len(per_network_distinct):
        raise ValueError("percent and distinct-count records differ in length")
    if not per_network_percent:
        raise ValueError("need at least one network")
    measures = tuple(measures)
    mean_percent: dict = {}
    half_width: dict = {}
    for m in measures:
        arr = np.asarray([rec[m] for rec in per_network_percent])
        mean_percent[m] = float(arr.mean())
        half_width[m] = mean_ci(arr, confidence)[1] if arr.size >= 2 else None
    best = {m: 0 for m in measures}
    for counts in per_network_distinct:
        top = max(counts[m] for m in measures)
        for m in measures:
            if counts[m] == top:
                best[m] += 1
    return GranularityReport(
        measures=measures,
        mean_percent=mean_percent,
        half_width=half_width,
        best_count=best,
        network_count=len(per_network_percent),
        confidence=confidence,
    )
