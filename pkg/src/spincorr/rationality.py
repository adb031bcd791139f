"""Rational-count analysis: can n trials hit the predicted fraction exactly?

The predicted probability of outcome product +1 is x = sin^2(delta / 2),
almost always irrational. A finite run of n trials can only realize counts
m / n, so the prediction is exactly representable only when n * x lands on
an integer. This module quantifies the miss: the real-valued expected
count n * x, the nearest integer m*, the gap |n*x - m*|, and how that gap
compares to the binomial shot noise sqrt(n * x * (1 - x)).

A gap is called exact when it is at most ``EXACTNESS_TOL``; double
precision puts genuinely-integer products within ~1e-12 of an integer at
any practical n, so 1e-9 separates them cleanly from generic irrational
misses, which are O(0.1).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .quantum import delta_magnitude, plus_product_probability

EXACTNESS_TOL = 1e-9


@dataclass(frozen=True)
class RationalityReport:
    """The representability ledger for one (delta, n) combination.

    ``delta`` is stored canonically in [0, pi]. ``relative_error`` is
    gap / nearest_m, or None when the nearest integer is zero.
    """

    delta: float
    n: int
    target_fraction: float
    real_count: float
    nearest_m: int
    gap: float
    relative_error: Optional[float]
    binomial_sigma: float
    exact: bool

    def __post_init__(self) -> None:
        if not (0.0 <= self.delta <= math.pi):
            raise ValueError(f"delta must be canonical in [0, pi], got {self.delta!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0.0 <= self.target_fraction <= 1.0):
            raise ValueError(f"target_fraction must lie in [0, 1], got {self.target_fraction!r}")
        if not (0 <= self.nearest_m <= self.n):
            raise ValueError(f"nearest_m must lie in [0, n], got {self.nearest_m!r}")
        if not (0.0 <= self.gap <= 0.5):
            raise ValueError(f"gap must lie in [0, 1/2], got {self.gap!r}")
        if self.binomial_sigma < 0.0:
            raise ValueError(f"binomial_sigma must be nonnegative, got {self.binomial_sigma!r}")
        if self.exact != (self.gap <= EXACTNESS_TOL):
            raise ValueError("exact flag inconsistent with gap and tolerance")


def rationality_report(delta: float, n: int) -> RationalityReport:
    """Measure how far n trials are from representing sin^2(delta/2) exactly.

    The nearest integer uses round-half-to-even, matching built-in round().
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    d = delta_magnitude(delta)
    x = plus_product_probability(d)
    real_count = n * x
    nearest = round(real_count)
    gap = abs(real_count - nearest)
    relative_error = gap / nearest if nearest >= 1 else None
    sigma = math.sqrt(n * x * (1.0 - x))
    return RationalityReport(
        delta=d,
        n=n,
        target_fraction=x,
        real_count=real_count,
        nearest_m=nearest,
        gap=gap,
        relative_error=relative_error,
        binomial_sigma=sigma,
        exact=gap <= EXACTNESS_TOL,
    )


def exact_representability(delta: float, n: int) -> tuple[bool, Optional[int]]:
    """Whether n trials can realize the predicted fraction, and with what m."""
    report = rationality_report(delta, n)
    return (report.exact, report.nearest_m if report.exact else None)


def sweep_reports(deltas: Sequence[float], ns: Sequence[int]) -> list[RationalityReport]:
    """Reports for the full grid, delta-major: all n for deltas[0] first."""
    deltas = list(deltas)
    ns = list(ns)
    if not deltas or not ns:
        raise ValueError("sweep needs at least one delta and one n")
    return [rationality_report(d, n) for d in deltas for n in ns]


@dataclass(frozen=True)
class SignificanceResult:
    """Gap-to-shot-noise verdict: the ratio and its coarse label."""

    ratio: Optional[float]
    label: str


def significance_compare(report: RationalityReport) -> SignificanceResult:
    """Compare the representability gap against binomial shot noise.

    Labels: "degenerate" when sigma is zero (deterministic outcome, the
    comparison is meaningless), "below-noise" for ratio < 1, "comparable"
    for 1 <= ratio < 3, "above-noise" beyond.
    """
    if report.binomial_sigma == 0.0:
        return SignificanceResult(ratio=None, label="degenerate")
    ratio = report.gap / report.binomial_sigma
    if ratio < 1.0:
        label = "below-noise"
    elif ratio < 3.0:
        label = "comparable"
    else:
        label = "above-noise"
    return SignificanceResult(ratio=ratio, label=label)
