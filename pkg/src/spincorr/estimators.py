"""Estimators built on outcome counts: correlations and the CHSH combination.

With m of n trials yielding outcome product +1, the sample correlation is
the exact rational (2m - n) / n. The numerator and denominator are kept
unreduced so the count pair (m, n) stays recoverable from the estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .runner import Counts, TrialBatch


@dataclass(frozen=True)
class CorrelationEstimate:
    """Sample correlation as the exact unreduced fraction (2m - n) / n.

    ``real_value`` and ``std_error`` are derived floats; ``std_error`` is
    the binomial-propagated sqrt((1 - C^2) / n), zero at the extremes.
    """

    numerator: int
    denominator: int
    real_value: float
    std_error: float

    def __post_init__(self) -> None:
        for name, value in (("numerator", self.numerator), ("denominator", self.denominator)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if self.denominator < 1:
            raise ValueError(f"denominator must be positive, got {self.denominator!r}")
        if abs(self.numerator) > self.denominator:
            raise ValueError("|numerator| cannot exceed denominator for a correlation")
        if (self.denominator - self.numerator) % 2 != 0:
            raise ValueError("numerator must have the form 2m - n; parity mismatch")
        if self.real_value != self.numerator / self.denominator:
            raise ValueError("real_value must equal numerator / denominator")
        expected_se = math.sqrt(max(0.0, 1.0 - self.real_value**2) / self.denominator)
        if not math.isclose(self.std_error, expected_se, rel_tol=0.0, abs_tol=1e-15):
            raise ValueError("std_error inconsistent with real_value and denominator")

    @property
    def as_fraction(self) -> Fraction:
        """The estimate as an exact (reduced) rational number."""
        return Fraction(self.numerator, self.denominator)


def correlation_from_counts(source: Union[TrialBatch, Counts]) -> CorrelationEstimate:
    """Exact sample correlation (2m - n) / n from a batch or raw counts."""
    counts = source.counts if isinstance(source, TrialBatch) else source
    if not isinstance(counts, Counts):
        raise TypeError(f"expected a TrialBatch or Counts, got {source!r}")
    n = counts.n
    if n < 1:
        raise ValueError("cannot estimate a correlation from zero trials")
    numerator = 2 * counts.m - n
    real_value = numerator / n
    std_error = math.sqrt(max(0.0, 1.0 - real_value**2) / n)
    return CorrelationEstimate(
        numerator=numerator, denominator=n, real_value=real_value, std_error=std_error
    )


@dataclass(frozen=True)
class ChshEstimate:
    """The CHSH statistic S with the four correlation estimates behind it.

    Components are ordered (C(a',b'), C(a',b''), C(a'',b'), C(a'',b'')),
    matching ``SettingsQuad.pairs()``.
    """

    s_value: float
    components: tuple[CorrelationEstimate, CorrelationEstimate, CorrelationEstimate, CorrelationEstimate]

    def __post_init__(self) -> None:
        if not (0.0 <= self.s_value <= 4.0):
            raise ValueError(f"S must lie in [0, 4], got {self.s_value!r}")
        if len(self.components) != 4 or not all(
            isinstance(c, CorrelationEstimate) for c in self.components
        ):
            raise TypeError("components must be four CorrelationEstimates")
        expected = chsh_combination(*(c.real_value for c in self.components))
        if not math.isclose(self.s_value, expected, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError("s_value inconsistent with components")


def chsh_combination(c_ab: float, c_ab2: float, c_a2b: float, c_a2b2: float) -> float:
    """S = |C(a',b') - C(a',b'')| + |C(a'',b') + C(a'',b'')| on raw floats."""
    return abs(c_ab - c_ab2) + abs(c_a2b + c_a2b2)


def chsh_value(
    e_ab: CorrelationEstimate,
    e_ab2: CorrelationEstimate,
    e_a2b: CorrelationEstimate,
    e_a2b2: CorrelationEstimate,
) -> ChshEstimate:
    """CHSH statistic from four correlation estimates in pairs() order."""
    components = (e_ab, e_ab2, e_a2b, e_a2b2)
    s = chsh_combination(*(c.real_value for c in components))
    return ChshEstimate(s_value=s, components=components)
