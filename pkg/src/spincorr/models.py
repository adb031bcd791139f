"""Outcome models: how each detector decides +1 or -1 on a given trial.

Three mechanisms are implemented behind one sampling interface:

``quantum``
    Draws each outcome pair directly from the singlet joint distribution.
    No hidden state; the pair is sampled as one categorical event.

``nonlocal-stochastic``
    Side A flips a fair coin. Side B then anti-correlates with A's result
    with probability cos^2(delta / 2), which reproduces the singlet
    expectation -cos(delta) while letting B's mechanism depend on both
    analyzer angles at once.

``local-linear``
    A shared hidden phase lambda is drawn uniformly on [0, 2*pi) at the
    source. Each side then computes its outcome from its own angle and
    lambda alone: side A outputs sign(cos(theta_a - lambda)), side B the
    negation of the analogous sign (ties at zero count as +1). The
    resulting correlation is piecewise linear in the angle difference,
    -1 + 2*|delta|/pi for |delta| <= pi, not the cosine.

Sampling is vectorized over trials. The random-stream contract per model
(how many uniforms are consumed, in what shape) is fixed and documented on
``sample_pairs`` so that seeded runs are reproducible across versions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .quantum import (
    TAU,
    DetectorSettings,
    joint_distribution,
    singlet_correlation,
    wrap_to_half_turn,
)


class ModelKind(enum.Enum):
    """Identity of an outcome mechanism; values are the external names."""

    QUANTUM_SINGLET = "quantum"
    NONLOCAL_STOCHASTIC = "nonlocal-stochastic"
    LOCAL_LINEAR = "local-linear"


@dataclass(frozen=True)
class ModelSpec:
    """A chosen outcome mechanism, carrying its name and locality status."""

    kind: ModelKind

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ModelKind):
            raise TypeError(f"kind must be a ModelKind, got {self.kind!r}")

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def is_local(self) -> bool:
        """True when each side's outcome depends only on its own angle."""
        return self.kind is ModelKind.LOCAL_LINEAR

    @classmethod
    def from_name(cls, name: str) -> "ModelSpec":
        for kind in ModelKind:
            if kind.value == name:
                return cls(kind)
        known = ", ".join(k.value for k in ModelKind)
        raise ValueError(f"unknown model {name!r}; known models: {known}")


@dataclass(frozen=True)
class PairResult:
    """One trial's outcome pair; each side is +1 or -1."""

    r_a: int
    r_b: int

    def __post_init__(self) -> None:
        for name, value in (("r_a", self.r_a), ("r_b", self.r_b)):
            if value not in (-1, 1) or isinstance(value, bool):
                raise ValueError(f"{name} must be +1 or -1, got {value!r}")

    @property
    def product(self) -> int:
        return self.r_a * self.r_b


def local_outcome_a(theta_a: float, hidden_phase: float) -> int:
    """Side A's deterministic local rule: the sign of cos(theta_a - lambda)."""
    return 1 if math.cos(theta_a - hidden_phase) >= 0.0 else -1


def local_outcome_b(theta_b: float, hidden_phase: float) -> int:
    """Side B's rule is side A's with the sign flipped, for anti-correlation
    at equal angles."""
    return -1 if math.cos(theta_b - hidden_phase) >= 0.0 else 1


def sample_pairs(
    model: ModelSpec,
    settings: DetectorSettings,
    n: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` outcome pairs; returns int8 arrays (r_a, r_b) of length n.

    Stream contract (per call, in order):

    - quantum: one uniform per trial via ``rng.random(n)``, mapped through
      the cumulative joint distribution with a right-closed search, category
      order (+,+), (+,-), (-,+), (-,-).
    - nonlocal-stochastic: ``rng.random((n, 2))``; column 0 < 1/2 sets
      r_a = +1, column 1 < cos^2(delta/2) makes r_b anti-correlate.
    - local-linear: one uniform per trial via ``rng.random(n)``, scaled to
      the hidden phase lambda in [0, 2*pi).

    Splitting one call into consecutive smaller calls on the same generator
    yields the identical outcome sequence.
    """
    if not isinstance(model, ModelSpec):
        raise TypeError(f"model must be a ModelSpec, got {model!r}")
    if not isinstance(settings, DetectorSettings):
        raise TypeError(f"settings must be DetectorSettings, got {settings!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")

    if model.kind is ModelKind.QUANTUM_SINGLET:
        dist = joint_distribution(settings)
        cum = np.cumsum(dist.as_tuple()[:3])
        cat = np.searchsorted(cum, rng.random(n), side="right")
        r_a = np.where(cat < 2, 1, -1).astype(np.int8)
        r_b = np.where((cat == 0) | (cat == 2), 1, -1).astype(np.int8)
        return r_a, r_b

    if model.kind is ModelKind.NONLOCAL_STOCHASTIC:
        u = rng.random((n, 2))
        r_a = np.where(u[:, 0] < 0.5, 1, -1).astype(np.int8)
        p_anti = math.cos(settings.delta / 2.0) ** 2
        r_b = np.where(u[:, 1] < p_anti, -r_a, r_a).astype(np.int8)
        return r_a, r_b

    if model.kind is ModelKind.LOCAL_LINEAR:
        lam = TAU * rng.random(n)
        r_a = np.where(np.cos(settings.theta_a.radians - lam) >= 0.0, 1, -1).astype(np.int8)
        r_b = np.where(np.cos(settings.theta_b.radians - lam) >= 0.0, -1, 1).astype(np.int8)
        return r_a, r_b

    raise ValueError(f"unhandled model kind {model.kind!r}")


def sample_pair(
    model: ModelSpec,
    settings: DetectorSettings,
    rng: np.random.Generator,
) -> PairResult:
    """Draw a single outcome pair; consumes the same stream as n=1 sampling."""
    r_a, r_b = sample_pairs(model, settings, 1, rng)
    return PairResult(int(r_a[0]), int(r_b[0]))


def expected_correlation(model: ModelSpec, settings: DetectorSettings) -> float:
    """Exact expected outcome product under the given model.

    The two singlet-faithful mechanisms share -cos(delta); the local rule
    gives the sawtooth -1 + 2*|delta|/pi on |delta| <= pi, extended
    periodically.
    """
    if model.kind in (ModelKind.QUANTUM_SINGLET, ModelKind.NONLOCAL_STOCHASTIC):
        return singlet_correlation(settings)
    if model.kind is ModelKind.LOCAL_LINEAR:
        return -1.0 + 2.0 * abs(wrap_to_half_turn(settings.delta)) / math.pi
    raise ValueError(f"unhandled model kind {model.kind!r}")
