"""Closed-form singlet-state predictions for two-detector spin measurements.

For a spin-1/2 pair in the singlet state measured along coplanar analyzer
directions, the correlation of the paired +-1 outcomes depends only on the
angle between the analyzers:

    E(theta_a, theta_b) = -cos(theta_a - theta_b)

With unbiased +-1 marginals on both sides, that expectation pins down the
joint outcome distribution uniquely:

    P(+,+) = P(-,-) = sin^2(delta / 2) / 2
    P(+,-) = P(-,+) = cos^2(delta / 2) / 2,      delta = theta_a - theta_b

so the probability that the two outcomes multiply to +1 is sin^2(delta / 2).

Angles are stored in radians, canonical in [0, 2*pi); user-facing
constructors accept degrees. Everything here is a pure function of its
arguments and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TAU = 2.0 * math.pi

# Tolerance for validating analytic probability identities; closed-form
# trigonometry in double precision leaves no room for accumulation.
PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class Angle:
    """A planar analyzer orientation, reduced modulo 2*pi into [0, 2*pi)."""

    radians: float

    def __post_init__(self) -> None:
        if isinstance(self.radians, bool) or not isinstance(self.radians, (int, float)):
            raise TypeError(f"angle must be a real number, got {self.radians!r}")
        value = float(self.radians)
        if not math.isfinite(value):
            raise ValueError(f"angle must be finite, got {value!r}")
        reduced = value % TAU
        if reduced == TAU:  # float % can round up to the modulus itself
            reduced = 0.0
        object.__setattr__(self, "radians", reduced)

    @classmethod
    def from_degrees(cls, degrees: float) -> "Angle":
        if not math.isfinite(degrees):
            raise ValueError(f"angle must be finite, got {degrees!r}")
        return cls(math.radians(degrees))

    @property
    def degrees(self) -> float:
        return math.degrees(self.radians)


@dataclass(frozen=True)
class DetectorSettings:
    """The analyzer angle pair (theta_a, theta_b) for one experimental run."""

    theta_a: Angle
    theta_b: Angle

    def __post_init__(self) -> None:
        for name, value in (("theta_a", self.theta_a), ("theta_b", self.theta_b)):
            if not isinstance(value, Angle):
                raise TypeError(f"{name} must be an Angle, got {value!r}")

    @classmethod
    def from_degrees(cls, theta_a: float, theta_b: float) -> "DetectorSettings":
        return cls(Angle.from_degrees(theta_a), Angle.from_degrees(theta_b))

    @property
    def delta(self) -> float:
        """Signed analyzer-angle difference theta_a - theta_b, in radians."""
        return self.theta_a.radians - self.theta_b.radians


@dataclass(frozen=True)
class SettingsQuad:
    """The two orientations per side defining four analyzer pairings.

    ``pairs()`` returns them in the fixed order
    (a', b'), (a', b''), (a'', b'), (a'', b'').
    """

    theta_a_prime: Angle
    theta_a_double: Angle
    theta_b_prime: Angle
    theta_b_double: Angle

    def __post_init__(self) -> None:
        for name in ("theta_a_prime", "theta_a_double", "theta_b_prime", "theta_b_double"):
            if not isinstance(getattr(self, name), Angle):
                raise TypeError(f"{name} must be an Angle, got {getattr(self, name)!r}")

    @classmethod
    def from_degrees(
        cls,
        theta_a_prime: float,
        theta_a_double: float,
        theta_b_prime: float,
        theta_b_double: float,
    ) -> "SettingsQuad":
        return cls(
            Angle.from_degrees(theta_a_prime),
            Angle.from_degrees(theta_a_double),
            Angle.from_degrees(theta_b_prime),
            Angle.from_degrees(theta_b_double),
        )

    def pairs(self) -> tuple[DetectorSettings, ...]:
        a1, a2 = self.theta_a_prime, self.theta_a_double
        b1, b2 = self.theta_b_prime, self.theta_b_double
        return (
            DetectorSettings(a1, b1),
            DetectorSettings(a1, b2),
            DetectorSettings(a2, b1),
            DetectorSettings(a2, b2),
        )


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities of the four outcome pairs (+,+), (+,-), (-,+), (-,-).

    Valid instances sum to 1 and have unbiased marginals: each side is +1
    with probability 1/2.
    """

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self) -> None:
        for name, p in zip(("p_pp", "p_pm", "p_mp", "p_mm"), self.as_tuple()):
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
        total = sum(self.as_tuple())
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        if (
            abs(self.p_pp + self.p_pm - 0.5) > PROBABILITY_TOL
            or abs(self.p_pp + self.p_mp - 0.5) > PROBABILITY_TOL
        ):
            raise ValueError("marginals are biased; each side must be +1 with probability 1/2")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)

    @property
    def expectation(self) -> float:
        """Expected value of the outcome product under this distribution."""
        return self.p_pp - self.p_pm - self.p_mp + self.p_mm


def singlet_correlation(settings: DetectorSettings) -> float:
    """Expected outcome product for the singlet, -cos(theta_a - theta_b)."""
    return -math.cos(settings.delta)


def joint_distribution(settings: DetectorSettings) -> JointDistribution:
    """Singlet joint outcome distribution with unbiased marginals."""
    half = settings.delta / 2.0
    same = 0.5 * math.sin(half) ** 2
    diff = 0.5 * math.cos(half) ** 2
    return JointDistribution(p_pp=same, p_pm=diff, p_mp=diff, p_mm=same)


def plus_product_probability(delta: float) -> float:
    """Probability that the paired outcomes multiply to +1: sin^2(delta / 2).

    ``delta`` is an analyzer-angle difference in radians; any finite value
    is accepted (the result is even and 2*pi-periodic in delta).
    """
    if not math.isfinite(delta):
        raise ValueError(f"angle difference must be finite, got {delta!r}")
    return math.sin(delta / 2.0) ** 2


def wrap_to_half_turn(delta: float) -> float:
    """Reduce an angle difference to the interval [-pi, pi)."""
    if not math.isfinite(delta):
        raise ValueError(f"angle difference must be finite, got {delta!r}")
    r = (delta + math.pi) % TAU
    if r == TAU:
        r = 0.0
    return r - math.pi


def delta_magnitude(delta: float) -> float:
    """Canonical magnitude of an angle difference, in [0, pi].

    Taking abs() before reduction makes the result bit-identical under
    delta -> -delta; it is also invariant under full-turn shifts up to the
    rounding already present in the shifted argument.
    """
    if not math.isfinite(delta):
        raise ValueError(f"angle difference must be finite, got {delta!r}")
    r = abs(delta) % TAU
    if r == TAU:
        r = 0.0
    return TAU - r if r > math.pi else r
