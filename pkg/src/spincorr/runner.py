"""Seeded experiment execution: turn (model, settings, n, seed) into counts.

Reproducibility contract
------------------------

The generator is numpy's PCG64 bit generator seeded through SeedSequence;
``PRNG_IDENTITY`` names that choice so output records can carry it. For a
given (model, settings, n, seed) the outcome tallies are deterministic:
``run_experiment`` always consumes the stream exactly as one
``sample_pairs`` call of size n would, even though it blocks the work
internally to bound memory.

``chunk_size`` opts into a different, also deterministic scheme that
derives one child stream per chunk via ``SeedSequence(seed).spawn``. Runs
with and without ``chunk_size`` use different random variates and will not
produce identical counts; chunked runs are reproducible against the same
chunk_size only.

Four-pair runs (``run_quad``) give pair k the seed ``seed ^ k`` for
k = 0..3, so the four batches are independent but jointly determined by
one seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .models import ModelSpec, sample_pairs
from .quantum import DetectorSettings, SettingsQuad

PRNG_IDENTITY = "numpy-pcg64-seedseq"

# Trials per internal block; bounds peak memory at a few MB of uniforms.
_BLOCK = 1 << 19

_SEED_MAX = 2**64


def _check_seed(seed: int) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    if not (0 <= seed < _SEED_MAX):
        raise ValueError(f"seed must lie in [0, 2**64), got {seed!r}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide generator construction for a given seed."""
    return np.random.Generator(np.random.PCG64(_check_seed(seed)))


@dataclass(frozen=True)
class Counts:
    """Tallies of the four outcome pairs over a batch of trials."""

    n_pp: int
    n_pm: int
    n_mp: int
    n_mm: int

    def __post_init__(self) -> None:
        for name in ("n_pp", "n_pm", "n_mp", "n_mm"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value!r}")

    @property
    def n(self) -> int:
        """Total number of trials."""
        return self.n_pp + self.n_pm + self.n_mp + self.n_mm

    @property
    def m(self) -> int:
        """Number of trials whose outcome product is +1."""
        return self.n_pp + self.n_mm

    def __add__(self, other: "Counts") -> "Counts":
        if not isinstance(other, Counts):
            return NotImplemented
        return Counts(
            self.n_pp + other.n_pp,
            self.n_pm + other.n_pm,
            self.n_mp + other.n_mp,
            self.n_mm + other.n_mm,
        )


@dataclass(frozen=True)
class TrialBatch:
    """One completed run: what was configured plus the resulting counts."""

    settings: DetectorSettings
    model: ModelSpec
    seed: int
    counts: Counts

    def __post_init__(self) -> None:
        if not isinstance(self.settings, DetectorSettings):
            raise TypeError(f"settings must be DetectorSettings, got {self.settings!r}")
        if not isinstance(self.model, ModelSpec):
            raise TypeError(f"model must be a ModelSpec, got {self.model!r}")
        _check_seed(self.seed)
        if not isinstance(self.counts, Counts):
            raise TypeError(f"counts must be Counts, got {self.counts!r}")
        if self.counts.n < 1:
            raise ValueError("a trial batch must contain at least one trial")


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run: model, angles, size, seed."""

    model: ModelSpec
    settings: Union[DetectorSettings, SettingsQuad]
    n: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.model, ModelSpec):
            raise TypeError(f"model must be a ModelSpec, got {self.model!r}")
        if not isinstance(self.settings, (DetectorSettings, SettingsQuad)):
            raise TypeError(
                f"settings must be DetectorSettings or SettingsQuad, got {self.settings!r}"
            )
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        _check_seed(self.seed)


def _tally(r_a: np.ndarray, r_b: np.ndarray) -> Counts:
    # category index: (+,+)=0, (+,-)=1, (-,+)=2, (-,-)=3
    cat = (r_a == -1).astype(np.intp) * 2 + (r_b == -1)
    c = np.bincount(cat, minlength=4)
    return Counts(int(c[0]), int(c[1]), int(c[2]), int(c[3]))


def run_experiment(config: RunConfig, *, chunk_size: int | None = None) -> TrialBatch:
    """Run one seeded batch at a single settings pair and tally the outcomes.

    Without ``chunk_size`` the counts are identical to tallying a single
    ``sample_pairs(model, settings, n, make_rng(seed))`` call. With it, the
    trials are split into independent child streams (see module docstring).
    """
    if not isinstance(config.settings, DetectorSettings):
        raise TypeError("run_experiment needs a single settings pair; use run_quad for four")

    total = Counts(0, 0, 0, 0)
    if chunk_size is None:
        rng = make_rng(config.seed)
        remaining = config.n
        while remaining > 0:
            step = min(remaining, _BLOCK)
            total = total + _tally(*sample_pairs(config.model, config.settings, step, rng))
            remaining -= step
    else:
        if not isinstance(chunk_size, int) or isinstance(chunk_size, bool) or chunk_size < 1:
            raise ValueError(f"chunk_size must be a positive integer, got {chunk_size!r}")
        n_chunks = math.ceil(config.n / chunk_size)
        children = np.random.SeedSequence(config.seed).spawn(n_chunks)
        remaining = config.n
        for child in children:
            step = min(remaining, chunk_size)
            rng = np.random.Generator(np.random.PCG64(child))
            total = total + _tally(*sample_pairs(config.model, config.settings, step, rng))
            remaining -= step

    return TrialBatch(settings=config.settings, model=config.model, seed=config.seed, counts=total)


def run_quad(config: RunConfig) -> tuple[TrialBatch, ...]:
    """Run all four settings pairs of a quad, n trials each.

    Pair k (in ``SettingsQuad.pairs()`` order) runs with seed ``seed ^ k``,
    so the batches use distinct streams but reproduce from the one seed.
    """
    if not isinstance(config.settings, SettingsQuad):
        raise TypeError("run_quad needs a SettingsQuad; use run_experiment for a single pair")
    batches = []
    for k, pair in enumerate(config.settings.pairs()):
        sub = RunConfig(model=config.model, settings=pair, n=config.n, seed=config.seed ^ k)
        batches.append(run_experiment(sub))
    return tuple(batches)
