"""Seeded Monte Carlo runs and rational-count analysis for two-detector
singlet spin-correlation experiments.

The package answers two kinds of question:

- simulation: what counts and correlations do different outcome
  mechanisms (the singlet joint distribution, a nonlocal stochastic rule,
  a local deterministic rule) produce at given analyzer angles, under a
  fixed seed;
- representability: when the predicted plus-product fraction
  sin^2(delta/2) is irrational, how far is the expected count n*x from
  the nearest integer m, and how does that gap compare to shot noise.
"""

__version__ = "0.1.0"

from .quantum import (
    TAU,
    Angle,
    DetectorSettings,
    JointDistribution,
    SettingsQuad,
    delta_magnitude,
    joint_distribution,
    plus_product_probability,
    singlet_correlation,
    wrap_to_half_turn,
)
from .models import (
    ModelKind,
    ModelSpec,
    PairResult,
    expected_correlation,
    local_outcome_a,
    local_outcome_b,
    sample_pair,
    sample_pairs,
)
from .runner import (
    PRNG_IDENTITY,
    Counts,
    RunConfig,
    TrialBatch,
    make_rng,
    run_experiment,
    run_quad,
)
from .estimators import (
    ChshEstimate,
    CorrelationEstimate,
    chsh_combination,
    chsh_value,
    correlation_from_counts,
)
from .rationality import (
    EXACTNESS_TOL,
    RationalityReport,
    SignificanceResult,
    exact_representability,
    rationality_report,
    significance_compare,
    sweep_reports,
)
from .records import (
    KIND_PAYLOAD_COLUMNS,
    METADATA_KEYS,
    OutputRecord,
    batch_record,
    chsh_record,
    emit,
    emit_csv,
    emit_jsonl,
    estimate_record,
    rationality_record,
    record_from_json,
    sweep_row_record,
)
from .cli import cli_main

__all__ = [
    "__version__",
    "TAU",
    "Angle",
    "DetectorSettings",
    "SettingsQuad",
    "JointDistribution",
    "singlet_correlation",
    "joint_distribution",
    "plus_product_probability",
    "wrap_to_half_turn",
    "delta_magnitude",
    "ModelKind",
    "ModelSpec",
    "PairResult",
    "sample_pair",
    "sample_pairs",
    "expected_correlation",
    "local_outcome_a",
    "local_outcome_b",
    "PRNG_IDENTITY",
    "Counts",
    "TrialBatch",
    "RunConfig",
    "make_rng",
    "run_experiment",
    "run_quad",
    "CorrelationEstimate",
    "ChshEstimate",
    "correlation_from_counts",
    "chsh_combination",
    "chsh_value",
    "EXACTNESS_TOL",
    "RationalityReport",
    "SignificanceResult",
    "rationality_report",
    "exact_representability",
    "sweep_reports",
    "significance_compare",
    "METADATA_KEYS",
    "KIND_PAYLOAD_COLUMNS",
    "OutputRecord",
    "batch_record",
    "estimate_record",
    "chsh_record",
    "rationality_record",
    "sweep_row_record",
    "emit",
    "emit_csv",
    "emit_jsonl",
    "record_from_json",
    "cli_main",
]
