"""Typed output records and their CSV / JSON-lines serializations.

Every record has a kind, a payload whose keys are fixed per kind, and
run metadata (seed, model, prng, version). JSON lines carry full float
precision and round-trip losslessly through ``record_from_json``. CSV is
for reading and plotting: floats are printed to 6 significant digits,
booleans as true/false, missing values as empty cells.

Column layouts are frozen per kind. Sweep rows emit exactly their payload
columns in CSV (the grid is the point; per-row metadata would only repeat
itself); every other kind appends the metadata columns after the payload.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import IO, Mapping, Optional, Sequence, Union

from . import __version__
from .estimators import ChshEstimate, CorrelationEstimate
from .rationality import RationalityReport, SignificanceResult
from .runner import PRNG_IDENTITY, TrialBatch
from .quantum import SettingsQuad

Scalar = Union[bool, int, float, str, None]

METADATA_KEYS = ("seed", "model", "prng", "version")

KIND_PAYLOAD_COLUMNS: dict[str, tuple[str, ...]] = {
    "batch": ("theta_a_deg", "theta_b_deg", "n", "n_pp", "n_pm", "n_mp", "n_mm", "m"),
    "estimate": ("theta_a_deg", "theta_b_deg", "numerator", "denominator", "real_value", "std_error"),
    "chsh": (
        "a_prime_deg",
        "a_double_deg",
        "b_prime_deg",
        "b_double_deg",
        "n_per_pair",
        "c_prime_prime",
        "c_prime_double",
        "c_double_prime",
        "c_double_double",
        "s_value",
    ),
    "rationality": (
        "delta_deg",
        "n",
        "x",
        "real_count",
        "nearest_m",
        "gap",
        "relative_error",
        "sigma",
        "exact",
        "ratio",
        "label",
    ),
    "sweep-row": (
        "delta_deg",
        "n",
        "x",
        "real_count",
        "nearest_m",
        "gap",
        "relative_error",
        "sigma",
        "ratio",
        "label",
    ),
}

# Kinds whose CSV rows carry only the payload columns.
_PAYLOAD_ONLY_CSV_KINDS = frozenset({"sweep-row"})


@dataclass(frozen=True)
class OutputRecord:
    """One emittable result: kind, fixed-shape payload, and run metadata."""

    kind: str
    payload: Mapping[str, Scalar]
    metadata: Mapping[str, Scalar]

    def __post_init__(self) -> None:
        if self.kind not in KIND_PAYLOAD_COLUMNS:
            known = ", ".join(sorted(KIND_PAYLOAD_COLUMNS))
            raise ValueError(f"unknown record kind {self.kind!r}; known kinds: {known}")
        columns = KIND_PAYLOAD_COLUMNS[self.kind]
        if tuple(self.payload.keys()) != columns:
            raise ValueError(
                f"payload keys for {self.kind!r} must be exactly {columns}, "
                f"got {tuple(self.payload.keys())}"
            )
        if tuple(self.metadata.keys()) != METADATA_KEYS:
            raise ValueError(f"metadata keys must be exactly {METADATA_KEYS}")
        for mapping in (self.payload, self.metadata):
            for key, value in mapping.items():
                if value is not None and not isinstance(value, (bool, int, float, str)):
                    raise TypeError(f"{key}={value!r} is not a scalar")
                if isinstance(value, float) and not math.isfinite(value):
                    raise ValueError(f"{key}={value!r} must be finite")
        object.__setattr__(self, "payload", dict(self.payload))
        object.__setattr__(self, "metadata", dict(self.metadata))


def _metadata(seed: Optional[int], model: Optional[str]) -> dict[str, Scalar]:
    return {"seed": seed, "model": model, "prng": PRNG_IDENTITY, "version": __version__}


def batch_record(batch: TrialBatch) -> OutputRecord:
    c = batch.counts
    payload: dict[str, Scalar] = {
        "theta_a_deg": batch.settings.theta_a.degrees,
        "theta_b_deg": batch.settings.theta_b.degrees,
        "n": c.n,
        "n_pp": c.n_pp,
        "n_pm": c.n_pm,
        "n_mp": c.n_mp,
        "n_mm": c.n_mm,
        "m": c.m,
    }
    return OutputRecord("batch", payload, _metadata(batch.seed, batch.model.name))


def estimate_record(batch: TrialBatch, estimate: CorrelationEstimate) -> OutputRecord:
    payload: dict[str, Scalar] = {
        "theta_a_deg": batch.settings.theta_a.degrees,
        "theta_b_deg": batch.settings.theta_b.degrees,
        "numerator": estimate.numerator,
        "denominator": estimate.denominator,
        "real_value": estimate.real_value,
        "std_error": estimate.std_error,
    }
    return OutputRecord("estimate", payload, _metadata(batch.seed, batch.model.name))


def chsh_record(
    quad: SettingsQuad,
    n_per_pair: int,
    estimate: ChshEstimate,
    seed: int,
    model: str,
) -> OutputRecord:
    c1, c2, c3, c4 = estimate.components
    payload: dict[str, Scalar] = {
        "a_prime_deg": quad.theta_a_prime.degrees,
        "a_double_deg": quad.theta_a_double.degrees,
        "b_prime_deg": quad.theta_b_prime.degrees,
        "b_double_deg": quad.theta_b_double.degrees,
        "n_per_pair": n_per_pair,
        "c_prime_prime": c1.real_value,
        "c_prime_double": c2.real_value,
        "c_double_prime": c3.real_value,
        "c_double_double": c4.real_value,
        "s_value": estimate.s_value,
    }
    return OutputRecord("chsh", payload, _metadata(seed, model))


def _rationality_payload(
    report: RationalityReport, significance: SignificanceResult
) -> dict[str, Scalar]:
    return {
        "delta_deg": math.degrees(report.delta),
        "n": report.n,
        "x": report.target_fraction,
        "real_count": report.real_count,
        "nearest_m": report.nearest_m,
        "gap": report.gap,
        "relative_error": report.relative_error,
        "sigma": report.binomial_sigma,
        "exact": report.exact,
        "ratio": significance.ratio,
        "label": significance.label,
    }


def rationality_record(
    report: RationalityReport, significance: SignificanceResult
) -> OutputRecord:
    return OutputRecord(
        "rationality", _rationality_payload(report, significance), _metadata(None, None)
    )


def sweep_row_record(
    report: RationalityReport, significance: SignificanceResult
) -> OutputRecord:
    payload = _rationality_payload(report, significance)
    del payload["exact"]
    return OutputRecord("sweep-row", payload, _metadata(None, None))


def emit_jsonl(records: Sequence[OutputRecord], stream: IO[str]) -> None:
    """One JSON object per record per line, full precision, stable key order."""
    for record in records:
        obj: dict[str, Scalar] = {"kind": record.kind}
        obj.update(record.payload)
        obj.update(record.metadata)
        stream.write(json.dumps(obj, allow_nan=False) + "\n")


def record_from_json(line: str) -> OutputRecord:
    """Inverse of one ``emit_jsonl`` line."""
    obj = json.loads(line)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("record line must be a JSON object with a 'kind' field")
    kind = obj.pop("kind")
    if kind not in KIND_PAYLOAD_COLUMNS:
        raise ValueError(f"unknown record kind {kind!r}")
    metadata = {key: obj.pop(key) for key in METADATA_KEYS if key in obj}
    if tuple(metadata.keys()) != METADATA_KEYS:
        raise ValueError(f"record line missing metadata keys {METADATA_KEYS}")
    payload = {key: obj[key] for key in KIND_PAYLOAD_COLUMNS[kind] if key in obj}
    return OutputRecord(kind, payload, metadata)


def _csv_cell(value: Scalar) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _csv_columns(kind: str) -> tuple[str, ...]:
    columns = KIND_PAYLOAD_COLUMNS[kind]
    if kind in _PAYLOAD_ONLY_CSV_KINDS:
        return columns
    return columns + METADATA_KEYS


def emit_csv(
    records: Sequence[OutputRecord], stream: IO[str], kind: Optional[str] = None
) -> None:
    """Header-plus-rows CSV, one section per consecutive run of kinds.

    With ``kind`` given and no records, emits that kind's header alone;
    with neither, there is no way to pick a header and the call fails.
    """
    writer = csv.writer(stream, lineterminator="\n")
    if not records:
        if kind is None:
            raise ValueError("cannot emit CSV for zero records without a kind")
        if kind not in KIND_PAYLOAD_COLUMNS:
            raise ValueError(f"unknown record kind {kind!r}")
        writer.writerow(_csv_columns(kind))
        return
    current_kind: Optional[str] = None
    for record in records:
        if record.kind != current_kind:
            current_kind = record.kind
            writer.writerow(_csv_columns(current_kind))
        columns = _csv_columns(current_kind)
        merged = {**record.payload, **record.metadata}
        writer.writerow([_csv_cell(merged.get(column)) for column in columns])


def emit(
    records: Sequence[OutputRecord],
    fmt: str,
    stream: IO[str],
    kind: Optional[str] = None,
) -> None:
    """Write records in the named format; "json" is shorthand for json-lines."""
    if fmt == "csv":
        emit_csv(records, stream, kind=kind)
    elif fmt in ("json", "json-lines"):
        emit_jsonl(records, stream)
    else:
        raise ValueError(f"unknown output format {fmt!r}; use csv or json-lines")
