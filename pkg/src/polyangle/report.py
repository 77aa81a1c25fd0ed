"""Machine-readable run records (JSON) and convergence tables (CSV)."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from .angles import AngleTriple
from .closed_form import predict
from .estimators import EstimateResult
from .geometry import RegionSpec, RegularNGon

__all__ = ["RunRecord", "make_record", "record_to_json", "record_from_json",
           "CSV_COLUMNS", "sweep_rows", "write_csv"]

CSV_COLUMNS = [
    "region", "method", "work",
    "alpha", "beta", "gamma",
    "alpha_err", "beta_err", "gamma_err",
    "stderr_alpha", "stderr_beta", "stderr_gamma",
    "seed", "wall_time_s",
]


@dataclass(frozen=True)
class RunRecord:
    """One estimator run with full configuration echo; round-trips through JSON."""

    tool_version: str
    region_string: str
    method_string: str
    config: dict
    timestamp: str
    mean: AngleTriple
    std_error: Optional[AngleTriple]
    error_estimate: Optional[AngleTriple]
    evaluations: int
    wall_time_s: float
    seed: Optional[int]


def make_record(result: EstimateResult, region_string: str, config: dict) -> RunRecord:
    from . import __version__

    return RunRecord(
        tool_version=__version__,
        region_string=region_string,
        method_string=result.method,
        config=dict(config),
        timestamp=datetime.now(timezone.utc).isoformat(),
        mean=result.mean,
        std_error=result.std_error,
        error_estimate=result.error_estimate,
        evaluations=result.evaluations,
        wall_time_s=result.wall_time,
        seed=result.seed,
    )


def _triple_dict(t: Optional[AngleTriple]):
    if t is None:
        return None
    return {"alpha": t.alpha, "beta": t.beta, "gamma": t.gamma}


def _triple_from(obj) -> Optional[AngleTriple]:
    if obj is None:
        return None
    return AngleTriple(obj["alpha"], obj["beta"], obj["gamma"])


def record_to_json(record: RunRecord) -> str:
    payload = {
        "tool_version": record.tool_version,
        "region_string": record.region_string,
        "method_string": record.method_string,
        "config": record.config,
        "timestamp": record.timestamp,
        "mean": _triple_dict(record.mean),
        "std_error": _triple_dict(record.std_error),
        "error_estimate": _triple_dict(record.error_estimate),
        "evaluations": record.evaluations,
        "wall_time_s": record.wall_time_s,
        "seed": record.seed,
    }
    return json.dumps(payload, sort_keys=True)


def record_from_json(text: str) -> RunRecord:
    obj = json.loads(text)
    return RunRecord(
        tool_version=obj["tool_version"],
        region_string=obj["region_string"],
        method_string=obj["method_string"],
        config=obj["config"],
        timestamp=obj["timestamp"],
        mean=_triple_from(obj["mean"]),
        std_error=_triple_from(obj["std_error"]),
        error_estimate=_triple_from(obj["error_estimate"]),
        evaluations=obj["evaluations"],
        wall_time_s=obj["wall_time_s"],
        seed=obj["seed"],
    )


def sweep_rows(region_string: str, region: RegionSpec, sweep) -> list[dict]:
    """CSV rows for a convergence sweep.

    Error columns hold the refinement delta for quadrature rows and the
    deviation from the closed-form prediction for grid/MC rows on regular
    polygons; they stay empty where neither applies.  Wall time is omitted so
    repeated runs of a deterministic sweep are byte-identical.
    """
    reference = predict(region.n).mean if isinstance(region, RegularNGon) else None
    rows = []
    for work, res in sweep:
        if res.method == "quad":
            err = res.error_estimate
        elif reference is not None:
            err = AngleTriple(
                abs(res.mean.alpha - reference.alpha),
                abs(res.mean.beta - reference.beta),
                abs(res.mean.gamma - reference.gamma),
            )
        else:
            err = None
        se = res.std_error
        rows.append({
            "region": region_string,
            "method": res.method,
            "work": str(work),
            "alpha": repr(res.mean.alpha),
            "beta": repr(res.mean.beta),
            "gamma": repr(res.mean.gamma),
            "alpha_err": repr(err.alpha) if err else "",
            "beta_err": repr(err.beta) if err else "",
            "gamma_err": repr(err.gamma) if err else "",
            "stderr_alpha": repr(se.alpha) if se else "",
            "stderr_beta": repr(se.beta) if se else "",
            "stderr_gamma": repr(se.gamma) if se else "",
            "seed": "" if res.seed is None else str(res.seed),
            "wall_time_s": "",
        })
    return rows


def write_csv(path: str, rows: list[dict]) -> None:
    """Write sweep rows as RFC-4180 CSV with LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([row[col] for col in CSV_COLUMNS])
