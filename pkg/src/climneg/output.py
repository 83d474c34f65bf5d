"""Deterministic CSV and JSON emission for run artifacts.

Floats are serialized with 17 significant digits so repeated runs are
byte-identical and downstream consumers can round-trip exact values.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .world import RunRecord


def fmt(x) -> str:
    return "%.17g" % float(x)


def write_trajectory_csv(record: RunRecord, path) -> None:
    lines = [",".join(RunRecord.COLUMNS)]
    for row in record.rows():
        t, rid = row[0], row[1]
        floats = row[2:14]
        infeasible = row[14]
        m_at, t_at = row[15], row[16]
        lines.append(",".join(
            [str(t), str(rid)]
            + [fmt(v) for v in floats]
            + [str(infeasible), fmt(m_at), fmt(t_at)]
        ))
    Path(path).write_text("\n".join(lines) + "\n")


def effective_floor_summary(record: RunRecord | None, base_floors) -> np.ndarray:
    """Per-region maximum effective floor over the run (base floors when
    the horizon is empty)."""
    base = np.asarray(base_floors, dtype=float)
    if record is None or record.horizon == 0:
        return base
    return np.maximum(base, record.floor.max(axis=0))


def write_floors_csv(region_ids, base_floors, effective_floors, path) -> None:
    lines = ["regionId,baseFloor,effectiveFloor"]
    for i, rid in enumerate(region_ids):
        lines.append(f"{rid},{fmt(base_floors[i])},{fmt(effective_floors[i])}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_summary_json(summary: dict, path) -> None:
    Path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def build_summary(region_ids, result, rounds: int, converged: bool) -> dict:
    return {
        "returns": {str(rid): float(result.returns[i]) for i, rid in enumerate(region_ids)},
        "totalEmissions": float(result.cumulative_emissions),
        "finalTAT": float(result.final_tAT),
        "converged": bool(converged),
        "roundsUsed": int(rounds),
        "infeasibleCount": int(result.infeasible_count),
    }


def regime_totals(base_floors, result) -> dict:
    """The per-regime aggregate row of a comparison."""
    floors = [float(f) for f in base_floors]
    return {
        "floorSum": math.fsum(floors),
        "floorMean": math.fsum(floors) / len(floors),
        "cumulativeEmissions": float(result.cumulative_emissions),
        "meanReturn": float(np.mean(result.returns)),
        "finalTAT": float(result.final_tAT),
    }


def write_compare_csv(region_ids, regimes, totals, returns_by_regime, path) -> None:
    """One row per regime: totals plus per-region return deltas against
    the first regime listed."""
    header = ["regime", "floorSum", "floorMean", "cumulativeEmissions",
              "meanReturn", "finalTAT"]
    header += [f"deltaReturn_{rid}" for rid in region_ids]
    lines = [",".join(header)]
    baseline = returns_by_regime[regimes[0]]
    for regime in regimes:
        tot = totals[regime]
        deltas = returns_by_regime[regime] - baseline
        lines.append(",".join(
            [regime, fmt(tot["floorSum"]), fmt(tot["floorMean"]),
             fmt(tot["cumulativeEmissions"]), fmt(tot["meanReturn"]),
             fmt(tot["finalTAT"])]
            + [fmt(d) for d in deltas]
        ))
    Path(path).write_text("\n".join(lines) + "\n")
