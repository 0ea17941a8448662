# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Data files written by the commands and the readers that load them back.

Tables are CSV with a header row, or JSON ``{"columns": [...], "rows":
[[...]]}``; floats are written with 17 significant digits so every value
re-parses to the same double.  Structured reports are JSON.
"""
import csv
import json
import math
from dataclasses import fields
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .dynamics import Trajectory
from .experiments import AxisSpec
from .experiments import CensusReport
from .experiments import ConsistencyReport
from .experiments import IntensityJump
from .experiments import OrbitSummary
from .experiments import PhaseCell
from .experiments import PhaseDiagram
from .experiments import PhaseLabel
from .experiments import QuenchReport
from .experiments import SIGNATURE_NAMES
from .experiments import ScanPoint
from .fixed_points import FixedPoint
from .fixed_points import FixedPointLabel
from .fixed_points import FixedPointSet
from .model import COORDINATE_NAMES
from .model import ModelParams
from .model import ModelVariant
from .model import SystemState
from .spectral import FrequencySpectrum
from .spectral import Regime
from .stability import EigenReport
from .stability import ExceptionalPoint

Row = Sequence[Any]


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def parse_value(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _json_value(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        # JSON has no NaN or infinity
        return None
    if isinstance(value, np.ndarray):
        return [_json_value(item) for item in value.tolist()]
    if isinstance(value, complex):
        return [_json_value(value.real), _json_value(value.imag)]
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    return value


def write_json(path: Path, payload: Any) -> Path:
    path = Path(path).with_suffix(".json")
    text = json.dumps(_json_value(payload), indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def read_json(path: Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_table(
    path: Path, columns: Sequence[str], rows: Iterable[Row], fmt: str = "csv"
) -> Path:
    """Write a table as ``<path>.csv`` or ``<path>.json``; returns the file written."""
    if fmt == "json":
        payload = {"columns": list(columns), "rows": [list(row) for row in rows]}
        return write_json(path, payload)
    path = Path(path).with_suffix(".csv")
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    return path


def read_table(path: Path) -> Tuple[List[str], List[List[Any]]]:
    path = Path(path)
    if path.suffix == ".json":
        payload = read_json(path)
        return list(payload["columns"]), [list(row) for row in payload["rows"]]
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        columns = next(reader)
        return columns, [[parse_value(value) for value in row] for row in reader]


# --- trajectories ------------------------------------------------------------

TRAJECTORY_COLUMNS = ("t",) + COORDINATE_NAMES


def trajectory_rows(trajectory: Trajectory) -> List[List[float]]:
    """Samples with the field of spin-only variants filled in."""
    states = trajectory.states.copy()
    beta = trajectory.field()
    states[:, 6], states[:, 7] = beta.real, beta.imag
    return np.column_stack([trajectory.times, states]).tolist()


def write_trajectory(path: Path, trajectory: Trajectory, fmt: str = "csv") -> Path:
    return write_table(path, TRAJECTORY_COLUMNS, trajectory_rows(trajectory), fmt)


def read_trajectory(path: Path) -> Tuple[np.ndarray, np.ndarray]:
    """Times and (n, 8) states of a written trajectory."""
    columns, rows = read_table(path)
    if tuple(columns) != TRAJECTORY_COLUMNS:
        raise ValueError(f"{path} is not a trajectory table")
    data = np.array(rows, dtype=float).reshape(len(rows), len(TRAJECTORY_COLUMNS))
    return data[:, 0], data[:, 1:]


# --- fixed points ------------------------------------------------------------


def params_payload(p: ModelParams) -> Dict[str, float]:
    return {
        ("lambda" if item.name == "lam" else item.name): getattr(p, item.name)
        for item in fields(p)
    }


def params_from_payload(payload: Dict[str, float]) -> ModelParams:
    return ModelParams(
        **{("lam" if key == "lambda" else key): value for key, value in payload.items()}
    )


def fixed_points_payload(found: FixedPointSet) -> Dict[str, Any]:
    return {
        "params": params_payload(found.params),
        "variant": found.variant.value,
        "seeds_used": found.seeds_used,
        "points": [
            {
                "state": point.state.to_array(),
                "residual": point.residual_norm,
                "label": point.label.value,
                "stable": point.stable,
                "marginal": point.marginal,
            }
            for point in found.points
        ],
    }


def fixed_points_from_payload(payload: Dict[str, Any]) -> FixedPointSet:
    return FixedPointSet(
        params=params_from_payload(payload["params"]),
        variant=ModelVariant(payload["variant"]),
        seeds_used=payload["seeds_used"],
        points=[
            FixedPoint(
                state=SystemState.from_array(np.array(item["state"], dtype=float)),
                residual_norm=item["residual"],
                label=FixedPointLabel(item["label"]),
                stable=item["stable"],
                marginal=item["marginal"],
            )
            for item in payload["points"]
        ],
    )


# --- spectra -----------------------------------------------------------------


def spectrum_sweep_columns(size: int) -> List[str]:
    columns = ["phi"]
    for index in range(1, size + 1):
        columns += [f"re_eta_{index}", f"im_eta_{index}"]
    return columns


def spectrum_sweep_rows(
    phis: Sequence[float], reports: Sequence[EigenReport]
) -> List[List[float]]:
    rows = []
    for phi, report in zip(phis, reports):
        row = [float(phi)]
        for value in report.eigenvalues:
            row += [float(value.real), float(value.imag)]
        rows.append(row)
    return rows


def eigenvalues_from_rows(rows: Sequence[Row]) -> Tuple[np.ndarray, np.ndarray]:
    """Phis and the (n, size) complex eigenvalues of a spectrum sweep table."""
    data = np.array(rows, dtype=float)
    return data[:, 0], data[:, 1::2] + 1j * data[:, 2::2]


def exceptional_points_payload(
    points: Sequence[ExceptionalPoint],
) -> List[Dict[str, Any]]:
    return [
        {
            "phi": point.phi,
            "phi_over_pi": point.phi / math.pi,
            "min_pair_gap": point.min_pair_gap,
            "min_vector_angle": point.min_vector_angle,
            "confirmed": point.confirmed,
            "eigenvalue": point.eigenvalue,
        }
        for point in points
    ]


FREQUENCY_COLUMNS = ("frequency", "amplitude")


def frequency_rows(spectrum: FrequencySpectrum) -> List[List[float]]:
    return np.column_stack([spectrum.frequencies, spectrum.amplitudes]).tolist()


def regime_payload(regime: Regime) -> Dict[str, Any]:
    return {
        "label": regime.label.value,
        "dc_amplitude": regime.dc_amplitude,
        "osc_amplitude": regime.oscillation_amplitude,
        "power_capture": regime.power_capture,
        "peaks": [
            {"f": peak.frequency, "amp": peak.amplitude} for peak in regime.peaks
        ],
    }


# --- experiments -------------------------------------------------------------


def phase_diagram_columns(axes: Tuple[AxisSpec, AxisSpec]) -> List[str]:
    return [
        axes[0].name,
        axes[1].name,
        "label",
        "max_growth",
        "mean_intensity",
        "n_attractors",
    ]


def phase_diagram_rows(diagram: PhaseDiagram) -> List[List[Any]]:
    return [
        [
            cell.coordinates[0],
            cell.coordinates[1],
            cell.label.value,
            cell.max_growth,
            cell.mean_intensity,
            cell.n_attractors,
        ]
        for cell in diagram.cells
    ]


def phase_cells_from_rows(
    rows: Sequence[Row], axes: Tuple[AxisSpec, AxisSpec]
) -> List[PhaseCell]:
    """Cells of a phase-diagram table, in row-major order."""
    columns = axes[1].count
    return [
        PhaseCell(
            row=index // columns,
            column=index % columns,
            coordinates=(float(row[0]), float(row[1])),
            label=PhaseLabel(row[2]),
            max_growth=math.nan if row[3] is None else float(row[3]),
            mean_intensity=math.nan if row[4] is None else float(row[4]),
            n_attractors=None if row[5] is None else int(row[5]),
        )
        for index, row in enumerate(rows)
    ]


def _orbit_payload(summary: OrbitSummary) -> Dict[str, Any]:
    return {
        "regime": summary.regime.value,
        "mean_intensity": summary.mean_intensity,
        "settled": summary.settled,
        "final_state": summary.final_state.to_array(),
    }


def quench_payload(report: QuenchReport) -> Dict[str, Any]:
    return {
        "params": params_payload(report.params),
        "pre": _orbit_payload(report.pre),
        "post": _orbit_payload(report.post),
        "verdict": report.verdict.value,
        "distance": report.distance,
        "distances": {"plain": report.distances[0], "parity": report.distances[1]},
    }


def census_payload(report: CensusReport) -> Dict[str, Any]:
    return {
        "params": params_payload(report.params),
        "n_initial_conditions": report.n_initial_conditions,
        "cluster_count": report.cluster_count,
        "pt_paired": report.pt_paired,
        "unresolved": report.unresolved,
        "signature_names": list(SIGNATURE_NAMES),
        "clusters": [
            {
                "signature": cluster.signature,
                "members": list(cluster.members),
                "diameter": cluster.diameter,
            }
            for cluster in report.clusters
        ],
    }


def consistency_payload(report: ConsistencyReport) -> Dict[str, Any]:
    return {
        "params": params_payload(report.params),
        "n_samples": report.n_samples,
        "identity_deviation": report.identity_deviation,
        "comparisons": [
            {
                "scale": item.scale,
                "max_real_full": item.max_real_full,
                "max_real_adiabatic": item.max_real_adiabatic,
                "deviation": item.deviation,
                "frequency_deviation": item.frequency_deviation,
            }
            for item in report.comparisons
        ],
    }


SCAN_COLUMNS = (
    "lambda",
    "label",
    "regime",
    "mean_intensity",
    "dc_amplitude",
    "peak_low",
    "peak_high",
)


def scan_rows(scan: Sequence[ScanPoint]) -> List[List[Any]]:
    rows = []
    for point in scan:
        peaks: List[Optional[float]] = list(point.peak_frequencies)
        peaks += [None] * (2 - len(peaks))
        rows.append(
            [
                point.lam,
                point.label.value,
                point.regime.value,
                point.mean_intensity,
                point.dc_amplitude,
            ]
            + peaks
        )
    return rows


def jump_payload(jump: IntensityJump) -> Dict[str, Any]:
    return {
        "index": jump.index,
        "lambda_before": jump.lam_before,
        "lambda_after": jump.lam_after,
        "jump": jump.jump,
        "median_increment": jump.median_increment,
        "ratio": jump.ratio,
    }
