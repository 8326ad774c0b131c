"""CSV and JSON serialization of sweep records."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence

from .ep import EpReport
from .scenario import SweepScenario
from .sweep import SweepRecord

#: Fixed CSV column order. See README for the column dictionary.
CSV_COLUMNS = (
    "a", "E1", "G1_half", "E2", "G2_half", "r1", "r2", "one_minus_r1", "one_minus_r2",
    "abs_b11", "abs_b12", "abs_b21", "abs_b22", "theta11", "theta12", "theta21", "theta22",
    "absZ", "reZ", "imZ", "absB12", "ep_alignment", "nl_mag1", "nl_mag2", "at_ep", "regime",
)


class EmptyInput(ValueError):
    pass


def format_float(x: float) -> str:
    # 17 significant digits round-trip any binary64 value
    return f"{x:.17g}"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, str):
        return value
    return format_float(float(value))


def emit_csv(records: Sequence[SweepRecord]) -> str:
    if not records:
        raise EmptyInput("no records to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        row = rec.as_dict()
        writer.writerow([_cell(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    """Inverse of :func:`emit_csv`; numeric columns come back as floats."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for key, value in row.items():
            if key == "regime":
                parsed[key] = value
            elif key == "at_ep":
                parsed[key] = value == "1"
            else:
                parsed[key] = float(value)
        rows.append(parsed)
    return rows


def scenario_to_dict(scenario: SweepScenario) -> dict:
    w0, w1 = scenario.omega
    return {
        "name": scenario.name,
        "e1": list(scenario.e1),
        "e2": list(scenario.e2),
        "gamma1": list(scenario.gamma1),
        "gamma2": list(scenario.gamma2),
        "omega": [w0.real, w0.imag, w1.real, w1.imag],
        "a_min": scenario.a_min,
        "a_max": scenario.a_max,
        "n_steps": scenario.n_steps,
    }


def emit_json(records: Sequence[SweepRecord], scenario: SweepScenario | None = None) -> str:
    if not records:
        raise EmptyInput("no records to write")
    doc = {
        "scenario": None if scenario is None else scenario_to_dict(scenario),
        "records": [rec.as_dict() for rec in records],
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def emit_ep_json(reports: Sequence[EpReport], scenario: SweepScenario) -> str:
    doc = {"scenario": scenario_to_dict(scenario), "eps": [r.as_dict() for r in reports]}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"
