"""Scenario files: a JSON object with the linear coefficients of every parameter.

Example::

    {
      "name": "fig1l",
      "e1": [1.0, -1.0],
      "e2": [0.0, 1.0],
      "gamma1": [-1.0, 0.0],
      "gamma2": [-1.0, 0.0],
      "omega": [0.0, 0.1, 0.0, 0.0],
      "a_min": 0.0,
      "a_max": 1.0,
      "n_steps": 2001
    }

``omega`` lists ``[re0, im0, re1, im1]`` for ``omega(a) = (re0 + i im0) + (re1 + i im1) a``.
``n_steps`` is optional and defaults to 2001.
"""

from __future__ import annotations

import json
import math
import re

from .export import scenario_to_dict
from .scenario import SweepScenario

REQUIRED_KEYS = ("name", "e1", "e2", "gamma1", "gamma2", "omega", "a_min", "a_max")
OPTIONAL_KEYS = ("n_steps",)
_LENGTHS = {"e1": 2, "e2": 2, "gamma1": 2, "gamma2": 2, "omega": 4}


class ParseError(ValueError):
    pass


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def _where(text: str, key: str) -> str:
    line = _line_of(text, key)
    return f"key {key!r}" if line is None else f"line {line}, key {key!r}"


def _reject_constant(name: str):
    raise ValueError(f"non-finite constant {name}")


def _number(text: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{_where(text, key)}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ParseError(f"{_where(text, key)}: value must be finite")
    return x


def parse_config(text: str) -> SweepScenario:
    """Parse a scenario document; every problem raises :class:`ParseError`."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(doc, dict):
        raise ParseError("scenario document must be a JSON object")

    unknown = sorted(set(doc) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ParseError(f"{_where(text, unknown[0])}: unknown key")
    for key in REQUIRED_KEYS:
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")

    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ParseError(f"{_where(text, 'name')}: expected a non-empty string")

    coeffs = {}
    for key, n in _LENGTHS.items():
        value = doc[key]
        if not isinstance(value, list) or len(value) != n:
            raise ParseError(f"{_where(text, key)}: expected a list of {n} numbers")
        coeffs[key] = [_number(text, key, v) for v in value]

    a_min = _number(text, "a_min", doc["a_min"])
    a_max = _number(text, "a_max", doc["a_max"])
    if not a_min < a_max:
        raise ParseError(f"{_where(text, 'a_max')}: sweep range requires a_min < a_max, got {a_min} >= {a_max}")

    n_steps = doc.get("n_steps", 2001)
    if isinstance(n_steps, bool) or not isinstance(n_steps, int) or n_steps < 2:
        raise ParseError(f"{_where(text, 'n_steps')}: expected an integer >= 2")

    re0, im0, re1, im1 = coeffs["omega"]
    return SweepScenario(
        name=name,
        e1=tuple(coeffs["e1"]),
        e2=tuple(coeffs["e2"]),
        gamma1=tuple(coeffs["gamma1"]),
        gamma2=tuple(coeffs["gamma2"]),
        omega=(complex(re0, im0), complex(re1, im1)),
        a_min=a_min,
        a_max=a_max,
        n_steps=n_steps,
    )


def emit_config(scenario: SweepScenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"
