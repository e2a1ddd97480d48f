"""Unit conversions to the canonical internal system: cm, day, mg/L.

Inputs arrive in mixed units (diffusion in m²/a, spacings in cm, times in
days), so every number is converted once at the boundary and the solver core
never sees a unit again.  The year is fixed at 365 days by convention.
"""

from __future__ import annotations

import math
import re

from .errors import ParameterError

CM2_PER_M2 = 1.0e4
CM_PER_M = 100.0
DAYS_PER_YEAR = 365.0


def convert_diffusion_m2a_to_cm2day(d_m2_per_annum: float) -> float:
    """Convert a diffusion-dispersion coefficient from m²/a to cm²/day.

    Exact arithmetic: value * 1e4 / 365.
    """
    if not isinstance(d_m2_per_annum, (int, float)) or not math.isfinite(d_m2_per_annum):
        raise ParameterError(f"diffusion coefficient must be finite, got {d_m2_per_annum!r}")
    if d_m2_per_annum <= 0:
        raise ParameterError(f"diffusion coefficient must be > 0, got {d_m2_per_annum!r}")
    return d_m2_per_annum * CM2_PER_M2 / DAYS_PER_YEAR


# Factor tables: multiply a value in the listed unit to get the canonical unit.
# Canonical units: diffusion cm2/day, velocity cm/day, length cm, time day,
# concentration mg/L, bulk density mg/m3, distribution factor m3/mg.
UNIT_TABLES: dict[str, dict[str, float]] = {
    "diffusion": {
        "cm2/day": 1.0,
        "m2/a": CM2_PER_M2 / DAYS_PER_YEAR,
        "m2/day": CM2_PER_M2,
    },
    "velocity": {
        "cm/day": 1.0,
        "mm/day": 0.1,
        "m/day": CM_PER_M,
        "m/a": CM_PER_M / DAYS_PER_YEAR,
    },
    "length": {
        "cm": 1.0,
        "mm": 0.1,
        "m": CM_PER_M,
    },
    "time": {
        "day": 1.0,
        "days": 1.0,
    },
    "concentration": {
        "mg/L": 1.0,
        "g/L": 1000.0,
    },
    "bulk_density": {
        "mg/m3": 1.0,
        "kg/m3": 1.0e6,
        "g/cm3": 1.0e9,
    },
    "distribution": {
        "m3/mg": 1.0,
        "m3/kg": 1.0e-6,
        "L/kg": 1.0e-9,
        "mL/g": 1.0e-9,
    },
}

_QUANTITY_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text: str, dimension: str, *, default_unit: str | None = None) -> float:
    """Parse ``"0.02 m2/a"`` (or ``"0.01day"``) into a canonical-unit float.

    A bare number is accepted only when ``default_unit`` is given; dimensioned
    config values must always carry their unit.
    """
    table = UNIT_TABLES[dimension]
    m = _QUANTITY_RE.match(text)
    if m is None:
        raise ParameterError(f"cannot parse {dimension} quantity from {text!r}")
    value = float(m.group(1))
    unit = m.group(2)
    if not unit:
        if default_unit is None:
            raise ParameterError(
                f"{dimension} value {text!r} is missing a unit suffix "
                f"(one of: {', '.join(sorted(table))})"
            )
        unit = default_unit
    if unit not in table:
        raise ParameterError(
            f"unknown {dimension} unit {unit!r} (one of: {', '.join(sorted(table))})"
        )
    result = value * table[unit]
    if not math.isfinite(result):
        raise ParameterError(f"{dimension} value {text!r} is not finite after conversion")
    return result
