"""Profile CSV output: one row per (snapshot, node), bit-reproducible.

Header and column order are a stable interface:

    t_day,x_cm,z_cm,conc_mg_per_L

Rows are ordered by (t, x, z).  Values are rendered with 10 significant
digits so a parse of the rendered file reproduces every value to 1e-9
relative.
"""

from __future__ import annotations

import io
import os
from typing import TextIO

import numpy as np

from .engine import SimulationResult
from .errors import ComparisonError

CSV_HEADER = "t_day,x_cm,z_cm,conc_mg_per_L"


def _fmt(value: float) -> str:
    return format(float(value), ".10g")


def write_profiles_csv(result: SimulationResult, sink: str | os.PathLike | TextIO) -> int:
    """Write every snapshot of ``result`` to ``sink`` (path or text file object).

    Returns the number of data rows written (snapshots x nx x nz).
    """
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", newline="") as handle:
            return write_profiles_csv(result, handle)
    rows = 0
    sink.write(CSV_HEADER + "\n")
    for snap in result.snapshots:
        grid = snap.grid
        t_text = _fmt(snap.t)
        for i in range(grid.nx):
            x_text = _fmt(i * grid.dx)
            column = snap.values[i, :]
            for j in range(grid.nz):
                sink.write(
                    f"{t_text},{x_text},{_fmt(j * grid.dz)},{_fmt(column[j])}\n"
                )
                rows += 1
    return rows


def read_profiles_csv(source: str | os.PathLike | TextIO):
    """Parse a profiles CSV back into flat (t, x, z, conc) float arrays.

    ``source`` may be a path, an open text file, or (when it contains a
    newline) the CSV text itself.
    """
    if isinstance(source, str) and "\n" in source:  # already-read text
        return read_profiles_csv(io.StringIO(source))
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", newline="") as handle:
            return read_profiles_csv(handle)
    header = source.readline().strip()
    if header != CSV_HEADER:
        raise ComparisonError(f"unexpected CSV header {header!r}, want {CSV_HEADER!r}")
    columns = ([], [], [], [])
    for lineno, line in enumerate(source, 2):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ComparisonError(f"line {lineno}: expected 4 fields, got {len(parts)}")
        for store, text in zip(columns, parts):
            store.append(float(text))
    return tuple(np.array(c, dtype=float) for c in columns)
