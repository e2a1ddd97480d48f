"""Boundary-condition selectors for the explicit stepping engine.

The top row is always a fixed-concentration (Dirichlet) source: the leachate
pond never switches off.  The bottom and side treatments are selectable:

* ``sides="reflect"``       edge column is mirrored from the second interior
                            column, so the stencil at the first interior
                            column sees equal neighbors (symmetric
                            surroundings).  Needs nx >= 4 to stay meaningful:
                            at nx = 3 the mirror source is the opposite edge,
                            which is never time-advanced.
* ``sides="neumann_zero_flux"``  edge column copies its single interior
                            neighbor (first-order zero-flux).
* ``bottom="zero_gradient"``     bottom row copies the last interior row
                            (outflow, no concentration gradient).
* ``bottom="frozen"``       bottom row is pinned at its initial value, i.e.
                            the far-field background.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

TOP_MODE = "dirichlet_source"
BOTTOM_MODES = ("zero_gradient", "frozen")
SIDE_MODES = ("reflect", "neumann_zero_flux")


@dataclass(frozen=True)
class BoundaryConditionSet:
    bottom: str = "zero_gradient"
    sides: str = "reflect"
    top: str = TOP_MODE  # fixed; present so configs are explicit

    def __post_init__(self) -> None:
        if self.top != TOP_MODE:
            raise ParameterError(
                f"top boundary is always {TOP_MODE!r} (the source never switches off), "
                f"got {self.top!r}"
            )
        if self.bottom not in BOTTOM_MODES:
            raise ParameterError(f"bottom must be one of {BOTTOM_MODES}, got {self.bottom!r}")
        if self.sides not in SIDE_MODES:
            raise ParameterError(f"sides must be one of {SIDE_MODES}, got {self.sides!r}")
