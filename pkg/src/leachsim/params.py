"""Canonical domain types: species chemistry, transport parameters, grid, config.

All values are stored in the canonical unit system (cm, day, mg/L).  Types are
frozen dataclasses validated on construction, so a constructed object is safe
to share between threads and reuse across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .boundaries import BoundaryConditionSet
from .errors import ParameterError

SCHEMES = ("upwind", "forward")
STABILITY_POLICIES = ("error", "warn", "silent")


def _require_finite(name: str, value: float) -> float:
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParameterError(f"{name} must be a finite number, got {value!r}")
    return float(value)


def retardation_factor(theta: float, rho: float, kd: float) -> float:
    """Retardation factor R = 1 + rho*kd/theta for linear sorption.

    theta: porosity (volumetric water fraction, 0 < theta < 1)
    rho:   dry bulk density, mg/m3
    kd:    distribution factor, m3/mg

    Returns exactly 1 for a conservative (non-sorbing) species (rho*kd = 0).
    """
    theta = _require_finite("theta", theta)
    rho = _require_finite("rho", rho)
    kd = _require_finite("kd", kd)
    if not 0.0 < theta < 1.0:
        raise ParameterError(f"theta must be within (0, 1), got {theta}")
    if rho < 0.0:
        raise ParameterError(f"rho must be >= 0, got {rho}")
    if kd < 0.0:
        raise ParameterError(f"kd must be >= 0, got {kd}")
    return 1.0 + rho * kd / theta


@dataclass(frozen=True)
class Species:
    """An ion with its sorption behavior.

    Give either an explicit retardation factor ``r`` or the ``(rho, kd)``
    pair it would be computed from, never both.
    """

    name: str = "solute"
    charge_label: str = ""  # free text, e.g. "cation" / "anion"
    r: float | None = None
    rho: float | None = None  # dry bulk density, mg/m3
    kd: float | None = None  # distribution factor, m3/mg

    def __post_init__(self) -> None:
        explicit = self.r is not None
        pair = self.rho is not None or self.kd is not None
        if explicit and pair:
            raise ParameterError(
                f"species {self.name!r}: give either r or the (rho, kd) pair, not both"
            )
        if not explicit and not pair:
            raise ParameterError(
                f"species {self.name!r}: retardation is required (r, or rho and kd)"
            )
        if explicit:
            r = _require_finite("r", self.r)
            if r < 1.0:
                raise ParameterError(f"r must be >= 1, got {r}")
        else:
            if self.rho is None or self.kd is None:
                raise ParameterError(
                    f"species {self.name!r}: rho and kd must be given together"
                )
            rho = _require_finite("rho", self.rho)
            kd = _require_finite("kd", self.kd)
            if rho < 0.0:
                raise ParameterError(f"rho must be >= 0, got {rho}")
            if kd < 0.0:
                raise ParameterError(f"kd must be >= 0, got {kd}")

    def retardation(self, theta: float) -> float:
        """R for this species in soil of porosity theta (R >= 1 always)."""
        if self.r is not None:
            return self.r
        return retardation_factor(theta, self.rho, self.kd)


@dataclass(frozen=True)
class TransportParams:
    """Per-species physical parameters in canonical units."""

    d: float  # diffusion-dispersion coefficient, cm2/day
    v: float  # Darcy velocity, cm/day; positive points downward (increasing z)
    theta: float  # soil porosity, dimensionless fraction
    c0: float  # source concentration at the surface, mg/L
    background: float = 0.0  # far-field concentration, mg/L
    species: Species = field(default_factory=lambda: Species(r=1.0))

    def __post_init__(self) -> None:
        d = _require_finite("d", self.d)
        v = _require_finite("v", self.v)
        theta = _require_finite("theta", self.theta)
        c0 = _require_finite("c0", self.c0)
        background = _require_finite("background", self.background)
        if d <= 0.0:
            raise ParameterError(f"d must be > 0, got {d}")
        if v < 0.0:
            raise ParameterError(f"v must be >= 0 (downward-positive convention), got {v}")
        if not 0.0 < theta < 1.0:
            raise ParameterError(f"theta must be within (0, 1), got {theta}")
        if background < 0.0:
            raise ParameterError(f"background must be >= 0, got {background}")
        if c0 < background:
            raise ParameterError(f"c0 must be >= background, got c0={c0} background={background}")

    @property
    def retardation(self) -> float:
        return self.species.retardation(self.theta)


@dataclass(frozen=True)
class GridSpec:
    """Uniform node lattice over the soil cross-section.

    Node (i, j) sits at (x, z) = (i*dx, j*dz); j = 0 is the surface and z
    increases downward.  Physical extent is (nx-1)*dx by (nz-1)*dz.
    """

    nx: int  # node count along x
    nz: int  # node count along z (depth)
    dx: float  # spacing, cm
    dz: float  # spacing, cm

    def __post_init__(self) -> None:
        for name, n in (("nx", self.nx), ("nz", self.nz)):
            if not isinstance(n, int) or isinstance(n, bool):
                raise ParameterError(f"{name} must be an integer, got {n!r}")
            if n < 3:
                raise ParameterError(f"{name} must be >= 3 (the stencil needs an interior node), got {n}")
        for name, h in (("dx", self.dx), ("dz", self.dz)):
            h = _require_finite(name, h)
            if h <= 0.0:
                raise ParameterError(f"{name} must be > 0, got {h}")

    @property
    def width(self) -> float:
        return (self.nx - 1) * self.dx

    @property
    def depth(self) -> float:
        return (self.nz - 1) * self.dz

    def x_nodes(self):
        import numpy as np

        return np.arange(self.nx) * self.dx

    def z_nodes(self):
        import numpy as np

        return np.arange(self.nz) * self.dz


@dataclass(frozen=True)
class SimulationConfig:
    """Everything one run needs: grid, physics, boundaries, solver controls.

    ``scheme`` selects the advection stencil: ``"upwind"`` (one-sided against
    the flow; default, satisfies the discrete maximum principle) or
    ``"forward"`` (one-sided forward differences on both axes, downwind for
    v > 0; kept for comparison runs).
    """

    grid: GridSpec
    params: TransportParams
    bc: BoundaryConditionSet = field(default_factory=BoundaryConditionSet)
    dt: float = 0.01  # timestep, days
    t_end: float = 100.0  # final time, days
    snapshot_times: tuple[float, ...] | None = None  # defaults to (t_end,)
    scheme: str = "upwind"
    stability_policy: str = "warn"

    def __post_init__(self) -> None:
        dt = _require_finite("dt", self.dt)
        t_end = _require_finite("t_end", self.t_end)
        if dt <= 0.0:
            raise ParameterError(f"dt must be > 0, got {dt}")
        if t_end < 0.0:
            raise ParameterError(f"t_end must be >= 0, got {t_end}")
        # t_end = 0 is the degenerate "initial condition only" run; dt is
        # unused there, so the dt <= t_end rule applies only to real runs.
        if t_end > 0.0 and dt > t_end:
            raise ParameterError(f"dt must be <= t_end, got dt={dt} t_end={t_end}")
        if self.snapshot_times is None:
            object.__setattr__(self, "snapshot_times", (t_end,))
        else:
            times = tuple(float(t) for t in self.snapshot_times)
            for t in times:
                _require_finite("snapshot time", t)
                if not 0.0 <= t <= t_end:
                    raise ParameterError(
                        f"snapshot time {t} outside [0, t_end={t_end}]"
                    )
            if any(a >= b for a, b in zip(times, times[1:])):
                raise ParameterError(f"snapshot times must be strictly increasing, got {times}")
            if not times:
                times = (t_end,)
            object.__setattr__(self, "snapshot_times", times)
        if self.scheme not in SCHEMES:
            raise ParameterError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.stability_policy not in STABILITY_POLICIES:
            raise ParameterError(
                f"stability_policy must be one of {STABILITY_POLICIES}, got {self.stability_policy!r}"
            )
