"""Explicit finite-difference stepping of the 2-D transport equation.

The update is forward Euler on

    R * dC/dt = D * (C_xx + C_zz) - v * (C_x + C_z)

with central second differences for diffusion and a selectable one-sided
difference for advection (``upwind`` against the flow, or ``forward`` which
differences toward increasing index on both axes).  The sorption term is
folded into the retardation factor R, so porosity cancels out of the update.

After every step the boundary rows are re-imposed: sides, then bottom, then
the top source row, so corner nodes always end up at the source value.
Negative concentrations are never clamped; they are counted and reported, as
they are the visible symptom of an unstable or downwind configuration.

A single run is inherently sequential (each step depends on the last), but
runs share no mutable state: fields and configs are frozen, so independent
simulations can execute concurrently without synchronization.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .boundaries import BoundaryConditionSet
from .errors import BlowUpError, ParameterError, StabilityError, StabilityWarning
from .params import GridSpec, SimulationConfig, TransportParams, _require_finite

_SCHEME_TOKEN = {"forward": _kernels.SCHEME_FORWARD, "upwind": _kernels.SCHEME_UPWIND}
_SIDES_TOKEN = {"reflect": _kernels.SIDES_REFLECT, "neumann_zero_flux": _kernels.SIDES_NEUMANN}
_BOTTOM_TOKEN = {"zero_gradient": _kernels.BOTTOM_ZERO_GRADIENT, "frozen": _kernels.BOTTOM_FROZEN}


@dataclass(frozen=True, eq=False)
class ConcentrationField:
    """Node-indexed concentration snapshot at one simulation time.

    ``values[i, j]`` is the concentration (mg/L) at x-node i, z-node j, with
    j = 0 at the surface.  The array is copied in and frozen read-only.
    """

    grid: GridSpec
    t: float  # days
    values: np.ndarray

    def __post_init__(self) -> None:
        _require_finite("t", self.t)
        if self.t < 0.0:
            raise ParameterError(f"t must be >= 0, got {self.t}")
        arr = np.array(self.values, dtype=np.float64, copy=True, order="C")
        expected = (self.grid.nx, self.grid.nz)
        if arr.shape != expected:
            raise ParameterError(
                f"values shape {arr.shape} does not match grid {expected}"
            )
        if not np.isfinite(arr).all():
            bad = tuple(int(k) for k in np.argwhere(~np.isfinite(arr))[0])
            raise ParameterError(f"field contains a non-finite value at node {bad}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def profile(self, i: int | None = None) -> np.ndarray:
        """The z-profile at x-column ``i`` (default: center column)."""
        if i is None:
            i = self.grid.nx // 2
        return np.asarray(self.values[i, :])


@dataclass(frozen=True)
class StabilityDiagnostics:
    """Dimensionless ratios governing the explicit scheme.

    ``stable`` means r_x + r_z <= 1/2 and both Courant numbers <= 1.  The
    ratios use the raw diffusion coefficient (no retardation division), which
    is the conservative bound for sorbing species.
    """

    r_x: float  # D*dt/dx^2
    r_z: float  # D*dt/dz^2
    courant_x: float  # v*dt/dx
    courant_z: float  # v*dt/dz
    peclet_x: float  # v*dx/D
    peclet_z: float  # v*dz/D
    stable: bool


@dataclass(frozen=True)
class NegativeEvents:
    """Count of negative nodes over all steps, and where they first appeared."""

    count: int = 0
    first_t: float | None = None
    first_node: tuple[int, int] | None = None


@dataclass(frozen=True, eq=False)
class SimulationResult:
    snapshots: tuple[ConcentrationField, ...]
    diagnostics: StabilityDiagnostics
    config_echo: SimulationConfig  # the exact config object that produced this
    negative_events: NegativeEvents

    @property
    def final(self) -> ConcentrationField:
        return self.snapshots[-1]


def stability_diagnostics(config: SimulationConfig) -> StabilityDiagnostics:
    d = config.params.d
    v = config.params.v
    dt = config.dt
    g = config.grid
    r_x = d * dt / (g.dx * g.dx)
    r_z = d * dt / (g.dz * g.dz)
    courant_x = v * dt / g.dx
    courant_z = v * dt / g.dz
    peclet_x = v * g.dx / d
    peclet_z = v * g.dz / d
    stable = (r_x + r_z <= 0.5) and (courant_x <= 1.0) and (courant_z <= 1.0)
    return StabilityDiagnostics(r_x, r_z, courant_x, courant_z, peclet_x, peclet_z, stable)


def init_field(grid: GridSpec, params: TransportParams) -> ConcentrationField:
    """Initial condition: background everywhere, source value across the top row."""
    values = np.full((grid.nx, grid.nz), params.background, dtype=np.float64)
    values[:, 0] = params.c0
    return ConcentrationField(grid=grid, t=0.0, values=values)


def apply_boundaries(
    field: ConcentrationField, bc: BoundaryConditionSet, params: TransportParams
) -> ConcentrationField:
    """Return ``field`` with all boundary rows/columns re-imposed.

    Sides first (reflect mirrors the edge from the second interior column;
    zero-flux copies the single neighbor), then the bottom (gradient copy or
    frozen at the initial background), then the top source row.
    """
    values = np.array(field.values, dtype=np.float64, copy=True, order="C")
    _kernels.apply_bcs(
        values,
        _SIDES_TOKEN[bc.sides],
        _BOTTOM_TOKEN[bc.bottom],
        params.c0,
        params.background,
    )
    return ConcentrationField(grid=field.grid, t=field.t, values=values)


def _coefficients(params: TransportParams, grid: GridSpec, dt: float):
    r = params.retardation
    rx = params.d * dt / (r * grid.dx * grid.dx)
    rz = params.d * dt / (r * grid.dz * grid.dz)
    cx = params.v * dt / (r * grid.dx)
    cz = params.v * dt / (r * grid.dz)
    return rx, rz, cx, cz


def _check_policy(config: SimulationConfig) -> StabilityDiagnostics:
    diags = stability_diagnostics(config)
    if not diags.stable:
        if config.stability_policy == "error":
            raise StabilityError(
                f"explicit limit violated (r_x + r_z = {diags.r_x + diags.r_z:.4g} > 0.5 "
                f"or Courant > 1) and stability_policy is 'error'"
            )
        if config.stability_policy == "warn":
            warnings.warn(
                f"timestep dt = {config.dt:g} day violates the explicit stability "
                f"limit (r_x + r_z = {diags.r_x + diags.r_z:.4g}); expect oscillations",
                StabilityWarning,
                stacklevel=3,
            )
    return diags


def stencil_step(field: ConcentrationField, config: SimulationConfig) -> ConcentrationField:
    """One raw stencil update with NO boundary re-application.

    Interior nodes advance by the discretized transport equation; edge nodes
    carry their previous values.  Exposed so the update rule can be checked
    in isolation against an independent evaluation.
    """
    if field.grid != config.grid:
        raise ParameterError("field grid does not match config grid")
    rx, rz, cx, cz = _coefficients(config.params, config.grid, config.dt)
    out = np.empty_like(field.values)
    _kernels.advance(field.values, out, rx, rz, cx, cz, _SCHEME_TOKEN[config.scheme])
    if not np.isfinite(out).all():
        bad = tuple(int(k) for k in np.argwhere(~np.isfinite(out))[0])
        raise BlowUpError(t=field.t + config.dt, node=bad)
    return ConcentrationField(grid=field.grid, t=field.t + config.dt, values=out)


def step(field: ConcentrationField, config: SimulationConfig) -> ConcentrationField:
    """Advance one timestep: stencil update followed by boundary re-application.

    The input field is not mutated.  Raises BlowUpError if the update leaves
    the range of finite floats, and StabilityError when the config is
    unstable under policy ``"error"``.
    """
    if field.grid != config.grid:
        raise ParameterError("field grid does not match config grid")
    _check_policy(config)
    out = _advance_once(field.values, config, config.dt)
    if not np.isfinite(out).all():
        bad = tuple(int(k) for k in np.argwhere(~np.isfinite(out))[0])
        raise BlowUpError(t=field.t + config.dt, node=bad)
    return ConcentrationField(grid=field.grid, t=field.t + config.dt, values=out)


def _advance_once(cur: np.ndarray, config: SimulationConfig, dt_step: float) -> np.ndarray:
    rx, rz, cx, cz = _coefficients(config.params, config.grid, dt_step)
    out = np.empty_like(cur)
    _kernels.advance(cur, out, rx, rz, cx, cz, _SCHEME_TOKEN[config.scheme])
    _kernels.apply_bcs(
        out,
        _SIDES_TOKEN[config.bc.sides],
        _BOTTOM_TOKEN[config.bc.bottom],
        config.params.c0,
        config.params.background,
    )
    return out


def run(config: SimulationConfig) -> SimulationResult:
    """Run from the initial condition to t_end, capturing the requested snapshots.

    Stepping is single-rate forward Euler with a fractional final step per
    segment, so every snapshot (and t_end) is landed on exactly.  Identical
    configs produce bit-identical results.
    """
    diags = _check_policy(config)
    grid, params = config.grid, config.params
    dt = config.dt
    scheme = _SCHEME_TOKEN[config.scheme]
    sides = _SIDES_TOKEN[config.bc.sides]
    bottom = _BOTTOM_TOKEN[config.bc.bottom]

    cur = np.full((grid.nx, grid.nz), params.background, dtype=np.float64)
    cur[:, 0] = params.c0
    out = np.empty_like(cur)

    snapshot_set = set(config.snapshot_times)
    targets = list(config.snapshot_times)
    if not targets or targets[-1] < config.t_end:
        targets.append(config.t_end)

    snapshots: list[ConcentrationField] = []
    neg_count = 0
    neg_first_t: float | None = None
    neg_first_node: tuple[int, int] | None = None
    step_index = 0

    t_prev = 0.0
    for target in targets:
        span = target - t_prev
        if span > 0.0:
            n_full = int(math.floor(span / dt + 1e-12))
            rem = span - n_full * dt
            if rem < dt * 1e-9:
                rem = 0.0
            substeps = [dt] * n_full + ([rem] if rem > 0.0 else [])
            t_now = t_prev
            for dt_step in substeps:
                step_index += 1
                t_now += dt_step
                rx, rz, cx, cz = _coefficients(params, grid, dt_step)
                _kernels.advance(cur, out, rx, rz, cx, cz, scheme)
                _kernels.apply_bcs(out, sides, bottom, params.c0, params.background)
                if not np.isfinite(out).all():
                    bad = tuple(int(k) for k in np.argwhere(~np.isfinite(out))[0])
                    raise BlowUpError(t=t_now, node=bad, step_index=step_index)
                negatives = int(np.count_nonzero(out < 0.0))
                if negatives:
                    neg_count += negatives
                    if neg_first_node is None:
                        idx = np.argwhere(out < 0.0)[0]
                        neg_first_t = t_now
                        neg_first_node = (int(idx[0]), int(idx[1]))
                cur, out = out, cur
        if target in snapshot_set:
            snapshots.append(ConcentrationField(grid=grid, t=target, values=cur))
        t_prev = target

    return SimulationResult(
        snapshots=tuple(snapshots),
        diagnostics=diags,
        config_echo=config,
        negative_events=NegativeEvents(neg_count, neg_first_t, neg_first_node),
    )


def closed_box_run(
    field: ConcentrationField, rx: float, rz: float, n_steps: int = 1
) -> ConcentrationField:
    """Verification aid: pure diffusion in a box with zero flux through every face.

    This is the test-only boundary combination with no source row, used to
    check discrete mass conservation; it is not reachable through
    BoundaryConditionSet (whose top is always the source).  ``rx``/``rz`` are
    the diffusion ratios D*dt/(R*dh^2); time metadata advances by ``n_steps``
    nominal steps of 1.
    """
    if n_steps < 0:
        raise ParameterError(f"n_steps must be >= 0, got {n_steps}")
    for name, val in (("rx", rx), ("rz", rz)):
        _require_finite(name, val)
        if val < 0.0:
            raise ParameterError(f"{name} must be >= 0, got {val}")
    cur = np.array(field.values, dtype=np.float64, copy=True, order="C")
    out = np.empty_like(cur)
    for _ in range(n_steps):
        _kernels.closed_box(cur, out, rx, rz)
        cur, out = out, cur
    return ConcentrationField(grid=field.grid, t=field.t + n_steps, values=cur)
