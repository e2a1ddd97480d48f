"""Quantified verification: error norms, refinement studies, sensitivity sweep.

The underlying comparisons are always a z-profile from the finite-difference
engine against the closed-form solution sampled at the same nodes.  Studies
wrap that into the three standard questions: does refining the timestep stop
changing the answer (grid independence), how does the error scale with mesh
spacing (observed order), and how sensitive is the profile to the diffusion
coefficient.

Mind the domain when reading oracle errors: the closed form lives on a
semi-infinite column, so on a shallow grid the bottom boundary contaminates
the comparison once the front arrives.  Studies report those errors anyway;
quantitative oracle assertions belong on a deepened grid (depth of at least
five diffusion lengths sqrt(2*D*t/R)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .analytical import ogata_profile_samples
from .engine import ConcentrationField, run, stability_diagnostics
from .errors import ComparisonError, ParameterError
from .params import GridSpec, SimulationConfig, _require_finite
from .units import convert_diffusion_m2a_to_cm2day

# Reported in place of a slope when an exact zero error makes the log-ratio
# undefined; deliberately finite so tables stay printable.
ORDER_SATURATED = 99.0


@dataclass(frozen=True)
class ErrorReport:
    """Error norms over the compared nodes (all in mg/L except rel_linf)."""

    l2: float  # root-mean-square error
    linf: float  # max absolute error
    rel_linf: float  # linf / c0
    node_count: int
    compared_axis: str

    def __post_init__(self) -> None:
        for name, val in (("l2", self.l2), ("linf", self.linf), ("rel_linf", self.rel_linf)):
            _require_finite(name, val)
            if val < 0.0:
                raise ParameterError(f"{name} must be >= 0, got {val}")
        if self.l2 > self.linf:
            raise ParameterError(f"l2 ({self.l2}) exceeds linf ({self.linf})")


def error_norms(numerical, analytical, c0: float, compared_axis: str = "z-profile") -> ErrorReport:
    """RMS and max-abs error between two same-shape samplings.

    Accepts ConcentrationFields or plain arrays.  ``c0`` scales rel_linf and
    must be positive.
    """
    a = numerical.values if isinstance(numerical, ConcentrationField) else np.asarray(numerical, dtype=float)
    b = analytical.values if isinstance(analytical, ConcentrationField) else np.asarray(analytical, dtype=float)
    if a.shape != b.shape:
        raise ComparisonError(f"shape mismatch: {a.shape} vs {b.shape}")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise ComparisonError("cannot compare non-finite samples")
    c0 = _require_finite("c0", c0)
    if c0 <= 0.0:
        raise ParameterError(f"c0 must be > 0 to scale rel_linf, got {c0}")
    diff = a - b
    linf = float(np.max(np.abs(diff))) if diff.size else 0.0
    l2 = float(math.sqrt(np.mean(diff * diff))) if diff.size else 0.0
    # RMS <= max in exact arithmetic; guard the final ulp of sqrt rounding.
    l2 = min(l2, linf)
    return ErrorReport(
        l2=l2, linf=linf, rel_linf=linf / c0, node_count=int(diff.size), compared_axis=compared_axis
    )


def observed_order(errors, controls) -> tuple[float, ...]:
    """Pairwise log-ratio slopes: slope_k = log(e_k/e_k+1) / log(c_k/c_k+1).

    ``controls`` (spacings or timesteps) must be strictly decreasing and
    positive.  An exact zero error yields the ORDER_SATURATED sentinel
    instead of an infinity.
    """
    errors = [float(e) for e in errors]
    controls = [float(c) for c in controls]
    if len(errors) != len(controls):
        raise ParameterError(
            f"errors and controls must have equal length, got {len(errors)} and {len(controls)}"
        )
    if len(controls) < 2:
        raise ParameterError("need at least two levels to compute an order")
    for c in controls:
        _require_finite("control", c)
        if c <= 0.0:
            raise ParameterError(f"controls must be positive, got {c}")
    if any(a <= b for a, b in zip(controls, controls[1:])):
        raise ParameterError(f"controls must be strictly decreasing, got {controls}")
    for e in errors:
        _require_finite("error", e)
        if e < 0.0:
            raise ParameterError(f"errors must be >= 0, got {e}")
    slopes = []
    for (e0, e1), (c0, c1) in zip(zip(errors, errors[1:]), zip(controls, controls[1:])):
        if e0 == 0.0 or e1 == 0.0:
            slopes.append(ORDER_SATURATED)
        else:
            slopes.append(math.log(e0 / e1) / math.log(c0 / c1))
    return tuple(slopes)


def independent_control(control_values, successive_rel_linf, tol: float):
    """First control value whose refinement step changes the profile by < tol."""
    if tol <= 0.0 or not math.isfinite(tol):
        raise ParameterError(f"tol must be a positive number, got {tol}")
    for control, change in zip(control_values, successive_rel_linf):
        if change < tol:
            return control
    return None


@dataclass(frozen=True, eq=False)
class RefinementStudy:
    """Per-level oracle errors plus level-to-level changes for one control knob."""

    control_values: tuple[float, ...]  # descending dt (days) or h (cm)
    reports: tuple[ErrorReport, ...]  # vs the closed-form oracle, per level
    observed_orders: tuple[float, ...]  # pairwise slopes of the oracle linf errors
    successive_rel_linf: tuple[float, ...]  # |profile_k - profile_k+1|_inf / c0
    independent_at: float | None
    stable_flags: tuple[bool, ...]
    profiles: tuple[np.ndarray, ...]
    z_nodes: tuple[np.ndarray, ...]
    control_label: str

    def __post_init__(self) -> None:
        m = len(self.control_values)
        if len(self.reports) != m or len(self.stable_flags) != m or len(self.profiles) != m:
            raise ParameterError("per-level sequences must match control_values in length")
        if len(self.observed_orders) != max(m - 1, 0):
            raise ParameterError("observed_orders must have one entry per adjacent pair")
        if len(self.successive_rel_linf) != max(m - 1, 0):
            raise ParameterError("successive_rel_linf must have one entry per adjacent pair")


def oracle_error_report(field: ConcentrationField, params, r=None, column: int | None = None) -> ErrorReport:
    """Compare one field's z-profile against the closed form at the same nodes."""
    if column is None:
        column = field.grid.nx // 2
    profile = field.profile(column)
    exact = ogata_profile_samples(field.grid.z_nodes(), field.t, params, r)
    return error_norms(
        profile, exact, params.c0, compared_axis=f"z-profile at x-node {column}, t = {field.t:g} day"
    )


def _final_profile(config: SimulationConfig) -> tuple[np.ndarray, np.ndarray]:
    result = run(replace(config, snapshot_times=(config.t_end,)))
    field = result.final
    return field.grid.z_nodes(), field.profile()


def timestep_study(base: SimulationConfig, dt_list, tol: float = 0.02) -> RefinementStudy:
    """Re-run ``base`` at each timestep in descending ``dt_list``.

    Reports the oracle error per level and the successive-profile change
    between neighbors; ``independent_at`` is the first (coarsest) dt whose
    refinement no longer changes the profile by ``tol`` of the source value.
    Unstable levels run anyway under policy "warn"/"silent" and are flagged.
    """
    dts = [float(dt) for dt in dt_list]
    if not dts:
        raise ParameterError("dt_list must not be empty")
    if any(a <= b for a, b in zip(dts, dts[1:])):
        raise ParameterError(f"dt_list must be strictly decreasing, got {dts}")
    for dt in dts:
        _require_finite("dt", dt)
        if not 0.0 < dt <= base.t_end:
            raise ParameterError(f"every dt must be in (0, t_end={base.t_end}], got {dt}")
    if tol <= 0.0 or not math.isfinite(tol):
        raise ParameterError(f"tol must be a positive number, got {tol}")

    profiles = []
    reports = []
    stable = []
    z = base.grid.z_nodes()
    for dt in dts:
        cfg = replace(base, dt=dt, snapshot_times=(base.t_end,))
        stable.append(stability_diagnostics(cfg).stable)
        result = run(cfg)
        profiles.append(result.final.profile())
        reports.append(oracle_error_report(result.final, base.params))

    successive = tuple(
        float(np.max(np.abs(a - b))) / base.params.c0 for a, b in zip(profiles, profiles[1:])
    )
    orders = observed_order([r.linf for r in reports], dts) if len(dts) >= 2 else ()
    return RefinementStudy(
        control_values=tuple(dts),
        reports=tuple(reports),
        observed_orders=tuple(orders),
        successive_rel_linf=successive,
        independent_at=independent_control(dts, successive, tol),
        stable_flags=tuple(stable),
        profiles=tuple(profiles),
        z_nodes=tuple(z for _ in dts),
        control_label="dt_day",
    )


def _grid_at_spacing(base_grid: GridSpec, h: float) -> GridSpec:
    width, depth = base_grid.width, base_grid.depth
    counts = []
    for extent, name in ((width, "width"), (depth, "depth")):
        ratio = extent / h
        if abs(ratio - round(ratio)) > 1e-9:
            raise ParameterError(
                f"grid {name} {extent:g} cm is not divisible by spacing {h:g} cm"
            )
        counts.append(int(round(ratio)) + 1)
    nx, nz = counts
    if nx < 3 or nz < 3:
        raise ParameterError(f"spacing {h:g} cm is too coarse for the {width:g}x{depth:g} cm domain")
    return GridSpec(nx=nx, nz=nz, dx=h, dz=h)


def mesh_study(
    base: SimulationConfig, h_list, tol: float = 0.02, dt_scaling: str = "fixed"
) -> RefinementStudy:
    """Re-run ``base`` with the node spacing (both axes) set to each h.

    The physical extent is held fixed, so node counts change.  With
    ``dt_scaling="fixed"`` every level keeps base.dt (coarse-dt artifacts and
    stability flags are part of what this study shows); ``"quadratic"``
    scales dt with (h/h0)^2, which holds the diffusion ratio constant and is
    the right mode for measuring spatial order.  Successive-profile changes
    are measured on the coarser grid's nodes (finer profile interpolated).
    """
    hs = [float(h) for h in h_list]
    if not hs:
        raise ParameterError("h_list must not be empty")
    if any(a <= b for a, b in zip(hs, hs[1:])):
        raise ParameterError(f"h_list must be strictly decreasing, got {hs}")
    for h in hs:
        _require_finite("h", h)
        if h <= 0.0:
            raise ParameterError(f"spacings must be positive, got {h}")
    if dt_scaling not in ("fixed", "quadratic"):
        raise ParameterError(f"dt_scaling must be 'fixed' or 'quadratic', got {dt_scaling!r}")

    profiles = []
    reports = []
    stable = []
    z_arrays = []
    for h in hs:
        grid = _grid_at_spacing(base.grid, h)
        dt = base.dt if dt_scaling == "fixed" else base.dt * (h / hs[0]) ** 2
        cfg = replace(base, grid=grid, dt=dt, snapshot_times=(base.t_end,))
        stable.append(stability_diagnostics(cfg).stable)
        result = run(cfg)
        profiles.append(result.final.profile())
        z_arrays.append(grid.z_nodes())
        reports.append(oracle_error_report(result.final, base.params))

    successive = tuple(
        float(np.max(np.abs(pc - np.interp(zc, zf, pf)))) / base.params.c0
        for (zc, pc), (zf, pf) in zip(zip(z_arrays, profiles), zip(z_arrays[1:], profiles[1:]))
    )
    orders = observed_order([r.linf for r in reports], hs) if len(hs) >= 2 else ()
    return RefinementStudy(
        control_values=tuple(hs),
        reports=tuple(reports),
        observed_orders=tuple(orders),
        successive_rel_linf=successive,
        independent_at=independent_control(hs, successive, tol),
        stable_flags=tuple(stable),
        profiles=tuple(profiles),
        z_nodes=tuple(z_arrays),
        control_label="h_cm",
    )


@dataclass(frozen=True, eq=False)
class SensitivityStudy:
    """Final profiles per diffusion coefficient and their largest disagreement."""

    profiles: dict[float, np.ndarray]  # keyed by D in m2/a
    z_nodes: np.ndarray
    monotone: dict[float, bool]  # profile non-increasing with depth?
    pairwise_deviation: dict[tuple[float, float], float]  # max |dC| per pair, mg/L
    max_pairwise_deviation: float  # mg/L; 0 when fewer than two distinct values


def sensitivity_study(base: SimulationConfig, d_values_m2a=(0.018, 0.02)) -> SensitivityStudy:
    """Re-run ``base`` per diffusion coefficient (m2/a) and compare final profiles.

    Profiles are keyed by coefficient, so duplicate and permuted inputs give
    the same study.  Monotonicity (non-increasing with depth, within a 1e-9
    relative slack) restates "the trend is preserved" in a testable form.
    """
    ds = [float(d) for d in d_values_m2a]
    if not ds:
        raise ParameterError("d_values_m2a must not be empty")
    for d in ds:
        _require_finite("d", d)
        if d <= 0.0:
            raise ParameterError(f"diffusion coefficients must be positive, got {d}")

    profiles: dict[float, np.ndarray] = {}
    monotone: dict[float, bool] = {}
    slack = 1e-9 * base.params.c0
    for d in ds:
        if d in profiles:
            continue
        params = replace(base.params, d=convert_diffusion_m2a_to_cm2day(d))
        cfg = replace(base, params=params, snapshot_times=(base.t_end,))
        profile = run(cfg).final.profile()
        profiles[d] = profile
        monotone[d] = bool(np.all(np.diff(profile) <= slack))

    keys = sorted(profiles)
    pairwise: dict[tuple[float, float], float] = {}
    for a_idx in range(len(keys)):
        for b_idx in range(a_idx + 1, len(keys)):
            a, b = keys[a_idx], keys[b_idx]
            pairwise[(a, b)] = float(np.max(np.abs(profiles[a] - profiles[b])))
    return SensitivityStudy(
        profiles=profiles,
        z_nodes=base.grid.z_nodes(),
        monotone=monotone,
        pairwise_deviation=pairwise,
        max_pairwise_deviation=max(pairwise.values()) if pairwise else 0.0,
    )
