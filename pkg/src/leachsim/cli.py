"""Command-line entry points.

Subcommands:
    run         execute a config and write CSV (and optionally SVG) profiles
    compare     run the solver on a deep 1-D grid and print error norms
                against the closed-form solution
    study-dt    timestep-refinement study (grid independence)
    study-mesh  mesh-size study at fixed extent
    study-d     diffusion-coefficient sensitivity study
    scenario    list built-in presets, or dump one as a config document
    check       print stability diagnostics without running

Study subcommands default to the ``forward`` scheme on the preset's 9x11 /
1 cm grid (the historical comparison setup); ``compare`` defaults to the
``upwind`` scheme on a 50 cm deep refined 1-D grid, where the closed form is
a trustworthy oracle.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .analytical import ogata_profile_samples
from .boundaries import BOTTOM_MODES, SIDE_MODES, BoundaryConditionSet
from .configfile import ConfigDocument, parse_config_document, render_config
from .csvio import write_profiles_csv
from .engine import run, stability_diagnostics
from .errors import (
    BlowUpError,
    ConfigError,
    LeachsimError,
    ParameterError,
    ScenarioNotFoundError,
    StabilityError,
)
from .params import SCHEMES, STABILITY_POLICIES, GridSpec, SimulationConfig, Species
from .scenarios import SCENARIO_SUMMARIES, load_scenario, scenario_names
from .svgplot import render_profile_svg
from .units import parse_quantity
from .verify import mesh_study, oracle_error_report, sensitivity_study, timestep_study

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STABILITY = 3
EXIT_BLOWUP = 4
EXIT_IO = 5

_EPILOG = """\
exit codes:
  0  success
  2  configuration error (flags, config file, preset name, units)
  3  stability refusal (policy 'error' and the explicit limit is violated)
  4  numerical blow-up (concentrations left the finite-float range)
  5  I/O failure

Dimensioned flag values accept a unit suffix ("--dt 0.05day", "--d 0.02m2/a");
a bare number uses the flag's documented default unit.  Config files always
require units.
"""


def _qty(text: str, dimension: str, default_unit: str) -> float:
    return parse_quantity(text, dimension, default_unit=default_unit)


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--config", metavar="PATH", help="config document to run")
    group.add_argument("--preset", metavar="NAME", help="built-in scenario preset")


def _add_override_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dt", help="timestep (default unit: day)")
    p.add_argument("--t-end", dest="t_end", help="final time (default unit: day)")
    p.add_argument("--snapshots", help="comma-separated output times (default unit: day)")
    p.add_argument("--d", help="diffusion-dispersion coefficient (default unit: m2/a)")
    p.add_argument("--v", help="Darcy velocity (default unit: cm/day)")
    p.add_argument("--theta", type=float, help="porosity (bare fraction)")
    p.add_argument("--c0", help="source concentration (default unit: mg/L)")
    p.add_argument("--background", help="far-field concentration (default unit: mg/L)")
    p.add_argument("--r", type=float, help="retardation factor (overrides species chemistry)")
    p.add_argument("--nx", type=int, help="node count along x")
    p.add_argument("--nz", type=int, help="node count along z")
    p.add_argument("--dx", help="x spacing (default unit: cm)")
    p.add_argument("--dz", help="z spacing (default unit: cm)")
    p.add_argument("--scheme", choices=SCHEMES, help="advection stencil")
    p.add_argument("--sides", choices=SIDE_MODES, help="side boundary treatment")
    p.add_argument("--bottom", choices=BOTTOM_MODES, help="bottom boundary treatment")
    p.add_argument("--stability", choices=STABILITY_POLICIES, help="what to do when unstable")


def _load_base(args, default_preset: str | None = None) -> tuple[SimulationConfig, ConfigDocument | None]:
    doc: ConfigDocument | None = None
    if getattr(args, "config", None):
        with open(args.config, "r") as handle:
            doc = parse_config_document(handle.read())
        config = doc.config
    elif getattr(args, "preset", None):
        config = load_scenario(args.preset)
    elif default_preset is not None:
        config = load_scenario(default_preset)
    else:
        raise ConfigError("give --preset NAME or --config PATH (see scenario for presets)")
    return _apply_overrides(config, args), doc


def _apply_overrides(config: SimulationConfig, args) -> SimulationConfig:
    def arg(name):
        return getattr(args, name, None)

    grid = config.grid
    grid_overrides = {}
    if arg("nx") is not None:
        grid_overrides["nx"] = args.nx
    if arg("nz") is not None:
        grid_overrides["nz"] = args.nz
    if arg("dx") is not None:
        grid_overrides["dx"] = _qty(args.dx, "length", "cm")
    if arg("dz") is not None:
        grid_overrides["dz"] = _qty(args.dz, "length", "cm")
    if grid_overrides:
        grid = replace(grid, **grid_overrides)

    params = config.params
    if arg("r") is not None:
        species = replace(params.species, r=args.r, rho=None, kd=None)
        params = replace(params, species=species)
    params_overrides = {}
    if arg("d") is not None:
        params_overrides["d"] = _qty(args.d, "diffusion", "m2/a")
    if arg("v") is not None:
        params_overrides["v"] = _qty(args.v, "velocity", "cm/day")
    if arg("theta") is not None:
        params_overrides["theta"] = args.theta
    if arg("c0") is not None:
        params_overrides["c0"] = _qty(args.c0, "concentration", "mg/L")
    if arg("background") is not None:
        params_overrides["background"] = _qty(args.background, "concentration", "mg/L")
    if params_overrides:
        params = replace(params, **params_overrides)

    bc = config.bc
    bc_overrides = {}
    if arg("sides") is not None:
        bc_overrides["sides"] = args.sides
    if arg("bottom") is not None:
        bc_overrides["bottom"] = args.bottom
    if bc_overrides:
        bc = replace(bc, **bc_overrides)

    t_end = config.t_end
    if arg("t_end") is not None:
        t_end = _qty(args.t_end, "time", "day")
    snapshots = config.snapshot_times
    if arg("snapshots") is not None:
        snapshots = tuple(
            _qty(part.strip(), "time", "day") for part in args.snapshots.split(",")
        )
    elif arg("t_end") is not None:
        snapshots = (t_end,)  # preset snapshot times may not fit the new horizon

    return SimulationConfig(
        grid=grid,
        params=params,
        bc=bc,
        dt=_qty(args.dt, "time", "day") if arg("dt") is not None else config.dt,
        t_end=t_end,
        snapshot_times=snapshots,
        scheme=args.scheme if arg("scheme") is not None else config.scheme,
        stability_policy=args.stability if arg("stability") is not None else config.stability_policy,
    )


def _snapshot_series(result):
    series = []
    labels = []
    for snap in result.snapshots:
        series.append((snap.grid.z_nodes(), snap.profile()))
        labels.append(f"t = {snap.t:g} day")
    return series, labels


def _cmd_run(args) -> int:
    config, doc = _load_base(args)
    result = run(config)
    csv_path = args.out or (doc.csv_path if doc else None)
    svg_path = args.svg or (doc.svg_path if doc else None)
    if csv_path:
        rows = write_profiles_csv(result, csv_path)
    else:
        rows = write_profiles_csv(result, sys.stdout)
    if svg_path:
        series, labels = _snapshot_series(result)
        chart = render_profile_svg(
            series, labels, title=f"{config.params.species.name} depth profiles"
        )
        with open(svg_path, "w") as handle:
            handle.write(chart)
    if csv_path:
        diags = result.diagnostics
        print(f"wrote {rows} rows to {csv_path}" + (f" and chart to {svg_path}" if svg_path else ""))
        print(
            f"stable={str(diags.stable).lower()} (r_x+r_z={diags.r_x + diags.r_z:.4g}); "
            f"negative nodes over run: {result.negative_events.count}"
        )
    return EXIT_OK


def _cmd_compare(args) -> int:
    base, _ = _load_base(args, default_preset="landfill-cl")
    depth = _qty(args.depth, "length", "cm")
    dz = _qty(args.dz, "length", "cm") if args.dz is not None else 0.25
    nz = int(round(depth / dz)) + 1
    config = replace(
        base,
        grid=GridSpec(nx=4, nz=nz, dx=dz, dz=dz),
        bc=BoundaryConditionSet(bottom="zero_gradient", sides="reflect"),
        dt=_qty(args.dt, "time", "day") if args.dt is not None else 0.005,
        snapshot_times=(base.t_end,),
        scheme=args.scheme or "upwind",
    )
    result = run(config)
    report = oracle_error_report(result.final, config.params)
    print(f"compared {report.node_count} nodes: {report.compared_axis}")
    print(f"scheme={config.scheme} grid: dz={dz:g} cm x depth={depth:g} cm, dt={config.dt:g} day")
    print(f"l2       = {report.l2:.6g} mg/L")
    print(f"linf     = {report.linf:.6g} mg/L")
    print(f"rel_linf = {report.rel_linf:.6g} ({100 * report.rel_linf:.4g}% of C0)")
    return EXIT_OK


def _cmd_check(args) -> int:
    config, _ = _load_base(args, default_preset=None)
    d = stability_diagnostics(config)
    print(f"r_x = {d.r_x:.6g}   r_z = {d.r_z:.6g}   (r_x + r_z = {d.r_x + d.r_z:.6g}, limit 0.5)")
    print(f"courant_x = {d.courant_x:.6g}   courant_z = {d.courant_z:.6g}   (limit 1)")
    print(f"peclet_x = {d.peclet_x:.6g}   peclet_z = {d.peclet_z:.6g}")
    print(f"stable = {str(d.stable).lower()}")
    return EXIT_OK


def _cmd_scenario(args) -> int:
    if not args.name:
        for name in scenario_names():
            print(f"{name:14s} {SCENARIO_SUMMARIES[name]}")
        print("\nassumptions shipped with the presets (override with flags/config):")
        print("  v = 0.01 cm/day (Darcy velocity is not part of the site data)")
        print("  landfill-k R = 4 (potassium sorption is not quantified in the site data)")
        return EXIT_OK
    print(render_config(load_scenario(args.name)), end="")
    return EXIT_OK


def _study_base(args) -> SimulationConfig:
    base, _ = _load_base(args, default_preset="landfill-cl")
    if args.scheme is None:
        base = replace(base, scheme="forward")
    return base


def _print_refinement_table(study, control_header: str) -> None:
    header = (
        f"{control_header:>12} {'l2_mgL':>12} {'linf_mgL':>12} {'rel_linf':>10} "
        f"{'succ_change':>12} {'order':>8} {'stable':>7}"
    )
    print(header)
    m = len(study.control_values)
    for k in range(m):
        succ = f"{study.successive_rel_linf[k]:.4g}" if k < m - 1 else "-"
        order = f"{study.observed_orders[k]:.3g}" if k < m - 1 else "-"
        rep = study.reports[k]
        print(
            f"{study.control_values[k]:>12.6g} {rep.l2:>12.5g} {rep.linf:>12.5g} "
            f"{rep.rel_linf:>10.4g} {succ:>12} {order:>8} "
            f"{'yes' if study.stable_flags[k] else 'no':>7}"
        )


def _write_study_svg(path, study, base, control_fmt, include_oracle=True) -> None:
    series = [(z, p) for z, p in zip(study.z_nodes, study.profiles)]
    labels = [control_fmt(c) for c in study.control_values]
    if include_oracle:
        z_fine = study.z_nodes[-1]
        series.append((z_fine, ogata_profile_samples(z_fine, base.t_end, base.params)))
        labels.append("closed form")
    with open(path, "w") as handle:
        handle.write(
            render_profile_svg(series, labels, title=f"final profiles at t = {base.t_end:g} day")
        )


def _cmd_study_dt(args) -> int:
    base = _study_base(args)
    dts = [_qty(part.strip(), "time", "day") for part in args.dts.split(",")]
    study = timestep_study(base, dts, tol=args.tol)
    print(f"timestep study on {base.grid.nx}x{base.grid.nz} grid, t_end = {base.t_end:g} day, "
          f"scheme = {base.scheme}")
    _print_refinement_table(study, "dt_day")
    if study.independent_at is None:
        print(f"no grid independence below tol = {args.tol:g} within this dt list")
    else:
        print(f"grid independent from dt = {study.independent_at:g} day (tol = {args.tol:g})")
    if args.svg:
        _write_study_svg(args.svg, study, base, lambda c: f"dt = {c:g} day")
        print(f"wrote chart to {args.svg}")
    return EXIT_OK


def _cmd_study_mesh(args) -> int:
    base = _study_base(args)
    hs = [_qty(part.strip(), "length", "cm") for part in args.hs.split(",")]
    study = mesh_study(base, hs, dt_scaling=args.dt_scaling)
    print(f"mesh study over {base.grid.width:g}x{base.grid.depth:g} cm, t_end = {base.t_end:g} day, "
          f"dt scaling = {args.dt_scaling}, scheme = {base.scheme}")
    _print_refinement_table(study, "h_cm")
    if args.svg:
        _write_study_svg(args.svg, study, base, lambda c: f"h = {c:g} cm")
        print(f"wrote chart to {args.svg}")
    return EXIT_OK


def _cmd_study_d(args) -> int:
    base = _study_base(args)
    ds = [float(part.strip()) for part in args.ds.split(",")]
    study = sensitivity_study(base, ds)
    c0 = base.params.c0
    print(f"diffusion sensitivity at t_end = {base.t_end:g} day, scheme = {base.scheme}")
    for d_value in sorted(study.profiles):
        mono = "yes" if study.monotone[d_value] else "no"
        print(f"  D = {d_value:g} m2/a: monotone non-increasing with depth: {mono}")
    for (a, b), dev in sorted(study.pairwise_deviation.items()):
        print(f"  max |dC| between D={a:g} and D={b:g}: {dev:.6g} mg/L ({100 * dev / c0:.4g}% of C0)")
    print(f"max pairwise deviation: {study.max_pairwise_deviation:.6g} mg/L "
          f"({100 * study.max_pairwise_deviation / c0:.4g}% of C0)")
    if args.svg:
        series = [(study.z_nodes, study.profiles[d_value]) for d_value in sorted(study.profiles)]
        labels = [f"D = {d_value:g} m2/a" for d_value in sorted(study.profiles)]
        with open(args.svg, "w") as handle:
            handle.write(render_profile_svg(series, labels,
                                            title=f"final profiles at t = {base.t_end:g} day"))
        print(f"wrote chart to {args.svg}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leachsim",
        description="Finite-difference simulation of leachate ion transport in saturated soil.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a config and write profile outputs")
    _add_source_flags(p_run)
    _add_override_flags(p_run)
    p_run.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
    p_run.add_argument("--svg", metavar="PATH", help="also write an SVG profile chart")
    p_run.set_defaults(func=_cmd_run)

    p_cmp = sub.add_parser("compare", help="error norms vs the closed form on a deep 1-D grid")
    _add_source_flags(p_cmp)
    _add_override_flags(p_cmp)
    p_cmp.add_argument("--depth", default="50 cm", help="depth of the refined 1-D grid (default 50 cm)")
    p_cmp.set_defaults(func=_cmd_compare)

    p_dt = sub.add_parser("study-dt", help="timestep-refinement (grid independence) study")
    _add_source_flags(p_dt)
    _add_override_flags(p_dt)
    p_dt.add_argument("--dts", default="100,1,0.1,0.01", help="descending timesteps, days")
    p_dt.add_argument("--tol", type=float, default=0.02, help="independence tolerance (rel. to C0)")
    p_dt.add_argument("--svg", metavar="PATH", help="write a profile chart")
    p_dt.set_defaults(func=_cmd_study_dt)

    p_mesh = sub.add_parser("study-mesh", help="mesh-size study at fixed physical extent")
    _add_source_flags(p_mesh)
    _add_override_flags(p_mesh)
    p_mesh.add_argument("--hs", default="2,1,0.5", help="descending spacings, cm")
    p_mesh.add_argument("--dt-scaling", dest="dt_scaling", choices=("fixed", "quadratic"),
                        default="fixed", help="keep dt fixed, or scale it with (h/h0)^2")
    p_mesh.add_argument("--svg", metavar="PATH", help="write a profile chart")
    p_mesh.set_defaults(func=_cmd_study_mesh)

    p_d = sub.add_parser("study-d", help="diffusion-coefficient sensitivity study")
    _add_source_flags(p_d)
    _add_override_flags(p_d)
    p_d.add_argument("--ds", default="0.018,0.02", help="coefficients to compare, m2/a")
    p_d.add_argument("--svg", metavar="PATH", help="write a profile chart")
    p_d.set_defaults(func=_cmd_study_d)

    p_sc = sub.add_parser("scenario", help="list presets, or dump one as a config document")
    p_sc.add_argument("name", nargs="?", help="preset to dump")
    p_sc.set_defaults(func=_cmd_scenario)

    p_chk = sub.add_parser("check", help="print stability diagnostics without running")
    _add_source_flags(p_chk)
    _add_override_flags(p_chk)
    p_chk.set_defaults(func=_cmd_check)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        code = exc.code
        return int(code) if code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, ScenarioNotFoundError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILITY
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LeachsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
