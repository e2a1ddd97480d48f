"""Sectioned key-value config documents.

Format example (units are mandatory on every dimensioned value; `#` starts a
comment):

    [grid]
    nx = 9
    nz = 11
    dx = 1 cm
    dz = 1 cm

    [transport]
    preset = landfill-cl      # optional starting point; keys below override
    D = 0.02 m2/a
    v = 0.01 cm/day
    theta = 0.3
    C0 = 675 mg/L
    background = 0 mg/L

    [species]
    name = Cl-
    charge = anion
    R = 1                     # or rho = ... / kd = ... instead of R

    [boundary]
    sides = neumann_zero_flux
    bottom = zero_gradient

    [time]
    dt = 0.01 day
    t_end = 100 day
    snapshots = 1 day, 50 day, 100 day
    scheme = upwind
    stability_policy = warn

    [output]
    csv = profiles.csv
    svg = profiles.svg

Unknown sections and unknown keys are hard errors (typo safety), and every
error message names the section and key it came from.  Without a preset the
required keys are the full grid, D, v, theta, C0, dt and t_end.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .boundaries import BOTTOM_MODES, SIDE_MODES, BoundaryConditionSet
from .errors import ConfigError, LeachsimError, ParameterError
from .params import (
    SCHEMES,
    STABILITY_POLICIES,
    GridSpec,
    SimulationConfig,
    Species,
    TransportParams,
)
from .scenarios import load_scenario, scenario_names
from .units import parse_quantity

_SECTION_KEYS: dict[str, tuple[str, ...]] = {
    "grid": ("nx", "nz", "dx", "dz"),
    "transport": ("preset", "D", "v", "theta", "C0", "background"),
    "species": ("name", "charge", "R", "rho", "kd"),
    "boundary": ("sides", "bottom"),
    "time": ("dt", "t_end", "snapshots", "scheme", "stability_policy"),
    "output": ("csv", "svg"),
}

_SECTION_RE = re.compile(r"^\[([^\]]*)\]$")


@dataclass(frozen=True)
class ConfigDocument:
    """A parsed config plus the output paths named in its [output] section."""

    config: SimulationConfig
    csv_path: str | None = None
    svg_path: str | None = None


def _split_sections(text: str) -> dict[str, dict[str, str]]:
    sections: dict[str, dict[str, str]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _SECTION_RE.match(line)
        if header:
            name = header.group(1).strip()
            if name not in _SECTION_KEYS:
                raise ConfigError(
                    f"unknown section on line {lineno} "
                    f"(one of: {', '.join(sorted(_SECTION_KEYS))})",
                    section=name,
                )
            if name in sections:
                raise ConfigError(f"section repeated on line {lineno}", section=name)
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno} is not a `key = value` pair: {line!r}")
        if current is None:
            raise ConfigError(f"line {lineno} appears before any [section] header")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SECTION_KEYS[current]:
            raise ConfigError(
                f"unknown key (valid here: {', '.join(_SECTION_KEYS[current])})",
                section=current,
                key=key,
            )
        if key in sections[current]:
            raise ConfigError("key given twice", section=current, key=key)
        if not value:
            raise ConfigError("empty value", section=current, key=key)
        sections[current][key] = value
    return sections


def _quantity(sections, section: str, key: str, dimension: str) -> float | None:
    value = sections.get(section, {}).get(key)
    if value is None:
        return None
    try:
        return parse_quantity(value, dimension)
    except ParameterError as exc:
        raise ConfigError(str(exc), section=section, key=key) from exc


def _bare_float(sections, section: str, key: str) -> float | None:
    value = sections.get(section, {}).get(key)
    if value is None:
        return None
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"expected a bare number, got {value!r}", section=section, key=key) from exc


def _bare_int(sections, section: str, key: str) -> int | None:
    value = sections.get(section, {}).get(key)
    if value is None:
        return None
    try:
        return int(value, 10)
    except ValueError as exc:
        raise ConfigError(f"expected an integer, got {value!r}", section=section, key=key) from exc


def _choice(sections, section: str, key: str, valid) -> str | None:
    value = sections.get(section, {}).get(key)
    if value is None:
        return None
    if value not in valid:
        raise ConfigError(f"must be one of {', '.join(valid)}; got {value!r}", section=section, key=key)
    return value


def _require(value, section: str, key: str, hint: str = ""):
    if value is None:
        raise ConfigError(f"required key missing{hint}", section=section, key=key)
    return value


def parse_config_document(text: str) -> ConfigDocument:
    """Parse a full config document, including any [output] paths."""
    sections = _split_sections(text)

    preset_name = sections.get("transport", {}).get("preset")
    base: SimulationConfig | None = None
    if preset_name is not None:
        try:
            base = load_scenario(preset_name)
        except LeachsimError as exc:
            raise ConfigError(str(exc), section="transport", key="preset") from exc

    no_preset = " (no preset named)" if base is None else ""

    # --- grid ---------------------------------------------------------
    nx = _bare_int(sections, "grid", "nx")
    nz = _bare_int(sections, "grid", "nz")
    dx = _quantity(sections, "grid", "dx", "length")
    dz = _quantity(sections, "grid", "dz", "length")
    try:
        if base is None:
            grid = GridSpec(
                nx=_require(nx, "grid", "nx", no_preset),
                nz=_require(nz, "grid", "nz", no_preset),
                dx=_require(dx, "grid", "dx", no_preset),
                dz=_require(dz, "grid", "dz", no_preset),
            )
        else:
            grid = base.grid
            overrides = {k: v for k, v in (("nx", nx), ("nz", nz), ("dx", dx), ("dz", dz)) if v is not None}
            if overrides:
                grid = replace(grid, **overrides)
    except ParameterError as exc:
        raise ConfigError(str(exc), section="grid") from exc

    # --- species ------------------------------------------------------
    species: Species | None = base.params.species if base is not None else None
    if "species" in sections:
        r = _bare_float(sections, "species", "R")
        rho = _quantity(sections, "species", "rho", "bulk_density")
        kd = _quantity(sections, "species", "kd", "distribution")
        try:
            species = Species(
                name=sections["species"].get("name", "solute"),
                charge_label=sections["species"].get("charge", ""),
                r=r,
                rho=rho,
                kd=kd,
            )
        except ParameterError as exc:
            raise ConfigError(str(exc), section="species") from exc
    elif species is None:
        species = Species(r=1.0)  # conservative solute unless told otherwise

    # --- transport ----------------------------------------------------
    d = _quantity(sections, "transport", "D", "diffusion")
    v = _quantity(sections, "transport", "v", "velocity")
    theta = _bare_float(sections, "transport", "theta")
    c0 = _quantity(sections, "transport", "C0", "concentration")
    background = _quantity(sections, "transport", "background", "concentration")
    try:
        if base is None:
            params = TransportParams(
                d=_require(d, "transport", "D", no_preset),
                v=_require(v, "transport", "v", no_preset),
                theta=_require(theta, "transport", "theta", no_preset),
                c0=_require(c0, "transport", "C0", no_preset),
                background=background if background is not None else 0.0,
                species=species,
            )
        else:
            params = base.params
            overrides = {
                k: val
                for k, val in (("d", d), ("v", v), ("theta", theta), ("c0", c0), ("background", background))
                if val is not None
            }
            params = replace(params, species=species, **overrides)
    except ParameterError as exc:
        raise ConfigError(str(exc), section="transport") from exc

    # --- boundary -----------------------------------------------------
    sides = _choice(sections, "boundary", "sides", SIDE_MODES)
    bottom = _choice(sections, "boundary", "bottom", BOTTOM_MODES)
    bc = base.bc if base is not None else BoundaryConditionSet()
    overrides = {k: v for k, v in (("sides", sides), ("bottom", bottom)) if v is not None}
    if overrides:
        bc = replace(bc, **overrides)

    # --- time ---------------------------------------------------------
    dt = _quantity(sections, "time", "dt", "time")
    t_end = _quantity(sections, "time", "t_end", "time")
    scheme = _choice(sections, "time", "scheme", SCHEMES)
    policy = _choice(sections, "time", "stability_policy", STABILITY_POLICIES)
    snapshots_text = sections.get("time", {}).get("snapshots")
    snapshots: tuple[float, ...] | None = None
    if snapshots_text is not None:
        try:
            snapshots = tuple(
                parse_quantity(part.strip(), "time") for part in snapshots_text.split(",")
            )
        except ParameterError as exc:
            raise ConfigError(str(exc), section="time", key="snapshots") from exc

    try:
        if base is None:
            config = SimulationConfig(
                grid=grid,
                params=params,
                bc=bc,
                dt=_require(dt, "time", "dt", no_preset),
                t_end=_require(t_end, "time", "t_end", no_preset),
                snapshot_times=snapshots,
                scheme=scheme or "upwind",
                stability_policy=policy or "warn",
            )
        else:
            new_t_end = t_end if t_end is not None else base.t_end
            if snapshots is None:
                snapshots = base.snapshot_times if t_end is None else (new_t_end,)
            config = SimulationConfig(
                grid=grid,
                params=params,
                bc=bc,
                dt=dt if dt is not None else base.dt,
                t_end=new_t_end,
                snapshot_times=snapshots,
                scheme=scheme or base.scheme,
                stability_policy=policy or base.stability_policy,
            )
    except ParameterError as exc:
        raise ConfigError(str(exc), section="time") from exc

    output = sections.get("output", {})
    return ConfigDocument(
        config=config, csv_path=output.get("csv"), svg_path=output.get("svg")
    )


def parse_config(text: str) -> SimulationConfig:
    """Parse a config document into a fully validated SimulationConfig."""
    return parse_config_document(text).config


def render_config(config: SimulationConfig) -> str:
    """Dump a config as a document that parses back to an equal config.

    Values are written in canonical units with full float precision, so
    parse(render(config)) == config exactly.
    """
    lines = [
        "[grid]",
        f"nx = {config.grid.nx}",
        f"nz = {config.grid.nz}",
        f"dx = {config.grid.dx!r} cm",
        f"dz = {config.grid.dz!r} cm",
        "",
        "[transport]",
        f"D = {config.params.d!r} cm2/day",
        f"v = {config.params.v!r} cm/day",
        f"theta = {config.params.theta!r}",
        f"C0 = {config.params.c0!r} mg/L",
        f"background = {config.params.background!r} mg/L",
        "",
        "[species]",
        f"name = {config.params.species.name}",
    ]
    if config.params.species.charge_label:
        lines.append(f"charge = {config.params.species.charge_label}")
    if config.params.species.r is not None:
        lines.append(f"R = {config.params.species.r!r}")
    else:
        lines.append(f"rho = {config.params.species.rho!r} mg/m3")
        lines.append(f"kd = {config.params.species.kd!r} m3/mg")
    lines += [
        "",
        "[boundary]",
        f"sides = {config.bc.sides}",
        f"bottom = {config.bc.bottom}",
        "",
        "[time]",
        f"dt = {config.dt!r} day",
        f"t_end = {config.t_end!r} day",
        "snapshots = " + ", ".join(f"{t!r} day" for t in config.snapshot_times),
        f"scheme = {config.scheme}",
        f"stability_policy = {config.stability_policy}",
        "",
    ]
    return "\n".join(lines)
