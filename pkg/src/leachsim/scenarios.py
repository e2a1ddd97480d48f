"""Built-in scenario presets for the studied landfill site.

Site values shared by both presets (clayey soil under a municipal landfill):

    source concentration   C0 = 675 mg/L (both ions)
    porosity               theta = 0.30
    diffusion-dispersion   D = 0.02 m2/a  (0.5479... cm2/day)
    background level       trace, mapped to 0 mg/L
    study period           100 days
    grid                   9 x 11 nodes at 1 cm spacing (8 cm x 10 cm)

Two values the site data does not pin down are shipped as explicit,
overridable assumptions rather than silent defaults:

    Darcy velocity         v = 0.01 cm/day  (ASSUMED; override with config/flags)
    potassium retardation  R = 4            (ASSUMED; chloride is conservative, R = 1)
"""

from __future__ import annotations

from .boundaries import BoundaryConditionSet
from .errors import ScenarioNotFoundError
from .params import GridSpec, SimulationConfig, Species, TransportParams
from .units import convert_diffusion_m2a_to_cm2day

SOURCE_CONCENTRATION_MG_L = 675.0
POROSITY = 0.30
DIFFUSION_M2_PER_A = 0.02
BACKGROUND_MG_L = 0.0  # "trace" read as zero
STUDY_PERIOD_DAYS = 100.0
ASSUMED_DARCY_VELOCITY_CM_DAY = 0.01  # not a site measurement
ASSUMED_POTASSIUM_RETARDATION = 4.0  # not a site measurement

_SPECIES = {
    "landfill-cl": Species(name="Cl-", charge_label="anion", r=1.0),
    "landfill-k": Species(
        name="K+", charge_label="cation", r=ASSUMED_POTASSIUM_RETARDATION
    ),
}

SCENARIO_SUMMARIES = {
    "landfill-cl": "chloride ion (conservative, R = 1) under the landfill scenario",
    "landfill-k": "potassium ion (sorbing, assumed R = 4) under the landfill scenario",
}


def scenario_names() -> tuple[str, ...]:
    return tuple(sorted(_SPECIES))


def load_scenario(name: str) -> SimulationConfig:
    """Return the full simulation config for a named preset.

    Raises ScenarioNotFoundError listing the valid names for anything else.
    Use ``dataclasses.replace`` (or config/CLI overrides) to change fields,
    in particular the assumed Darcy velocity.
    """
    if name not in _SPECIES:
        raise ScenarioNotFoundError(
            f"unknown scenario {name!r}; valid presets: {', '.join(scenario_names())}"
        )
    params = TransportParams(
        d=convert_diffusion_m2a_to_cm2day(DIFFUSION_M2_PER_A),
        v=ASSUMED_DARCY_VELOCITY_CM_DAY,
        theta=POROSITY,
        c0=SOURCE_CONCENTRATION_MG_L,
        background=BACKGROUND_MG_L,
        species=_SPECIES[name],
    )
    return SimulationConfig(
        grid=GridSpec(nx=9, nz=11, dx=1.0, dz=1.0),
        params=params,
        bc=BoundaryConditionSet(bottom="zero_gradient", sides="neumann_zero_flux"),
        dt=0.01,
        t_end=STUDY_PERIOD_DAYS,
        snapshot_times=(1.0, 50.0, 100.0),
        scheme="upwind",
        stability_policy="warn",
    )
