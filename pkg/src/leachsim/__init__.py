"""leachsim: explicit finite-difference transport of leachate ions in saturated soil.

The library simulates advection-diffusion with linear-sorption retardation on
a 2-D node lattice under a constant surface source, provides the closed-form
semi-infinite solution as a verification oracle, and packages the standard
verification studies (timestep refinement, mesh refinement, diffusion
sensitivity) plus a CLI around them.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .analytical import (
    AnalyticalQuery,
    ogata_profile_1d,
    ogata_profile_samples,
    ogata_superposition_2d,
)
from .boundaries import BoundaryConditionSet
from .configfile import ConfigDocument, parse_config, parse_config_document, render_config
from .csvio import read_profiles_csv, write_profiles_csv
from .cli import cli_main
from .engine import (
    ConcentrationField,
    NegativeEvents,
    SimulationResult,
    StabilityDiagnostics,
    apply_boundaries,
    closed_box_run,
    init_field,
    run,
    stability_diagnostics,
    stencil_step,
    step,
)
from .errors import (
    BlowUpError,
    ComparisonError,
    ConfigError,
    LeachsimError,
    NumericalLimitWarning,
    ParameterError,
    ScenarioNotFoundError,
    StabilityError,
    StabilityWarning,
)
from .params import (
    GridSpec,
    SimulationConfig,
    Species,
    TransportParams,
    retardation_factor,
)
from .scenarios import load_scenario, scenario_names
from .special import erfc, log_erfc
from .svgplot import render_profile_svg
from .units import convert_diffusion_m2a_to_cm2day, parse_quantity
from .verify import (
    ORDER_SATURATED,
    ErrorReport,
    RefinementStudy,
    SensitivityStudy,
    error_norms,
    independent_control,
    mesh_study,
    observed_order,
    oracle_error_report,
    sensitivity_study,
    timestep_study,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticalQuery",
    "BlowUpError",
    "BoundaryConditionSet",
    "ComparisonError",
    "ConcentrationField",
    "ConfigDocument",
    "ConfigError",
    "ErrorReport",
    "GridSpec",
    "KERNEL_BACKEND",
    "LeachsimError",
    "NegativeEvents",
    "NumericalLimitWarning",
    "ORDER_SATURATED",
    "ParameterError",
    "RefinementStudy",
    "ScenarioNotFoundError",
    "SensitivityStudy",
    "SimulationConfig",
    "SimulationResult",
    "Species",
    "StabilityDiagnostics",
    "StabilityError",
    "StabilityWarning",
    "TransportParams",
    "apply_boundaries",
    "cli_main",
    "closed_box_run",
    "convert_diffusion_m2a_to_cm2day",
    "erfc",
    "error_norms",
    "independent_control",
    "init_field",
    "load_scenario",
    "log_erfc",
    "mesh_study",
    "observed_order",
    "ogata_profile_1d",
    "ogata_profile_samples",
    "ogata_superposition_2d",
    "oracle_error_report",
    "parse_config",
    "parse_config_document",
    "parse_quantity",
    "read_profiles_csv",
    "render_config",
    "render_profile_svg",
    "retardation_factor",
    "run",
    "scenario_names",
    "sensitivity_study",
    "stability_diagnostics",
    "stencil_step",
    "step",
    "timestep_study",
    "write_profiles_csv",
]
