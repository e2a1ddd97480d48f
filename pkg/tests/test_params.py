import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leachsim import (
    BoundaryConditionSet,
    GridSpec,
    ParameterError,
    ScenarioNotFoundError,
    SimulationConfig,
    Species,
    TransportParams,
    load_scenario,
    retardation_factor,
    scenario_names,
)


class TestRetardationFactor:
    def test_conservative_species_is_exactly_one(self):
        assert retardation_factor(0.3, 0.0, 0.5) == 1.0
        assert retardation_factor(0.3, 2.0, 0.0) == 1.0

    def test_known_values(self):
        assert retardation_factor(0.3, 1.0, 0.3) == pytest.approx(2.0)
        assert retardation_factor(0.5, 3.0, 0.5) == pytest.approx(4.0)

    @pytest.mark.parametrize(
        "theta,rho,kd,field",
        [
            (0.0, 1.0, 1.0, "theta"),
            (1.0, 1.0, 1.0, "theta"),
            (0.3, -1.0, 1.0, "rho"),
            (0.3, 1.0, -1.0, "kd"),
            (math.nan, 1.0, 1.0, "theta"),
            (0.3, math.inf, 1.0, "rho"),
        ],
    )
    def test_errors_name_the_offending_field(self, theta, rho, kd, field):
        with pytest.raises(ParameterError, match=field):
            retardation_factor(theta, rho, kd)

    @given(
        theta=st.floats(min_value=0.05, max_value=0.95),
        rho=st.floats(min_value=0.0, max_value=1e3),
        kd=st.floats(min_value=0.0, max_value=1e3),
        bump=st.floats(min_value=1e-3, max_value=10.0),
    )
    def test_monotonicity(self, theta, rho, kd, bump):
        r = retardation_factor(theta, rho, kd)
        assert retardation_factor(theta, rho + bump, kd) >= r
        assert retardation_factor(theta, rho, kd + bump) >= r
        if theta + bump < 1.0:
            assert retardation_factor(theta + bump, rho, kd) <= r
        assert r >= 1.0


class TestSpecies:
    def test_explicit_r(self):
        sp = Species(name="Cl-", r=1.0)
        assert sp.retardation(0.3) == 1.0

    def test_rho_kd_pair(self):
        sp = Species(name="K+", rho=1.2, kd=1.0)
        assert sp.retardation(0.3) == pytest.approx(5.0)

    def test_both_given_rejected(self):
        with pytest.raises(ParameterError, match="not both"):
            Species(r=2.0, rho=1.0, kd=1.0)

    def test_neither_given_rejected(self):
        with pytest.raises(ParameterError):
            Species(name="x")

    def test_partial_pair_rejected(self):
        with pytest.raises(ParameterError):
            Species(rho=1.0)

    def test_r_below_one_rejected(self):
        with pytest.raises(ParameterError):
            Species(r=0.5)


class TestTransportParams:
    def test_validation_messages_name_fields(self):
        good = dict(d=1.0, v=0.0, theta=0.3, c0=10.0, background=0.0)
        for field, bad in [("d", 0.0), ("v", -1.0), ("theta", 1.5), ("background", -1.0)]:
            with pytest.raises(ParameterError, match=field):
                TransportParams(**{**good, field: bad})
        with pytest.raises(ParameterError, match="c0"):
            TransportParams(d=1.0, v=0.0, theta=0.3, c0=1.0, background=2.0)

    def test_retardation_comes_from_species(self):
        p = TransportParams(d=1.0, v=0.0, theta=0.25, c0=1.0, species=Species(rho=1.0, kd=0.5))
        assert p.retardation == pytest.approx(3.0)


class TestGridSpec:
    def test_extents(self):
        g = GridSpec(nx=9, nz=11, dx=1.0, dz=1.0)
        assert g.width == 8.0 and g.depth == 10.0
        assert g.z_nodes()[-1] == 10.0 and len(g.z_nodes()) == 11

    @pytest.mark.parametrize("kwargs", [
        dict(nx=2, nz=11, dx=1.0, dz=1.0),
        dict(nx=9, nz=1, dx=1.0, dz=1.0),
        dict(nx=9, nz=11, dx=0.0, dz=1.0),
        dict(nx=9, nz=11, dx=1.0, dz=-2.0),
    ])
    def test_invalid_grids_rejected(self, kwargs):
        with pytest.raises(ParameterError):
            GridSpec(**kwargs)


class TestSimulationConfig:
    def test_snapshot_default_is_t_end(self, tracer_params, small_grid):
        cfg = SimulationConfig(grid=small_grid, params=tracer_params, dt=0.1, t_end=2.0)
        assert cfg.snapshot_times == (2.0,)

    def test_snapshots_must_increase(self, tracer_params, small_grid):
        with pytest.raises(ParameterError, match="increasing"):
            SimulationConfig(grid=small_grid, params=tracer_params, dt=0.1, t_end=2.0,
                             snapshot_times=(1.0, 1.0))

    def test_snapshots_must_fit_horizon(self, tracer_params, small_grid):
        with pytest.raises(ParameterError, match="outside"):
            SimulationConfig(grid=small_grid, params=tracer_params, dt=0.1, t_end=2.0,
                             snapshot_times=(3.0,))

    def test_dt_bounds(self, tracer_params, small_grid):
        with pytest.raises(ParameterError):
            SimulationConfig(grid=small_grid, params=tracer_params, dt=0.0, t_end=1.0)
        with pytest.raises(ParameterError):
            SimulationConfig(grid=small_grid, params=tracer_params, dt=2.0, t_end=1.0)

    def test_degenerate_zero_horizon_allowed(self, tracer_params, small_grid):
        cfg = SimulationConfig(grid=small_grid, params=tracer_params, dt=0.1, t_end=0.0)
        assert cfg.snapshot_times == (0.0,)

    def test_bad_scheme_rejected(self, tracer_params, small_grid):
        with pytest.raises(ParameterError, match="scheme"):
            SimulationConfig(grid=small_grid, params=tracer_params, dt=0.1, t_end=1.0,
                             scheme="magic")


class TestScenarios:
    def test_names(self):
        assert scenario_names() == ("landfill-cl", "landfill-k")

    def test_chloride_preset_values(self):
        cfg = load_scenario("landfill-cl")
        assert cfg.params.c0 == 675.0
        assert cfg.params.theta == 0.30
        assert cfg.params.d == pytest.approx(0.02 * 1e4 / 365, rel=1e-15)
        assert cfg.params.background == 0.0
        assert cfg.t_end == 100.0
        assert cfg.params.retardation == 1.0
        assert (cfg.grid.nx, cfg.grid.nz, cfg.grid.dx, cfg.grid.dz) == (9, 11, 1.0, 1.0)

    def test_potassium_preset_is_retarded(self):
        cfg = load_scenario("landfill-k")
        assert cfg.params.retardation > 1.0
        assert cfg.params.c0 == 675.0

    def test_unknown_preset_lists_valid_names(self):
        with pytest.raises(ScenarioNotFoundError, match="landfill-cl"):
            load_scenario("bogus")

    def test_presets_pass_full_validation_and_are_replaceable(self):
        for name in scenario_names():
            cfg = load_scenario(name)
            # a frozen-dataclass round trip re-runs every invariant
            assert replace(cfg) == cfg
            assert isinstance(cfg.bc, BoundaryConditionSet)
