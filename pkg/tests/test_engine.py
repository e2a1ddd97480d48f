import math
from dataclasses import replace

import numpy as np
import pytest

from leachsim import (
    BlowUpError,
    BoundaryConditionSet,
    ConcentrationField,
    GridSpec,
    ParameterError,
    SimulationConfig,
    Species,
    StabilityError,
    StabilityWarning,
    TransportParams,
    closed_box_run,
    init_field,
    load_scenario,
    run,
    stability_diagnostics,
    stencil_step,
    step,
)


class TestConcentrationField:
    def test_rejects_shape_mismatch(self, small_grid):
        with pytest.raises(ParameterError, match="shape"):
            ConcentrationField(grid=small_grid, t=0.0, values=np.zeros((4, 7)))

    def test_rejects_nonfinite_values(self, small_grid):
        values = np.zeros((5, 7))
        values[2, 3] = np.nan
        with pytest.raises(ParameterError, match=r"\(2, 3\)"):
            ConcentrationField(grid=small_grid, t=0.0, values=values)

    def test_values_are_frozen(self, small_grid):
        field = ConcentrationField(grid=small_grid, t=0.0, values=np.zeros((5, 7)))
        with pytest.raises(ValueError):
            field.values[0, 0] = 1.0

    def test_profile_default_is_center_column(self, small_grid):
        values = np.arange(35, dtype=float).reshape(5, 7)
        field = ConcentrationField(grid=small_grid, t=0.0, values=values)
        assert (field.profile() == values[2, :]).all()


class TestInitField:
    def test_source_row_over_background(self, small_grid):
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=675.0, background=0.0)
        field = init_field(small_grid, params)
        assert (field.values[:, 0] == 675.0).all()
        assert (field.values[:, 1:] == 0.0).all()
        assert field.t == 0.0

    def test_degenerate_zero_source(self, small_grid):
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=0.0, background=0.0)
        field = init_field(small_grid, params)
        assert (field.values == 0.0).all()

    def test_nonzero_background(self):
        grid = GridSpec(nx=3, nz=3, dx=1.0, dz=1.0)
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=1.0, background=0.5)
        field = init_field(grid, params)
        assert (field.values[:, 0] == 1.0).all()
        assert (field.values[:, 1:] == 0.5).all()


class TestStabilityDiagnostics:
    def test_site_coefficient_at_one_day_is_unstable(self):
        cfg = replace(load_scenario("landfill-cl"), dt=1.0)
        d = stability_diagnostics(cfg)
        assert d.r_x == pytest.approx(0.5479, abs=1e-4)
        assert d.r_z == pytest.approx(0.5479, abs=1e-4)
        assert not d.stable

    def test_tenth_of_a_day_is_stable(self):
        cfg = replace(load_scenario("landfill-cl"), dt=0.1)
        d = stability_diagnostics(cfg)
        assert d.r_x == pytest.approx(0.05479, abs=1e-5)
        assert d.stable

    def test_zero_velocity_zeroes_advective_ratios(self, small_config):
        d = stability_diagnostics(small_config)
        assert d.courant_x == 0.0 and d.courant_z == 0.0
        assert d.peclet_x == 0.0 and d.peclet_z == 0.0

    def test_courant_limit_enforced(self, small_grid):
        params = TransportParams(d=1e-6, v=30.0, theta=0.3, c0=1.0)
        cfg = SimulationConfig(grid=small_grid, params=params, dt=0.05, t_end=1.0)
        d = stability_diagnostics(cfg)
        assert d.courant_z > 1.0 and not d.stable


class TestStep:
    def test_zero_field_is_fixed_point(self, small_grid):
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=0.0, background=0.0)
        cfg = SimulationConfig(grid=small_grid, params=params, dt=0.05, t_end=1.0)
        field = ConcentrationField(grid=small_grid, t=0.0, values=np.zeros((5, 7)))
        out = step(field, cfg)
        assert (out.values == 0.0).all()
        assert out.t == pytest.approx(0.05)

    def test_uniform_field_is_fixed_point(self, small_grid):
        # constant field, source pinned at the same constant, v = 0
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=7.5, background=7.5)
        cfg = SimulationConfig(grid=small_grid, params=params, dt=0.05, t_end=1.0)
        field = ConcentrationField(grid=small_grid, t=0.0, values=np.full((5, 7), 7.5))
        out = step(field, cfg)
        assert (out.values == 7.5).all()

    def test_input_not_mutated(self, small_config, small_grid):
        field = init_field(small_grid, small_config.params)
        before = field.values.copy()
        step(field, small_config)
        assert (field.values == before).all()

    def test_schemes_differ_when_velocity_is_on(self, small_grid):
        params = TransportParams(d=0.5, v=0.5, theta=0.3, c0=10.0)
        base = SimulationConfig(grid=small_grid, params=params, dt=0.05, t_end=1.0)
        field = init_field(small_grid, params)
        up = step(field, replace(base, scheme="upwind"))
        fw = step(field, replace(base, scheme="forward"))
        assert not np.array_equal(up.values, fw.values)

    def test_stability_policy_error_refuses(self, small_grid):
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=1.0)
        cfg = SimulationConfig(grid=small_grid, params=params, dt=0.6, t_end=6.0,
                               stability_policy="error")
        field = init_field(small_grid, params)
        with pytest.raises(StabilityError):
            step(field, cfg)

    def test_grid_mismatch_rejected(self, small_config):
        other = GridSpec(nx=4, nz=4, dx=1.0, dz=1.0)
        field = init_field(other, small_config.params)
        with pytest.raises(ParameterError, match="grid"):
            step(field, small_config)


class TestStencilStep:
    def test_interior_spike_pure_diffusion(self):
        # spike of 1.0 at the center of a 5x5 grid, r_x = r_z = 0.1:
        # center keeps 1 - 4*0.1, each von Neumann neighbor receives 0.1
        grid = GridSpec(nx=5, nz=5, dx=1.0, dz=1.0)
        params = TransportParams(d=1.0, v=0.0, theta=0.3, c0=0.0, background=0.0)
        cfg = SimulationConfig(grid=grid, params=params, dt=0.1, t_end=1.0)
        values = np.zeros((5, 5))
        values[2, 2] = 1.0
        field = ConcentrationField(grid=grid, t=0.0, values=values)
        out = stencil_step(field, cfg)
        assert out.values[2, 2] == pytest.approx(0.6, abs=1e-15)
        for i, j in [(1, 2), (3, 2), (2, 1), (2, 3)]:
            assert out.values[i, j] == pytest.approx(0.1, abs=1e-15)
        # edges are untouched before boundary re-application
        assert (out.values[0, :] == 0.0).all()
        assert (out.values[:, -1] == 0.0).all()


class TestRun:
    def test_zero_horizon_returns_initial_field(self, small_config, small_grid):
        cfg = replace(small_config, t_end=0.0, snapshot_times=(0.0,))
        result = run(cfg)
        assert len(result.snapshots) == 1
        expected = init_field(small_grid, cfg.params)
        assert np.array_equal(result.snapshots[0].values, expected.values)

    def test_snapshot_times_are_exact_with_fractional_steps(self, small_config):
        # dt = 0.23 does not divide 1.0 or 1.7: fractional landings required
        cfg = replace(small_config, dt=0.23, t_end=1.7, snapshot_times=(1.0, 1.7))
        result = run(cfg)
        assert [s.t for s in result.snapshots] == [1.0, 1.7]

    def test_snapshot_at_zero_captures_initial_condition(self, small_config, small_grid):
        cfg = replace(small_config, snapshot_times=(0.0, 1.0))
        result = run(cfg)
        assert np.array_equal(
            result.snapshots[0].values, init_field(small_grid, cfg.params).values
        )

    def test_bit_identical_reruns(self):
        cfg = load_scenario("landfill-cl")
        r1, r2 = run(cfg), run(cfg)
        assert all(
            np.array_equal(a.values, b.values) for a, b in zip(r1.snapshots, r2.snapshots)
        )
        assert [s.t for s in r1.snapshots] == [s.t for s in r2.snapshots]

    def test_config_echo_is_the_same_object(self, small_config):
        result = run(small_config)
        assert result.config_echo is small_config
        assert result.config_echo == small_config

    def test_top_row_pinned_every_snapshot(self):
        cfg = load_scenario("landfill-cl")
        for snap in run(cfg).snapshots:
            assert (snap.values[:, 0] == 675.0).all()

    def test_monotone_profile_for_stable_preset(self):
        result = run(load_scenario("landfill-cl"))
        for snap in result.snapshots:
            assert np.all(np.diff(snap.profile()) <= 1e-12)

    def test_negative_events_counted_without_clamping(self, small_grid):
        # strongly downwind forward differencing drives undershoots
        params = TransportParams(d=0.01, v=1.5, theta=0.3, c0=100.0)
        cfg = SimulationConfig(grid=small_grid, params=params, dt=0.5, t_end=40.0,
                               scheme="forward", stability_policy="silent",
                               snapshot_times=(40.0,))
        result = run(cfg)
        assert result.negative_events.count > 0
        assert result.negative_events.first_node is not None
        assert result.negative_events.first_t is not None
        assert (result.final.values < 0).any()

    def test_unstable_run_warns_under_warn_policy(self):
        cfg = replace(load_scenario("landfill-cl"), dt=1.0, t_end=2.0, snapshot_times=(2.0,))
        with pytest.warns(StabilityWarning):
            run(cfg)

    def test_unstable_run_refused_under_error_policy(self):
        cfg = replace(load_scenario("landfill-cl"), dt=1.0, t_end=2.0,
                      snapshot_times=(2.0,), stability_policy="error")
        with pytest.raises(StabilityError):
            run(cfg)

    def test_blow_up_reports_step_and_node(self):
        cfg = load_scenario("landfill-cl")
        cfg = replace(cfg, params=replace(cfg.params, c0=1e307), dt=1.0,
                      snapshot_times=(100.0,), stability_policy="silent")
        with pytest.raises(BlowUpError) as err:
            run(cfg)
        assert err.value.step_index is not None
        assert err.value.node is not None

    def test_linearity_in_source_strength(self, small_config):
        cfg1 = replace(small_config, t_end=2.0, snapshot_times=(0.5, 2.0))
        cfg2 = replace(cfg1, params=replace(cfg1.params, c0=2 * cfg1.params.c0))
        r1, r2 = run(cfg1), run(cfg2)
        for a, b in zip(r1.snapshots, r2.snapshots):
            assert np.allclose(2.0 * a.values, b.values, rtol=1e-12, atol=0.0)

    def test_discrete_maximum_principle_pure_diffusion(self):
        cfg = load_scenario("landfill-cl")
        cfg = replace(cfg, params=replace(cfg.params, v=0.0), dt=0.2, t_end=30.0,
                      snapshot_times=(30.0,))
        assert stability_diagnostics(cfg).stable
        result = run(cfg)
        assert result.final.values.max() <= 675.0
        assert result.final.values.min() >= 0.0

    def test_retarded_species_lags_the_conservative_one(self):
        # same physics, R = 4 vs R = 1: the sorbing front is everywhere behind
        cl = run(load_scenario("landfill-cl")).final
        k = run(load_scenario("landfill-k")).final
        assert np.all(k.values <= cl.values + 1e-9)
        assert k.values[:, 1:].max() < cl.values[:, 1:].max()

    def test_bottom_treatments_diverge_once_the_front_arrives(self):
        base = load_scenario("landfill-cl")
        gradient = run(replace(base, bc=replace(base.bc, bottom="zero_gradient")))
        frozen = run(replace(base, bc=replace(base.bc, bottom="frozen")))
        assert (frozen.final.values[:, -1] == 0.0).all()
        assert gradient.final.values[1, -1] > 100.0
        assert not np.array_equal(gradient.final.values, frozen.final.values)


class TestClosedBox:
    def test_mass_conserved_over_many_steps(self, small_grid):
        rng = np.random.default_rng(3)
        field = ConcentrationField(
            grid=small_grid, t=0.0, values=rng.uniform(0.0, 10.0, (5, 7))
        )
        total0 = math.fsum(field.values.ravel())
        out = closed_box_run(field, 0.2, 0.2, n_steps=1000)
        total1 = math.fsum(out.values.ravel())
        assert abs(total1 - total0) / total0 <= 1e-12

    def test_uniform_is_fixed_point(self, small_grid):
        field = ConcentrationField(grid=small_grid, t=0.0, values=np.full((5, 7), 3.25))
        out = closed_box_run(field, 0.25, 0.2, n_steps=50)
        assert (out.values == 3.25).all()

    def test_diffuses_toward_uniform(self, small_grid):
        values = np.zeros((5, 7))
        values[2, 3] = 35.0
        field = ConcentrationField(grid=small_grid, t=0.0, values=values)
        out = closed_box_run(field, 0.2, 0.2, n_steps=4000)
        assert out.values.std() < 0.01
        assert out.values.mean() == pytest.approx(1.0, rel=1e-9)

    def test_rejects_negative_ratios(self, small_grid):
        field = ConcentrationField(grid=small_grid, t=0.0, values=np.zeros((5, 7)))
        with pytest.raises(ParameterError):
            closed_box_run(field, -0.1, 0.2)
