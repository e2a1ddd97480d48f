import numpy as np
import pytest

from leachsim import (
    BoundaryConditionSet,
    GridSpec,
    SimulationConfig,
    Species,
    TransportParams,
)


@pytest.fixture
def tracer_params():
    """Conservative tracer with easy round numbers."""
    return TransportParams(
        d=1.0, v=0.0, theta=0.3, c0=100.0, background=0.0, species=Species(name="tracer", r=1.0)
    )


@pytest.fixture
def small_grid():
    return GridSpec(nx=5, nz=7, dx=1.0, dz=1.0)


@pytest.fixture
def small_config(tracer_params, small_grid):
    return SimulationConfig(
        grid=small_grid,
        params=tracer_params,
        bc=BoundaryConditionSet(),
        dt=0.05,
        t_end=1.0,
        snapshot_times=(1.0,),
        scheme="upwind",
        stability_policy="warn",
    )


def uniform_field_values(grid: GridSpec, value: float) -> np.ndarray:
    return np.full((grid.nx, grid.nz), value, dtype=float)
