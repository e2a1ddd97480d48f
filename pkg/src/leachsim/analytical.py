"""Closed-form solution of retarded advection-diffusion from a constant source.

``ogata_profile_1d`` evaluates the classical semi-infinite-column solution
(Ogata's erfc form) for a step source held at the surface:

    C(z, t) = background + (C0 - background)/2 * [ erfc(A-) + e^(v z / D) erfc(A+) ]
    A-+ = (R z -+ v t) / (2 sqrt(R D t))

This is the default verification oracle for the finite-difference engine.

``ogata_superposition_2d`` is the literal two-axis sum of that bracket (one in
z, one in x).  It is exposed for completeness but quarantined: the plain sum
double-counts the source, reaching 2*C0 at the origin for large t, so it
violates the surface condition C(z=0) = C0 and is never used as the oracle.

The e^(v z / D) * erfc(A+) product pairs a potentially huge exponential with a
tiny erfc; it is evaluated as exp(v z / D + log_erfc(A+)) so deep-z queries
cannot overflow.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalLimitWarning, ParameterError
from .params import TransportParams, _require_finite
from .special import erfc, log_erfc

_EXP_OVERFLOW = 709.0  # exp() overflows just above this


def _resolve_r(params: TransportParams, r: float | None) -> float:
    if r is None:
        r = params.retardation
    r = _require_finite("r", r)
    if r < 1.0:
        raise ParameterError(f"r must be >= 1, got {r}")
    return r


def _bracket(s: float, t: float, d: float, v: float, r: float) -> float:
    """One erfc bracket along a single axis; returns a value in [0, 2]."""
    denom = 2.0 * math.sqrt(r * d * t)
    minus = (r * s - v * t) / denom
    plus = (r * s + v * t) / denom
    first = erfc(minus)
    exponent = v * s / d + log_erfc(plus)
    if exponent > _EXP_OVERFLOW:
        warnings.warn(
            "guarded erfc product still overflows; returning the background value",
            NumericalLimitWarning,
            stacklevel=3,
        )
        return math.nan
    return first + math.exp(exponent)


def ogata_profile_1d(
    z: float, t: float, params: TransportParams, r: float | None = None
) -> float:
    """Concentration (mg/L) at depth z (cm) and time t (days).

    ``r`` defaults to the retardation factor of ``params.species``.  t = 0
    short-circuits to the initial condition (the formula is singular there).
    The result is clamped to [background, c0], the physical range.
    """
    z = _require_finite("z", z)
    t = _require_finite("t", t)
    if z < 0.0:
        raise ParameterError(f"z must be >= 0, got {z}")
    if t < 0.0:
        raise ParameterError(f"t must be >= 0, got {t}")
    r = _resolve_r(params, r)
    if t == 0.0:
        return params.background
    b = _bracket(z, t, params.d, params.v, r)
    if math.isnan(b):
        return params.background
    value = params.background + (params.c0 - params.background) * 0.5 * b
    return min(max(value, params.background), params.c0)


def ogata_profile_samples(
    zs, t: float, params: TransportParams, r: float | None = None
) -> np.ndarray:
    """Vector convenience: the 1-D profile sampled at each depth in ``zs``."""
    return np.array([ogata_profile_1d(float(z), t, params, r) for z in np.asarray(zs)])


def ogata_superposition_2d(
    x: float, z: float, t: float, params: TransportParams, r: float | None = None
) -> float:
    """Literal two-axis superposition of the constant-source bracket.

    Quarantined variant: the sum reaches 2*c0 at the origin for large t
    (each axis contributes a full bracket), so it is not a valid oracle for
    the source boundary.  Kept so the superposed form can be inspected and
    compared; no clamping is applied.
    """
    x = _require_finite("x", x)
    if x < 0.0:
        raise ParameterError(f"x must be >= 0, got {x}")
    z = _require_finite("z", z)
    t = _require_finite("t", t)
    if z < 0.0:
        raise ParameterError(f"z must be >= 0, got {z}")
    if t < 0.0:
        raise ParameterError(f"t must be >= 0, got {t}")
    r = _resolve_r(params, r)
    if t == 0.0:
        return params.background
    half_c0 = 0.5 * params.c0
    bz = _bracket(z, t, params.d, params.v, r)
    bx = _bracket(x, t, params.d, params.v, r)
    if math.isnan(bz) or math.isnan(bx):
        return params.background
    return half_c0 * bz + half_c0 * bx


@dataclass(frozen=True)
class AnalyticalQuery:
    """A single oracle evaluation point (z and optionally x, both cm; t days)."""

    z: float
    t: float
    params: TransportParams
    x: float = 0.0  # only the two-axis superposition looks at x
    r: float | None = None

    def __post_init__(self) -> None:
        _require_finite("z", self.z)
        _require_finite("t", self.t)
        _require_finite("x", self.x)
        if self.z < 0.0 or self.x < 0.0:
            raise ParameterError("z and x must be >= 0")
        if self.t < 0.0:
            raise ParameterError(f"t must be >= 0, got {self.t}")
        _resolve_r(self.params, self.r)

    def profile_1d(self) -> float:
        return ogata_profile_1d(self.z, self.t, self.params, self.r)

    def superposition_2d(self) -> float:
        return ogata_superposition_2d(self.x, self.z, self.t, self.params, self.r)
