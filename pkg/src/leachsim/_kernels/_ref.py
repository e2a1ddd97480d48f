"""Numpy fallback kernel: one explicit update of the transport stencil.

The compiled kernel in ``_native.pyx`` mirrors these functions expression by
expression (and is built with FP contraction off), so both backends produce
bit-identical fields.  Keep any arithmetic change synchronized between the
two files.
"""

from __future__ import annotations

import numpy as np

SCHEME_FORWARD = 0
SCHEME_UPWIND = 1
SIDES_REFLECT = 0
SIDES_NEUMANN = 1
BOTTOM_ZERO_GRADIENT = 0
BOTTOM_FROZEN = 1


def advance(cur, out, rx, rz, cx, cz, scheme):
    """Interior stencil update; edge rows/columns are copied from ``cur``.

    rx, rz are D*dt/(R*dx^2), D*dt/(R*dz^2); cx, cz are v*dt/(R*dx), v*dt/(R*dz).
    Overflow to inf is allowed here (the engine's finite check owns blow-up
    detection), matching the compiled kernel's silent C semantics.
    """
    out[...] = cur
    c = cur[1:-1, 1:-1]
    e = cur[2:, 1:-1]  # i+1
    w = cur[:-2, 1:-1]  # i-1
    s = cur[1:-1, 2:]  # j+1 (deeper)
    n = cur[1:-1, :-2]  # j-1
    with np.errstate(over="ignore", invalid="ignore"):
        if scheme == SCHEME_FORWARD:
            adv = cx * (e - c) + cz * (s - c)
        else:
            adv = cx * (c - w) + cz * (c - n)
        out[1:-1, 1:-1] = c + (rx * (e - 2.0 * c + w) + rz * (s - 2.0 * c + n) - adv)


def apply_bcs(values, sides, bottom, c0, bottom_value):
    """Re-impose boundary rows/columns in place: sides, then bottom, then top."""
    if sides == SIDES_REFLECT:
        values[0, :] = values[2, :]
        values[-1, :] = values[-3, :]
    else:
        values[0, :] = values[1, :]
        values[-1, :] = values[-2, :]
    if bottom == BOTTOM_ZERO_GRADIENT:
        values[:, -1] = values[:, -2]
    else:
        values[:, -1] = bottom_value
    values[:, 0] = c0


def closed_box(cur, out, rx, rz):
    """Pure-diffusion update in flux form with zero flux through every face.

    Every interface flux is computed once and added/subtracted on both sides,
    so the discrete total telescopes exactly; used by conservation checks.
    """
    out[...] = cur
    with np.errstate(over="ignore", invalid="ignore"):
        gx = rx * (cur[1:, :] - cur[:-1, :])
        out[:-1, :] += gx
        out[1:, :] -= gx
        gz = rz * (cur[:, 1:] - cur[:, :-1])
        out[:, :-1] += gz
        out[:, 1:] -= gz
