# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stencil kernel.

Mirrors ``_ref.py`` expression by expression; compiled with -ffp-contract=off
so results are bit-identical to the numpy fallback.  Keep both files in sync.
"""

SCHEME_FORWARD = 0
SCHEME_UPWIND = 1
SIDES_REFLECT = 0
SIDES_NEUMANN = 1
BOTTOM_ZERO_GRADIENT = 0
BOTTOM_FROZEN = 1


def advance(const double[:, ::1] cur, double[:, ::1] out,
            double rx, double rz, double cx, double cz, int scheme):
    cdef Py_ssize_t nx = cur.shape[0]
    cdef Py_ssize_t nz = cur.shape[1]
    cdef Py_ssize_t i, j
    cdef double c, e, w, s, n, adv
    for i in range(nx):
        for j in range(nz):
            out[i, j] = cur[i, j]
    for i in range(1, nx - 1):
        for j in range(1, nz - 1):
            c = cur[i, j]
            e = cur[i + 1, j]
            w = cur[i - 1, j]
            s = cur[i, j + 1]
            n = cur[i, j - 1]
            if scheme == SCHEME_FORWARD:
                adv = cx * (e - c) + cz * (s - c)
            else:
                adv = cx * (c - w) + cz * (c - n)
            out[i, j] = c + (rx * (e - 2.0 * c + w) + rz * (s - 2.0 * c + n) - adv)


def apply_bcs(double[:, ::1] values, int sides, int bottom,
              double c0, double bottom_value):
    cdef Py_ssize_t nx = values.shape[0]
    cdef Py_ssize_t nz = values.shape[1]
    cdef Py_ssize_t i, j
    if sides == SIDES_REFLECT:
        for j in range(nz):
            values[0, j] = values[2, j]
        for j in range(nz):
            values[nx - 1, j] = values[nx - 3, j]
    else:
        for j in range(nz):
            values[0, j] = values[1, j]
        for j in range(nz):
            values[nx - 1, j] = values[nx - 2, j]
    if bottom == BOTTOM_ZERO_GRADIENT:
        for i in range(nx):
            values[i, nz - 1] = values[i, nz - 2]
    else:
        for i in range(nx):
            values[i, nz - 1] = bottom_value
    for i in range(nx):
        values[i, 0] = c0


def closed_box(const double[:, ::1] cur, double[:, ::1] out, double rx, double rz):
    # Two passes per axis (gain side, then loss side) to match the numpy
    # fallback's accumulation order bit for bit.
    cdef Py_ssize_t nx = cur.shape[0]
    cdef Py_ssize_t nz = cur.shape[1]
    cdef Py_ssize_t i, j
    for i in range(nx):
        for j in range(nz):
            out[i, j] = cur[i, j]
    for i in range(nx - 1):
        for j in range(nz):
            out[i, j] += rx * (cur[i + 1, j] - cur[i, j])
    for i in range(nx - 1):
        for j in range(nz):
            out[i + 1, j] -= rx * (cur[i + 1, j] - cur[i, j])
    for i in range(nx):
        for j in range(nz - 1):
            out[i, j] += rz * (cur[i, j + 1] - cur[i, j])
    for i in range(nx):
        for j in range(nz - 1):
            out[i, j + 1] -= rz * (cur[i, j + 1] - cur[i, j])
