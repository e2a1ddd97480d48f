"""Benchmark the compiled stencil kernel against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--sizes 9x11,64x64,256x256] [--steps 2000]

Times the hot per-step path (stencil update + boundary re-application) for
both backends on the same inputs, checks they agree bit for bit, and prints
the speedup.  The compiled kernel mostly pays off on small grids, where a
simulation is dominated by per-step call overhead rather than array math.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from leachsim._kernels import SCHEME_UPWIND, SIDES_NEUMANN, BOTTOM_ZERO_GRADIENT, _ref

try:
    from leachsim._kernels import _native
except ImportError:
    _native = None


def run_steps(impl, cur, steps):
    out = np.empty_like(cur)
    start = time.perf_counter()
    for _ in range(steps):
        impl.advance(cur, out, 0.2, 0.2, 0.01, 0.01, SCHEME_UPWIND)
        impl.apply_bcs(out, SIDES_NEUMANN, BOTTOM_ZERO_GRADIENT, 675.0, 0.0)
        cur, out = out, cur
    return time.perf_counter() - start, cur


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="9x11,64x64,256x256",
                        help="comma list of nx x nz grids")
    parser.add_argument("--steps", type=int, default=2000)
    args = parser.parse_args()

    if _native is None:
        print("compiled kernel not built (run `python setup.py build_ext --inplace`);")
        print("benchmarking the numpy fallback only\n")

    print(f"{'grid':>10} {'steps':>7} {'numpy':>12} {'native':>12} {'speedup':>9}   agreement")
    for token in args.sizes.split(","):
        nx, nz = (int(part) for part in token.lower().split("x"))
        rng = np.random.default_rng(1)
        start_field = np.ascontiguousarray(rng.uniform(0.0, 675.0, (nx, nz)))

        t_numpy, end_numpy = run_steps(_ref, start_field.copy(), args.steps)
        if _native is None:
            print(f"{token:>10} {args.steps:>7} {t_numpy:>11.4f}s {'-':>12} {'-':>9}")
            continue
        t_native, end_native = run_steps(_native, start_field.copy(), args.steps)
        agree = "bitwise" if np.array_equal(end_numpy, end_native) else "DIFFERS"
        print(
            f"{token:>10} {args.steps:>7} {t_numpy:>11.4f}s {t_native:>11.4f}s "
            f"{t_numpy / t_native:>8.1f}x   {agree}"
        )


if __name__ == "__main__":
    main()
