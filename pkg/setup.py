import os

from setuptools import setup

# The compiled stencil kernel is optional: without Cython (or with
# LEACHSIM_NO_NATIVE set) the package installs anyway and falls back to the
# numpy kernel at import time.
ext_modules = []
if not os.environ.get("LEACHSIM_NO_NATIVE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "leachsim._kernels._native",
                    ["src/leachsim/_kernels/_native.pyx"],
                    # -ffp-contract=off keeps the C arithmetic bit-identical
                    # to the numpy fallback (no fused multiply-add).
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
