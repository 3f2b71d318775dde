"""Build script: compiles the optional C accelerator for the scalar kernels.

The extension is an accelerator only.  If Cython or a C compiler is missing
the build falls through to the pure-Python core (gfkernel._corepy); the two
implementations expose identical functions and are selected at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: could not build the gfkernel._core accelerator "
            f"({exc!r}); falling back to the pure-Python core.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; building pure-Python only.", file=sys.stderr)
        return []
    from setuptools import Extension

    ext = Extension(
        "gfkernel._core",
        ["src/gfkernel/_core.pyx"],
        # the double-double primitives require exact IEEE rounding: no FMA
        # contraction, no fast-math
        extra_compile_args=["-ffp-contract=off"],
    )
    return cythonize(
        [ext],
        language_level=3,
        compiler_directives={"boundscheck": False, "cdivision": True},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
