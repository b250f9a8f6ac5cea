"""Build script.

The Monte Carlo trial loop has a compiled (Cython) implementation in
``src/alphavote/_mc_kernel.pyx``.  Building it is optional: when no C
toolchain (or Cython) is available the install proceeds without the
extension and the package falls back to the vectorised numpy kernel at
import time.  Set ALPHAVOTE_PURE=1 to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure-Python install on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "alphavote: compiled kernel unavailable (%s); "
            "installing with the pure-Python backend only" % (exc,)
        )


ext_modules = []
cmdclass = {}
if os.environ.get("ALPHAVOTE_PURE") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "alphavote._mc_kernel",
                    ["src/alphavote/_mc_kernel.pyx"],
                    include_dirs=[numpy.get_include()],
                    # -ffp-contract=off keeps mu + sigma*z as a separate
                    # multiply and add, matching numpy, so both backends
                    # produce bit-identical draws.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass=cmdclass)
