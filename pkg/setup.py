"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (pure-Python kernels
are selected at import time), so a missing Cython or a failing compiler
degrades to a warning instead of aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat extension build failures as non-fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"warning: compiled kernels skipped ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to pure-Python kernels", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fermihat._kernels_cy", ["src/fermihat/_kernels_cy.pyx"])],
        language_level="3",
    )
except ImportError as exc:
    print(f"warning: Cython unavailable ({exc}); installing pure-Python kernels only",
          file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
