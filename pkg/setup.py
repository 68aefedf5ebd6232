"""Build script: compiles the optional term-kernel extension.

The extension is a pure speedup; when Cython or a C compiler is missing the
install proceeds and the package falls back to the Python kernel at import.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            warnings.warn("skipping compiled kernel: %s" % (exc,))

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn("skipping compiled kernel %s: %s" % (ext.name, exc))


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/superpds/_terms_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython not available; installing with the pure-Python kernel")
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
