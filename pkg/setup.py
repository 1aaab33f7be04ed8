"""Builds the optional compiled engine backend.

The extension is best-effort: if Cython or a C compiler is missing, the
package installs anyway and falls back to the pure-Python engine.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/owflab/_speedups.pyx",
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
