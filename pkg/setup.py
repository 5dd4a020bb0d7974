"""Builds the optional compiled weighting-sum kernel.

If Cython or a C compiler is missing the package installs without it and
falls back to the pure-Python kernel at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TAUTRING_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("tautring._weightsum", ["src/tautring/_weightsum.pyx"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except Exception:  # pragma: no cover - build environment dependent
        ext_modules = []

setup(ext_modules=ext_modules)
