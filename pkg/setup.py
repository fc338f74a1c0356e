"""Builds the optional Cython kernels; the package falls back to pure
Python when the extension is absent."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LECYCLE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("lecycle._ckernels", ["src/lecycle/_ckernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
