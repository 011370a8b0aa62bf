"""Build script: compiles the optional Cython word kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); set GBS_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GBS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gbs._wordcore",
                    ["src/gbs/_wordcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(package_dir={"": "src"}, ext_modules=ext_modules)
