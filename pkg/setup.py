"""Build script: compiles the census kernel extension when Cython is available.

Set BOUQUET_PURE_PYTHON=1 to skip the extension entirely; the package then
runs on the pure-Python kernel (same results, slower).
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("BOUQUET_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "bouquet._census_core",
                    ["src/bouquet/_census_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
