import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PERIPLECTIC_NO_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = [
            Extension(
                "periplectic._kernels",
                ["src/periplectic/_kernels.pyx"],
            )
        ]
        ext_modules = cythonize(
            extensions, compiler_directives={"language_level": "3"}
        )
    except ImportError:
        # No Cython available: the package falls back to the pure-Python
        # kernels at import time, so this is not fatal.
        ext_modules = []

setup(ext_modules=ext_modules)
