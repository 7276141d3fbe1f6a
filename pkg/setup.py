"""Build script: optional Cython extension for the mesh kernels.

If Cython or a compiler is unavailable the package still installs and the
pure-Python kernels are used.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("REEBSPACE_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            Extension(
                "reebspace._kernels",
                ["src/reebspace/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            ),
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
