"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so any failure here degrades to a pure-Python install rather
than aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mbqed._kernels",
                sources=["src/mbqed/_kernels.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # missing Cython or no C compiler
    print(f"skipping compiled kernels, using pure-Python fallback: {exc}")

setup(ext_modules=ext_modules)
