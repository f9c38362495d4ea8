import os

from setuptools import Extension, setup

# The compiled kernel is optional: without it the package falls back to the
# pure-Python mirror in localpow.kernels.pure.  Set LOCALPOW_NO_EXT=1 to skip
# the build on purpose (e.g. to benchmark the fallback).
ext_modules = []
if os.environ.get("LOCALPOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "localpow.kernels._native",
                    ["src/localpow/kernels/_native.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
