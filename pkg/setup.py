import os

from setuptools import Extension, setup

# The compiled kernel is an optimisation, not a requirement: the package
# falls back to the pure-Python kernel when the extension is absent.
ext_modules = []
if os.environ.get("ACTUAL_CAUSE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "actualcause._kernel",
                    ["src/actualcause/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
