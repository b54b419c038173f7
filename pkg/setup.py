import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: the package falls back to the
# numpy implementation in groversat._kernels_py when the extension is absent.
# Set GROVERSAT_NO_EXT=1 to skip building it.
ext_modules = []
if os.environ.get("GROVERSAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "groversat._kernels",
                    ["src/groversat/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
