"""Builds the optional compiled kernel extension.

The package works without it: ecodrive.kernels falls back to the pure-Python
implementations when the extension is missing (see ecodrive/kernels/__init__.py).
"""

from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ecodrive.kernels._core",
                ["src/ecodrive/kernels/_core.pyx"],
                # -ffp-contract=off: the pure-Python fallback must stay
                # bit-identical, so no FMA contraction in the compiled twin
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
