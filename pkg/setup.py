"""Builds the optional Cython LBP kernel.

The package works without the extension (udderid.texture falls back to the
numpy implementation), so a missing compiler or Cython only costs speed.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            # -ffp-contract=off: the kernel must agree bitwise with the numpy
            # fallback; fused multiply-adds would break that.
            "src/udderid/_lbp_kernel.pyx",
        ],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.extra_compile_args = ["-O3", "-ffp-contract=off"]
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
