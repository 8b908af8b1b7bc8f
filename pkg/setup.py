"""Build script for the optional compiled kernels.

The package works without them: ``stutterblocks.kernels`` falls back to
the pure-Python implementation when the extension is missing.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("STUTTERBLOCKS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("stutterblocks._ckernels", ["src/stutterblocks/_ckernels.pyx"])],
            compiler_directives=dict(
                language_level="3",
                boundscheck=False,
                wraparound=False,
                cdivision=True,
            ),
        )

setup(ext_modules=ext_modules)
