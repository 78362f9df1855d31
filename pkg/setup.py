"""Build hook for the optional compiled BFS kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile only costs speed, never correctness.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "graphlim._ballkern",
                ["src/graphlim/_ballkern.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # no Cython at build time: ship pure Python only
    pass

setup(ext_modules=ext_modules)
