"""Build the optional compiled kernel core.

The package works without the extension (pure-Python fallback is selected
at import time); building it makes the hot kernels ~30-100x faster.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "cylwell._fastcore",
        sources=["src/cylwell/_fastcore.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    ),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    ),
)
