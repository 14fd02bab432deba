"""Build script for the optional compiled LIF kernel.

The extension is a pure speed-up: if Cython or a C compiler is missing the
package installs anyway and falls back to the numpy kernel at import time.
-ffp-contract=off keeps the compiled kernel bit-identical to the numpy path
(no FMA contraction of decay*u + current).
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "phonocoach._lifkernel",
                ["src/phonocoach/_lifkernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
