import warnings

import numpy as np
from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: the package
# falls back to a numpy implementation when the extension is missing.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "conjugacy._kernels",
                ["src/conjugacy/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3, "embedsignature": True},
    )
except ImportError:
    warnings.warn("Cython unavailable; installing with the pure-numpy kernel backend")
    extensions = []

setup(ext_modules=extensions)
