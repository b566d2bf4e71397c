"""Build script.

The compiled kernel is optional: if Cython or a C compiler is missing the
package installs anyway and falls back to the NumPy implementation at import
time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PQSTAB_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "pqstab._kernel_c",
                    ["src/pqstab/_kernel_c.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
