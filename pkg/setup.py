"""Build hook compiling the optional Cython kernel extension.

The package is fully functional without the extension: a pure-Python
fallback is selected at import time.  Set FREETRACE_NO_EXTENSION=1 to skip
compilation entirely (e.g. on a machine without a C compiler).
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FREETRACE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("freetrace._kernels", ["src/freetrace/_kernels.pyx"])],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
