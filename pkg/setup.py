"""Build script: compiles the word-packed GF(2) kernel extension.

Set COSETCODE_PURE=1 to skip the extension and rely on the numpy fallback
backend (cosetcode._core_py), selected automatically at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COSETCODE_PURE") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cosetcode._corex",
                ["src/cosetcode/_corex.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
