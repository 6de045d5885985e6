"""Build hook for the optional compiled kernel.

The package is fully functional without the extension; the kernel package
falls back to the pure-Python twin at import time if `_ckernel` is missing.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/schubreg/kernel/_ckernel.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False},
    )
except Exception as exc:  # pragma: no cover - depends on toolchain
    print("schubreg: compiled kernel skipped (%s)" % exc, file=sys.stderr)

setup(ext_modules=ext_modules)
