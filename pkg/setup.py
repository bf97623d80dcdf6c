"""Build hook for the optional compiled flow kernel.

The package is fully functional without the extension (a pure-Python twin
is selected at import time), so any failure here is non-fatal by design:
build with plain setuptools and the extension is simply skipped.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/liftlink/_flowcore.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
