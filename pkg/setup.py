"""Build script: compiles the optional C extension for model enumeration.

The package works without the extension (a pure-Python kernel is selected
at import time), so any build failure here just means the slow path.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/sklogic/_stable_core.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
