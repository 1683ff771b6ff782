"""Build script: compiles the optional C kernel when Cython and a C compiler
are available, and silently skips it otherwise (the package falls back to the
pure-Python kernel at import time)."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("species_forge._ckernels", ["src/species_forge/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
