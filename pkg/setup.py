"""Builds the optional compiled kernels; the package falls back to pure Python
when Cython or a compiler is unavailable."""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("measurekit._kernels", ["src/measurekit/_kernels.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
