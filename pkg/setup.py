"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (pure-Python fallback in
brieskorn._kernels_py); a failed compile should therefore not make the
install fail.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("brieskorn._kernels", ["src/brieskorn/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
