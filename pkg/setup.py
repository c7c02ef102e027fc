import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ndisco.optimal._bb", ["src/ndisco/optimal/_bb.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    sys.stderr.write("Cython unavailable, skipping the compiled search kernel\n")

setup(ext_modules=ext_modules)
