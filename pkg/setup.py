import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LORCERT_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/lorcert/_fastkernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback kernels are used when the extension is absent.
        ext_modules = []

setup(ext_modules=ext_modules)
