"""Build hook: compiles the series kernel, falling back to pure Python if that fails."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/nilbch/_series.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    # no Cython or no C compiler: the package still works via _series_py
    ext_modules = []

setup(ext_modules=ext_modules)
