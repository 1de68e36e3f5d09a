from setuptools import Extension, setup

# The edit-distance kernel is optional: when Cython (or a C compiler) is
# unavailable the package falls back to the pure-Python implementation
# selected at import time in retold.metrics.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("retold._editdist", ["src/retold/_editdist.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
