import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "wignerlab._eigen_cy",
                ["src/wignerlab/_eigen_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-python fallback is selected at import time when the
    # compiled kernels are unavailable
    extensions = []

setup(ext_modules=extensions)
