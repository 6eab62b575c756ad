# Builds the optional compiled kernel core. The package is fully functional
# without it: modframe._kernels falls back to the pure-Python twin at import.
#
# Develop with:  python setup.py build_ext --inplace
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "modframe._kernels._ckernels",
                ["src/modframe/_kernels/_ckernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
