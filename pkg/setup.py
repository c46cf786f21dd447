from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "steklov.kernels._speedups",
        ["src/steklov/kernels/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
]

if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # install still works without a compiler; the package falls back to the
    # pure-Python kernels at import time
    ext_modules = []

setup(ext_modules=ext_modules)
