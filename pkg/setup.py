import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("DENSORBIT_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "densorbit._core",
        ["src/densorbit/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
