"""Build script for the optional compiled kernel core.

The package is fully functional without the extension: pcpkit.backend falls
back to the numpy kernels when pcpkit._core_c is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pcpkit._core_c",
                ["src/pcpkit/_core_c.pyx"],
                extra_compile_args=["-O3"],
                language="c",
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
