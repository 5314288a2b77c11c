"""Build the optional compiled sieve kernel.

The package is fully functional without it: submult.core falls back to
the pure-Python kernel in submult._spfsieve_py when the extension is
absent (see submult/core.py).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "submult._spfsieve",
                ["src/submult/_spfsieve.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
