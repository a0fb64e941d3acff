"""Build the optional compiled group-law kernel.

The package works without it: ``hiddentorsion._kernel`` falls back to the
pure-Python implementation when the extension is missing.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HIDDENTORSION_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "hiddentorsion._ckernel",
                    ["src/hiddentorsion/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
