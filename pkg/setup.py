"""Build script: the Cython kernels are optional.

If Cython or a C compiler is unavailable the package installs without the
extension and falls back to ``hallforge._pykernels`` at import time.
"""
from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "hallforge._ckernels",
                ["src/hallforge/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"hallforge: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
