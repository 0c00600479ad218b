import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HOCHWERK_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("hochwerk._elim_c", ["src/hochwerk/_elim_c.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
