"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension; `lvcert._kernel`
falls back to the pure-Python twin when the build is skipped or fails.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lvcert/_kernel_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print("cython kernel skipped (%s); using pure-python fallback" % exc)

setup(ext_modules=ext_modules)
