"""Build script: compiles the optional Cython kernel.

The extension is an accelerator only; if Cython or a C compiler is missing the
install proceeds and the package falls back to the pure-Python kernel.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler: accelerator is optional
            print(f"ipsforge: skipping compiled kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"ipsforge: skipping compiled kernel ({exc})")


ext_modules = []
if os.environ.get("IPSFORGE_PURE_PY") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ipsforge/_gfcore.pyx"], language_level="3"
        )
    except ImportError:
        print("ipsforge: Cython not available, installing pure-Python kernel only")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
