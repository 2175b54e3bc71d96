"""Build script: compiles the native enumeration kernel when Cython and a
C++ toolchain are available, and degrades to the pure-Python fallback
otherwise.  Set HMA_SKIP_KERNEL=1 to force a pure-Python install."""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """A build_ext that treats kernel compilation as best-effort."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(
            f"warning: native enumeration kernel not built ({exc}); "
            "falling back to the pure-Python implementation"
        )


def extensions():
    if os.environ.get("HMA_SKIP_KERNEL"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "hma._kernel",
        ["src/hma/_kernel.pyx"],
        language="c++",
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
