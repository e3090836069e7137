"""Builds the optional compiled census kernel; the package works without it."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler or no Cython: fall back to pure Python
            print(f"warning: compiled kernel not built ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc})")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension("qborel._ckernel", ["src/qborel/_ckernel.pyx"], language="c++",
                    extra_compile_args=["-O3", "-std=c++17"])
    try:
        return cythonize([ext], language_level=3, quiet=True)
    except Exception as exc:
        print(f"warning: could not cythonize the census kernel ({exc})")
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
