"""CMake-driven build of the _toroton extension for setuptools installs.

Install with `pip install -e . --no-build-isolation` (the compiled module
and its CMake dependencies come from the system toolchain).
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass  # rely on a system-wide pybind11 CMake package

        subprocess.run(cmake_args, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_toroton", "-j"],
            check=True,
        )

        built = sorted(build_dir.glob("_toroton*.so"))
        if not built:
            raise RuntimeError("CMake did not produce the _toroton module")
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built[-1]), str(dest))


setup(
    ext_modules=[CMakeExtension("toroton._toroton")],
    cmdclass={"build_ext": CMakeBuild},
)
