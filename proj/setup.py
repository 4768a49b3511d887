"""CMake-driven build of the pybind11 extension (lineseg._core)."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        import pybind11

        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()

        cfg = "Release"
        args = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
            "-DLINESEG_BUILD_TESTS=OFF",
            "-DLINESEG_BUILD_CLI=OFF",
            "-DLINESEG_BUILD_PYTHON=ON",
        ]
        env = os.environ.copy()
        subprocess.run(args, check=True, env=env)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
            env=env,
        )

        built = list((build_dir / "python" / "lineseg").glob("_core*"))
        if not built:
            raise RuntimeError("CMake did not produce the _core extension")
        dest = out_dir / "lineseg"
        dest.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built[0]), str(dest / built[0].name))


setup(
    ext_modules=[CMakeExtension("lineseg._core")],
    cmdclass={"build_ext": CMakeBuild},
)
