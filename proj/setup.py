"""Build script for the compiled extension.

The extension compiles the C++ core directly (same sources the CMake build
uses), so `pip install .` needs only a C++20 compiler, Eigen, and pybind11.
"""

import glob
import os
import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    override = os.environ.get("EIGEN3_INCLUDE_DIR")
    if override:
        return override
    try:
        flags = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True, text=True, check=True,
        ).stdout.split()
        for flag in flags:
            if flag.startswith("-I"):
                return flag[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    return "/usr/include/eigen3"


ext = Pybind11Extension(
    "qrd._qrd",
    sorted(glob.glob("src/*.cpp")) + ["python/qrd/_qrd.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
