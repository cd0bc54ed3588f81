import glob
import os
import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    try:
        out = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True, text=True, check=True,
        ).stdout
        for piece in out.split():
            if piece.startswith("-I"):
                return piece[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    return "/usr/include/eigen3"


ext = Pybind11Extension(
    "arhyst",
    sources=["bindings/py_module.cpp"] + sorted(glob.glob("src/*.cpp")),
    include_dirs=["include", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
