import os
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob("src/*.cpp")) + ["src/bindings/module.cpp"]

eigen = next(
    (d for d in ("/usr/include/eigen3", "/usr/local/include/eigen3") if os.path.isdir(d)),
    "/usr/include/eigen3",
)

ext = Pybind11Extension(
    "ferfreq._core",
    sources,
    include_dirs=["include", "vendor", eigen],
    libraries=["png", "z"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
