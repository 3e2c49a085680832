from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/magnet.cpp",
    "src/sllg.cpp",
    "src/multiplier.cpp",
    "src/synapse.cpp",
    "src/readout.cpp",
    "src/engine.cpp",
    "src/accounting.cpp",
    "src/config.cpp",
    "src/io.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "spinmac._core",
            sources=["python/bindings.cpp"] + core_sources,
            include_dirs=["include", "vendor"],
            libraries=["gsl", "gslcblas"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
