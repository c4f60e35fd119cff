"""Build the wtheta_py extension module by delegating to cargo."""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

CRATE_DIR = Path(__file__).resolve().parent


class CargoExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        subprocess.run(
            ["cargo", "build", "--release", "-p", "wtheta-py"],
            cwd=CRATE_DIR,
            check=True,
        )
        built = CRATE_DIR.parent.parent / "target" / "release" / "libwtheta_py.so"
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, dest)


setup(
    ext_modules=[CargoExtension("wtheta_py")],
    cmdclass={"build_ext": CargoBuildExt},
)
