from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension("flowpoly._ckernels", ["src/flowpoly/_ckernels.pyx"], optional=True)
    ext_modules = cythonize([ext], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
