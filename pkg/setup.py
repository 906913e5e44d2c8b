from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension("progchan._scan_kernel", ["src/progchan/_scan_kernel.pyx"]),
]

# The compiled kernel is an optional speedup; progchan.kernels falls back to
# the numpy implementation when the extension is missing.
if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    ext_modules = []

setup(ext_modules=ext_modules)
