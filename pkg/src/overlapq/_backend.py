"""Select the compiled kernels when built, else the pure-Python fallback."""

try:
    from . import _kernels as kernels
except ImportError:  # extension not built
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    BACKEND = "cython"

__all__ = ["BACKEND", "kernels"]
