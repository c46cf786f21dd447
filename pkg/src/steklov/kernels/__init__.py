"""Numerical kernels with a compiled fast path and a pure-Python fallback.

The compiled extension is preferred when it was built; otherwise the
pure-Python reference implementation is used.  ``BACKEND`` records which
one was selected at import time.  Call sites go through this module's
attributes, so a benchmark (or test) can swap implementations explicitly.
"""

from steklov.kernels import pyref
from steklov.kernels.pyref import JACOBI_MAX_SWEEPS, JACOBI_RTOL

try:
    from steklov.kernels import _speedups
except ImportError:  # pragma: no cover - depends on whether the ext was built
    _speedups = None

if _speedups is not None:
    BACKEND = "compiled"
    jacobi_eigh = _speedups.jacobi_eigh
    cholesky_solve = _speedups.cholesky_solve
else:  # pragma: no cover
    BACKEND = "python"
    jacobi_eigh = pyref.jacobi_eigh
    cholesky_solve = pyref.cholesky_solve

__all__ = [
    "BACKEND",
    "JACOBI_MAX_SWEEPS",
    "JACOBI_RTOL",
    "cholesky_solve",
    "jacobi_eigh",
    "pyref",
]
