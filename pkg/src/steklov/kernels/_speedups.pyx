# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic Jacobi eigensolver and Cholesky solves.

Same algorithms and stopping rules as :mod:`steklov.kernels.pyref`; this
module only exists to make the per-tree spectral work fast enough for
exhaustive enumeration at the top of the supported range.
"""

from libc.math cimport fabs, sqrt

import numpy as np

from steklov.errors import EigensolverError, InteriorSolveError

JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 64


def jacobi_eigh(matrix, double rel_tol=JACOBI_RTOL, int max_sweeps=JACOBI_MAX_SWEEPS):
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ascending and eigenvectors as the
    columns of ``v``.  Raises :class:`EigensolverError` when the sweep cap
    is hit before the off-diagonal norm target.
    """
    a_np = np.array(matrix, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_np.shape[0]
    v_np = np.eye(n, dtype=np.float64)
    if n < 2:
        return np.diagonal(a_np).copy(), v_np
    cdef double[:, ::1] a = a_np
    cdef double[:, ::1] v = v_np
    cdef double fro = 0.0, off, apq, tau, t, c, s, xp, xq
    cdef double thresh
    cdef Py_ssize_t i, j, p, q
    cdef int sweeps = 0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    thresh = rel_tol * sqrt(fro)
    while True:
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        off = sqrt(2.0 * off)
        if off <= thresh:
            break
        if sweeps >= max_sweeps:
            raise EigensolverError(
                f"cyclic Jacobi did not reach off-norm {thresh:.3e} in "
                f"{max_sweeps} sweeps (current {off:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = c * xp - s * xq
                    a[i, q] = s * xp + c * xq
                for j in range(n):
                    xp = a[p, j]
                    xq = a[q, j]
                    a[p, j] = c * xp - s * xq
                    a[q, j] = s * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp - s * xq
                    v[i, q] = s * xp + c * xq
        sweeps += 1
    order = np.argsort(np.diagonal(a_np), kind="stable")
    return np.diagonal(a_np)[order].copy(), v_np[:, order].copy()


def cholesky_solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` for a symmetric positive definite matrix."""
    g_np = np.array(matrix, dtype=np.float64, order="C", copy=True)
    b_np = np.array(rhs, dtype=np.float64, order="C", copy=True)
    single = b_np.ndim == 1
    if single:
        b_np = b_np[:, None].copy()
    cdef double[:, ::1] g = g_np
    cdef double[:, ::1] b = b_np
    cdef Py_ssize_t m = g_np.shape[0]
    cdef Py_ssize_t k = b_np.shape[1]
    cdef Py_ssize_t i, j, l, col
    cdef double d, acc
    for j in range(m):
        d = g[j, j]
        for l in range(j):
            d -= g[j, l] * g[j, l]
        if d <= 0.0:
            raise InteriorSolveError("matrix is not positive definite")
        d = sqrt(d)
        g[j, j] = d
        for i in range(j + 1, m):
            acc = g[i, j]
            for l in range(j):
                acc -= g[i, l] * g[j, l]
            g[i, j] = acc / d
    for col in range(k):
        for i in range(m):
            acc = b[i, col]
            for l in range(i):
                acc -= g[i, l] * b[l, col]
            b[i, col] = acc / g[i, i]
        for i in range(m - 1, -1, -1):
            acc = b[i, col]
            for l in range(i + 1, m):
                acc -= g[l, i] * b[l, col]
            b[i, col] = acc / g[i, i]
    return b_np[:, 0].copy() if single else b_np
