"""Pure-Python reference kernels.

These are the fallback used when the compiled extension is not built, and
the baseline side of the kernel benchmark.  Both backends implement the
same algorithms: cyclic Jacobi rotation diagonalization for symmetric
eigenproblems and a dense Cholesky factorization for the symmetric
positive-definite solves.
"""

import numpy as np

from steklov.errors import EigensolverError, InteriorSolveError

# Off-diagonal Frobenius norm target, relative to the Frobenius norm of the
# input matrix, plus a hard cap on the number of cyclic sweeps.
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 64


def jacobi_eigh(matrix, rel_tol=JACOBI_RTOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors as
    the columns of ``v``, so ``matrix == v @ diag(w) @ v.T`` up to round-off.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``rel_tol`` times the Frobenius norm of the input; exceeding
    ``max_sweeps`` raises :class:`EigensolverError`.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diagonal(a).copy(), v
    thresh = rel_tol * np.linalg.norm(a)
    sweeps = 0
    while True:
        off = np.sqrt(2.0) * np.linalg.norm(np.triu(a, 1))
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
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        sweeps += 1
    order = np.argsort(np.diagonal(a), kind="stable")
    return np.diagonal(a)[order].copy(), v[:, order].copy()


def cholesky_solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` for a symmetric positive definite matrix.

    ``rhs`` may be a vector or a matrix of stacked right-hand sides.  Raises
    :class:`InteriorSolveError` when a pivot is not positive.
    """
    g = np.array(matrix, dtype=float, copy=True)
    b = np.array(rhs, dtype=float, copy=True)
    single = b.ndim == 1
    if single:
        b = b[:, None]
    m = g.shape[0]
    for j in range(m):
        d = g[j, j] - g[j, :j] @ g[j, :j]
        if d <= 0.0:
            raise InteriorSolveError("matrix is not positive definite")
        d = np.sqrt(d)
        g[j, j] = d
        if j + 1 < m:
            g[j + 1 :, j] = (g[j + 1 :, j] - g[j + 1 :, :j] @ g[j, :j]) / d
    for i in range(m):
        b[i] = (b[i] - g[i, :i] @ b[:i]) / g[i, i]
    for i in range(m - 1, -1, -1):
        b[i] = (b[i] - g[i + 1 :, i] @ b[i + 1 :]) / g[i, i]
    return b[:, 0] if single else b
