import numpy as np
import pytest

from steklov import kernels
from steklov.errors import EigensolverError, InteriorSolveError
from steklov.kernels import pyref

BACKENDS = [pyref]
if kernels.BACKEND == "compiled":
    from steklov.kernels import _speedups

    BACKENDS.append(_speedups)


def random_symmetric(n, rng):
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2.0


def random_spd(n, rng):
    a = rng.standard_normal((n, n))
    return a @ a.T + n * np.eye(n)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
class TestJacobi:
    def test_matches_lapack(self, impl):
        rng = np.random.default_rng(11)
        for n in [1, 2, 3, 5, 8, 13, 21, 34, 50]:
            a = random_symmetric(n, rng)
            w, _ = impl.jacobi_eigh(a)
            assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10)

    def test_reconstruction(self, impl):
        rng = np.random.default_rng(12)
        for n in [2, 7, 25, 50]:
            a = random_symmetric(n, rng)
            w, v = impl.jacobi_eigh(a)
            err = np.linalg.norm(v @ np.diag(w) @ v.T - a) / np.linalg.norm(a)
            assert err <= 1e-9

    def test_eigenvectors_orthonormal(self, impl):
        rng = np.random.default_rng(13)
        a = random_symmetric(20, rng)
        _, v = impl.jacobi_eigh(a)
        assert np.allclose(v.T @ v, np.eye(20), atol=1e-12)

    def test_diagonal_input(self, impl):
        w, v = impl.jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
        assert np.allclose(w, [-1.0, 2.0, 3.0])
        assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])

    def test_zero_matrix(self, impl):
        w, _ = impl.jacobi_eigh(np.zeros((4, 4)))
        assert np.allclose(w, 0.0)

    def test_sweep_cap(self, impl):
        a = random_symmetric(6, np.random.default_rng(14))
        with pytest.raises(EigensolverError):
            impl.jacobi_eigh(a, max_sweeps=0)

    def test_input_not_mutated(self, impl):
        a = random_symmetric(6, np.random.default_rng(15))
        before = a.copy()
        impl.jacobi_eigh(a)
        assert np.array_equal(a, before)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
class TestCholesky:
    def test_matches_lapack_vector(self, impl):
        rng = np.random.default_rng(21)
        for n in [1, 2, 5, 12, 30]:
            a = random_spd(n, rng)
            b = rng.standard_normal(n)
            assert np.allclose(impl.cholesky_solve(a, b), np.linalg.solve(a, b), atol=1e-10)

    def test_matches_lapack_matrix(self, impl):
        rng = np.random.default_rng(22)
        a = random_spd(9, rng)
        b = rng.standard_normal((9, 4))
        assert np.allclose(impl.cholesky_solve(a, b), np.linalg.solve(a, b), atol=1e-10)

    def test_rejects_indefinite(self, impl):
        with pytest.raises(InteriorSolveError):
            impl.cholesky_solve(np.array([[1.0, 2.0], [2.0, 1.0]]), np.ones(2))


@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled extension not built")
class TestBackendParity:
    def test_jacobi_agrees(self):
        rng = np.random.default_rng(31)
        for n in [2, 6, 17]:
            a = random_symmetric(n, rng)
            w_fast, _ = _speedups.jacobi_eigh(a)
            w_ref, _ = pyref.jacobi_eigh(a)
            assert np.allclose(w_fast, w_ref, atol=1e-12)

    def test_cholesky_agrees(self):
        rng = np.random.default_rng(32)
        a = random_spd(11, rng)
        b = rng.standard_normal((11, 3))
        assert np.allclose(
            _speedups.cholesky_solve(a, b), pyref.cholesky_solve(a, b), atol=1e-12
        )

    def test_selected_backend_is_compiled(self):
        assert kernels.jacobi_eigh is _speedups.jacobi_eigh
