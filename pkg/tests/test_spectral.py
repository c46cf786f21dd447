import math
import random

import numpy as np
import pytest
from helpers import dtn_oracle, laplacian_oracle, steklov_oracle

from steklov.enumeration import (
    enumerate_trees,
    random_graph_with_independent_boundary,
)
from steklov.errors import BoundaryError
from steklov.families import (
    almost_fork,
    almost_seesaw,
    make_family,
    predicted_eigenfunctions,
)
from steklov.graph_core import GraphWithBoundary, build_tree
from steklov.spectral import (
    EigenpairClaim,
    SymmetricSpectrum,
    boundary_degree_bound_check,
    deformed_spectrum,
    dtn_matrix,
    harmonic_extension,
    laplacian,
    normal_derivative,
    steklov_spectrum,
    verify_eigenpair,
)


def path(n):
    return build_tree([(i, i + 1) for i in range(n - 1)])


STAR4 = [(0, 1), (0, 2), (0, 3)]


class TestLaplacian:
    def test_path2(self):
        assert np.array_equal(laplacian(path(2)), [[1, -1], [-1, 1]])

    def test_path3(self):
        assert np.array_equal(laplacian(path(3)), [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])

    def test_star4(self):
        lap = laplacian(build_tree(STAR4))
        assert np.array_equal(np.diagonal(lap), [3, 1, 1, 1])
        assert np.allclose(lap.sum(axis=1), 0)

    def test_zero_row_sums_random(self):
        for tree in enumerate_trees(7):
            assert np.allclose(laplacian(tree).sum(axis=1), 0)


class TestHarmonicExtension:
    def test_constant(self):
        tree = build_tree(STAR4)
        assert np.allclose(harmonic_extension(tree, [3.0, 3.0, 3.0]), 3.0)

    def test_path3_midpoint_average(self):
        assert harmonic_extension(path(3), [1.0, 0.0])[1] == pytest.approx(0.5)

    def test_mapping_input(self):
        full = harmonic_extension(path(3), {0: 1.0, 2: 0.0})
        assert full[1] == pytest.approx(0.5)

    def test_fork_junction_value(self):
        # xi_2 boundary data on AF(3,1): junction must extend to
        # (b-1)/b * sigma_2 = 2/5 (worked by hand from the 2x2 interior solve)
        tree = make_family(almost_fork(3, 1))
        full = harmonic_extension(tree, {2: -2.0, 3: 1.0, 4: 1.0})
        assert full[0] == pytest.approx(0.4, abs=1e-12)
        assert full[1] == pytest.approx(-0.8, abs=1e-12)

    def test_empty_interior(self):
        full = harmonic_extension(path(2), [2.0, -1.0])
        assert np.array_equal(full, [2.0, -1.0])

    def test_interior_equation_holds(self):
        rng = random.Random(3)
        for tree in enumerate_trees(8):
            values = [rng.uniform(-1, 1) for _ in tree.boundary_list]
            full = harmonic_extension(tree, values)
            for x in tree.interior_list:
                total = sum(full[x] - full[y] for y in tree.adjacency[x])
                assert abs(total) < 1e-10


class TestNormalDerivative:
    def test_constant_vanishes(self):
        tree = build_tree(STAR4)
        assert np.allclose(normal_derivative(tree, np.ones(4)), 0.0)

    def test_path3(self):
        full = harmonic_extension(path(3), [1.0, 0.0])
        assert np.allclose(normal_derivative(path(3), full), [0.5, -0.5])

    def test_path2(self):
        assert np.allclose(normal_derivative(path(2), np.array([1.0, 0.0])), [1.0, -1.0])


class TestDtnMatrix:
    def test_path3_exact(self):
        assert np.allclose(dtn_matrix(path(3)), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-14)

    def test_star4_is_identity_minus_third(self):
        dtn = dtn_matrix(build_tree(STAR4))
        assert np.allclose(dtn, np.eye(3) - np.ones((3, 3)) / 3.0, atol=1e-12)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_path_spectrum(self, n):
        assert steklov_spectrum(path(n)).matches([0.0, 2.0 / (n - 1)])

    def test_exactly_symmetric_and_psd(self):
        for n in range(2, 9):
            for tree in enumerate_trees(n):
                dtn = dtn_matrix(tree)
                assert np.array_equal(dtn, dtn.T)
                assert np.linalg.eigvalsh(dtn).min() >= -1e-10
                ones = np.ones(len(tree.boundary_list))
                assert np.max(np.abs(dtn @ ones)) < 1e-12 * tree.n

    def test_matches_column_assembly(self):
        # second route: apply the operator column by column through the
        # harmonic extension and the normal derivative
        for n in range(2, 11):
            for tree in enumerate_trees(n):
                dtn = dtn_matrix(tree)
                k = len(tree.boundary_list)
                for j in range(k):
                    unit = np.zeros(k)
                    unit[j] = 1.0
                    column = normal_derivative(tree, harmonic_extension(tree, unit))
                    assert np.allclose(dtn[:, j], column, atol=1e-10)

    def test_matches_numpy_oracle(self):
        for n in range(2, 10):
            for tree in enumerate_trees(n):
                oracle = dtn_oracle(tree.n, tree.edges, tree.boundary)
                assert np.allclose(dtn_matrix(tree), oracle, atol=1e-10)


class TestSteklovSpectrum:
    def test_fork31(self):
        assert steklov_spectrum(make_family(almost_fork(3, 1))).matches([0, 0.6, 1])

    def test_crab221(self):
        from steklov.families import crab

        assert steklov_spectrum(make_family(crab(2, 2, 1))).matches([0, 0.5, 1, 1])

    def test_path4(self):
        assert steklov_spectrum(path(4)).matches([0, 2.0 / 3.0])

    def test_path2_boundary_is_everything(self):
        assert steklov_spectrum(path(2)).matches([0.0, 2.0])

    def test_unit_interval_bound(self):
        # leaf-boundary trees on >= 3 vertices keep the spectrum in [0, 1]
        for n in range(3, 10):
            for tree in enumerate_trees(n):
                values = steklov_spectrum(tree).values
                assert values[0] >= -1e-9
                assert values[-1] <= 1.0 + 1e-9

    def test_matches_lapack_oracle(self):
        for n in range(2, 10):
            for tree in enumerate_trees(n):
                assert np.allclose(steklov_spectrum(tree).values, steklov_oracle(tree), atol=1e-10)


class TestSymmetricSpectrum:
    def test_sigma_is_one_based(self):
        spectrum = SymmetricSpectrum(values=(0.0, 0.25, 1.0))
        assert spectrum.sigma(1) == 0.0
        assert spectrum.sigma(3) == 1.0

    def test_multiplicities(self):
        spectrum = SymmetricSpectrum(values=(0.0, 0.5, 0.5 + 1e-12, 1.0))
        assert spectrum.multiplicities() == [(0.0, 1), (0.5, 2), (1.0, 1)]

    def test_matches_length_mismatch(self):
        assert not SymmetricSpectrum(values=(0.0, 1.0)).matches([0.0])


class TestVerifyEigenpair:
    def test_constant(self):
        tree = path(4)
        claim = EigenpairClaim(sigma=0.0, values=(1.0, 1.0, 1.0, 1.0))
        report = verify_eigenpair(tree, claim)
        assert report.verified
        assert report.harmonic_residual == 0.0
        assert report.boundary_residual == 0.0

    @pytest.mark.parametrize("b", range(2, 7))
    @pytest.mark.parametrize("r", range(1, 6))
    def test_fork_eigenfunctions(self, b, r):
        tree = make_family(almost_fork(b, r))
        for claim in predicted_eigenfunctions(almost_fork(b, r)):
            assert verify_eigenpair(tree, claim).verified, claim.label

    def test_seesaw_sigma2(self):
        desc = almost_seesaw(2, 3, 1)
        tree = make_family(desc)
        claims = {c.label: c for c in predicted_eigenfunctions(desc)}
        expected = (12.0 - math.sqrt(12.0)) / 22.0
        assert claims["xi2"].sigma == pytest.approx(expected, abs=1e-12)
        assert verify_eigenpair(tree, claims["xi2"]).verified

    def test_wrong_eigenvalue_fails(self):
        tree = path(3)
        claim = EigenpairClaim(sigma=0.3, values=(1.0, 0.0, -1.0))
        assert not verify_eigenpair(tree, claim).verified

    def test_zero_boundary_rejected(self):
        tree = path(3)
        with pytest.raises(ValueError):
            verify_eigenpair(tree, EigenpairClaim(sigma=0.0, values=(0.0, 1.0, 0.0)))


class TestDeformedSpectrum:
    def test_r_one_is_plain_laplacian(self):
        tree = make_family(almost_fork(3, 2))
        expected = np.linalg.eigvalsh(laplacian_oracle(tree.n, tree.edges))
        assert np.allclose(deformed_spectrum(tree, 1.0).values, expected, atol=1e-10)

    def test_path3_converges_to_steklov(self):
        tree = path(3)
        errors = [abs(deformed_spectrum(tree, r).sigma(2) - 1.0) for r in (10, 100, 1000)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-3

    def test_kernel_mode_stays_zero(self):
        for tree in [path(3), make_family(almost_fork(3, 1)), build_tree(STAR4)]:
            for r in (1.0, 10.0, 100.0, 1000.0):
                assert abs(deformed_spectrum(tree, r).sigma(1)) < 1e-10

    def test_rejects_nonpositive_r(self):
        with pytest.raises(ValueError):
            deformed_spectrum(path(3), 0.0)


class TestDegreeBound:
    def test_leaf_boundary_trees(self):
        for tree in [path(4), build_tree(STAR4)]:
            assert boundary_degree_bound_check(tree)

    def test_star_spectrum_vs_degrees(self):
        assert steklov_spectrum(build_tree(STAR4)).matches([0, 1, 1])

    def test_path2_boundary_not_independent(self):
        with pytest.raises(BoundaryError):
            boundary_degree_bound_check(path(2))

    def test_random_graphs(self):
        rng = random.Random(99)
        for _ in range(40):
            graph = random_graph_with_independent_boundary(rng.randint(3, 10), rng)
            assert boundary_degree_bound_check(graph)

    def test_boundary_with_larger_degrees(self):
        # 4-cycle plus a pendant: boundary {0, 4} is independent with degrees 2, 1
        graph = GraphWithBoundary(
            5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4)], boundary=[0, 4]
        )
        assert boundary_degree_bound_check(graph)
