"""Discrete Dirichlet-to-Neumann (Steklov) operator and its spectrum.

The operator maps boundary data to the normal derivative of its harmonic
extension; as a matrix it is the Schur complement of the interior block of
the graph Laplacian.  Boundary-indexed vectors follow the sorted order
``graph.boundary_list``.
"""

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from steklov import kernels
from steklov.errors import BoundaryError
from steklov.graph_core import GraphWithBoundary

# Eigenvalue comparison / multiplicity grouping tolerance.
EIG_ATOL = 1e-9
# Eigenpair verification threshold, relative to max|f|.
RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Nondecreasing eigenvalue list with a multiplicity-grouping tolerance."""

    values: tuple[float, ...]
    tolerance: float = EIG_ATOL

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def sigma(self, k: int) -> float:
        """k-th eigenvalue, 1-based: sigma(1) == 0 for connected graphs."""
        return self.values[k - 1]

    def multiplicities(self) -> list[tuple[float, int]]:
        """Group eigenvalues that agree within the tolerance."""
        groups: list[tuple[float, int]] = []
        for x in self.values:
            if groups and abs(x - groups[-1][0]) <= self.tolerance:
                value, count = groups[-1]
                groups[-1] = (value, count + 1)
            else:
                groups.append((x, 1))
        return groups

    def matches(self, expected) -> bool:
        """Entrywise agreement with a sorted value list, within tolerance."""
        expected = [float(x) for x in expected]
        if len(expected) != len(self.values):
            return False
        return all(abs(a - b) <= self.tolerance for a, b in zip(self.values, expected))


@dataclass(frozen=True)
class EigenpairClaim:
    """A claimed eigenvalue with a function on all vertices."""

    sigma: float
    values: tuple[float, ...]
    label: str = ""
    advisory: bool = False


@dataclass(frozen=True)
class EigenpairReport:
    """Residuals of an eigenpair claim against the operator definition."""

    harmonic_residual: float
    boundary_residual: float
    scale: float
    verified: bool


def laplacian(graph: GraphWithBoundary) -> np.ndarray:
    """Dense combinatorial Laplacian L = Deg - Adj (zero row sums)."""
    lap = np.zeros((graph.n, graph.n))
    for u, v in graph.edges:
        lap[u, u] += 1.0
        lap[v, v] += 1.0
        lap[u, v] -= 1.0
        lap[v, u] -= 1.0
    return lap


def _boundary_vector(graph, values) -> np.ndarray:
    if isinstance(values, Mapping):
        return np.array([float(values[x]) for x in graph.boundary_list])
    vec = np.asarray(values, dtype=float)
    if vec.shape != (len(graph.boundary_list),):
        raise ValueError(
            f"expected {len(graph.boundary_list)} boundary values, got shape {vec.shape}"
        )
    return vec


def harmonic_extension(graph: GraphWithBoundary, boundary_values) -> np.ndarray:
    """Extend boundary data to the whole graph with zero Laplacian inside.

    ``boundary_values`` is an array aligned with ``graph.boundary_list`` or
    a mapping from boundary vertex to value.  Solves the positive-definite
    interior system ``L_II h = -L_IB f`` by Cholesky factorization.
    """
    f = _boundary_vector(graph, boundary_values)
    full = np.zeros(graph.n)
    bnd = list(graph.boundary_list)
    full[bnd] = f
    interior = list(graph.interior_list)
    if interior:
        lap = laplacian(graph)
        rhs = -lap[np.ix_(interior, bnd)] @ f
        full[interior] = kernels.cholesky_solve(lap[np.ix_(interior, interior)], rhs)
    return full


def normal_derivative(graph: GraphWithBoundary, values) -> np.ndarray:
    """Discrete normal derivative at each boundary vertex.

    For boundary x: sum over incident edges of (f(x) - f(neighbor)).
    """
    f = np.asarray(values, dtype=float)
    if f.shape != (graph.n,):
        raise ValueError(f"expected a function on all {graph.n} vertices")
    out = np.empty(len(graph.boundary_list))
    for i, x in enumerate(graph.boundary_list):
        out[i] = sum(f[x] - f[y] for y in graph.adjacency[x])
    return out


def dtn_matrix(graph: GraphWithBoundary) -> np.ndarray:
    """Dirichlet-to-Neumann matrix on the boundary, via Schur complement.

    Returns ``L_BB - L_BI L_II^{-1} L_IB`` (or ``L`` itself when the
    interior is empty), mirrored to be exactly symmetric.  The result is
    positive semidefinite with the constant vector in its kernel.
    """
    lap = laplacian(graph)
    bnd = list(graph.boundary_list)
    interior = list(graph.interior_list)
    if not interior:
        return lap
    l_bb = lap[np.ix_(bnd, bnd)]
    l_ib = lap[np.ix_(interior, bnd)]
    solved = kernels.cholesky_solve(lap[np.ix_(interior, interior)], l_ib)
    dtn = l_bb - l_ib.T @ solved
    upper = np.triu(dtn)
    return upper + np.triu(dtn, 1).T


def steklov_spectrum(graph: GraphWithBoundary, tolerance: float = EIG_ATOL) -> SymmetricSpectrum:
    """All Steklov eigenvalues of the graph, sorted nondecreasing."""
    w, _ = kernels.jacobi_eigh(dtn_matrix(graph))
    return SymmetricSpectrum(values=tuple(float(x) for x in w), tolerance=tolerance)


def verify_eigenpair(graph: GraphWithBoundary, claim: EigenpairClaim) -> EigenpairReport:
    """Check a claimed eigenpair against the operator definition.

    Reports the maximum interior harmonicity residual and the maximum
    boundary residual ``|df/dn - sigma f|``; the claim is verified when both
    stay below ``RESIDUAL_RTOL`` times ``max|f|``.
    """
    f = np.asarray(claim.values, dtype=float)
    if f.shape != (graph.n,):
        raise ValueError(f"claim values must cover all {graph.n} vertices")
    if max(abs(f[x]) for x in graph.boundary_list) == 0.0:
        raise ValueError("claim restricts to zero on the boundary")
    harmonic = 0.0
    for x in graph.interior_list:
        harmonic = max(harmonic, abs(sum(f[x] - f[y] for y in graph.adjacency[x])))
    boundary = 0.0
    for x in graph.boundary_list:
        residual = sum(f[x] - f[y] for y in graph.adjacency[x]) - claim.sigma * f[x]
        boundary = max(boundary, abs(residual))
    scale = float(np.max(np.abs(f)))
    verified = harmonic < RESIDUAL_RTOL * scale and boundary < RESIDUAL_RTOL * scale
    return EigenpairReport(
        harmonic_residual=harmonic,
        boundary_residual=boundary,
        scale=scale,
        verified=verified,
    )


def deformed_spectrum(graph: GraphWithBoundary, r: float, tolerance: float = EIG_ATOL) -> SymmetricSpectrum:
    """Eigenvalues of the boundary-weighted Laplacian D(r) L D(r).

    ``D(r)`` is diagonal, 1 on boundary vertices and ``r`` on interior
    vertices; as ``r`` grows the lowest ``|B|`` eigenvalues converge to the
    Steklov spectrum and the rest diverge.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    weights = np.ones(graph.n)
    weights[list(graph.interior_list)] = float(r)
    deformed = laplacian(graph) * np.outer(weights, weights)
    w, _ = kernels.jacobi_eigh(deformed)
    return SymmetricSpectrum(values=tuple(float(x) for x in w), tolerance=tolerance)


def boundary_degree_bound_check(graph: GraphWithBoundary, slack: float = EIG_ATOL) -> bool:
    """Check sigma_k <= d_k for an independent boundary set.

    ``d_k`` is the k-th smallest boundary degree.  Raises
    :class:`BoundaryError` when two boundary vertices are adjacent.
    """
    bset = graph.boundary
    for u, v in graph.edges:
        if u in bset and v in bset:
            raise BoundaryError(f"boundary is not independent: edge ({u}, {v})")
    degrees = sorted(graph.degrees[x] for x in graph.boundary_list)
    spectrum = steklov_spectrum(graph)
    return all(s <= d + slack for s, d in zip(spectrum.values, degrees))
