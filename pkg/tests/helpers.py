"""Independent oracles used by the test suite.

Everything here deliberately avoids the package's own kernels: distances
come from a standalone BFS, spectra and harmonic solves from numpy's
LAPACK wrappers, isomorphism from exhaustive degree-respecting bijections,
and labeled-tree enumeration from raw Pruefer sequences.
"""

from collections import deque
from itertools import permutations, product

import numpy as np


def adjacency_from_edges(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def bfs_distances(n, edges, source):
    adj = adjacency_from_edges(n, edges)
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def brute_diameter(n, edges):
    return max(max(bfs_distances(n, edges, s)) for s in range(n))


def laplacian_oracle(n, edges):
    lap = np.zeros((n, n))
    for u, v in edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    return lap


def dtn_oracle(n, edges, boundary):
    """Schur complement via numpy's LU solve; independent of the kernels."""
    lap = laplacian_oracle(n, edges)
    bnd = sorted(boundary)
    interior = [x for x in range(n) if x not in set(boundary)]
    if not interior:
        return lap
    return lap[np.ix_(bnd, bnd)] - lap[np.ix_(bnd, interior)] @ np.linalg.solve(
        lap[np.ix_(interior, interior)], lap[np.ix_(interior, bnd)]
    )


def steklov_oracle(tree):
    """Sorted Steklov eigenvalues via numpy's eigvalsh."""
    return np.linalg.eigvalsh(dtn_oracle(tree.n, tree.edges, tree.boundary))


def brute_isomorphic(n1, edges1, n2, edges2) -> bool:
    """Exhaustive isomorphism test over degree-respecting vertex bijections."""
    if n1 != n2 or len(edges1) != len(edges2):
        return False
    deg1 = [0] * n1
    deg2 = [0] * n2
    for u, v in edges1:
        deg1[u] += 1
        deg1[v] += 1
    for u, v in edges2:
        deg2[u] += 1
        deg2[v] += 1
    if sorted(deg1) != sorted(deg2):
        return False
    classes1 = {}
    classes2 = {}
    for x in range(n1):
        classes1.setdefault(deg1[x], []).append(x)
        classes2.setdefault(deg2[x], []).append(x)
    target = {(min(u, v), max(u, v)) for u, v in edges2}
    degrees = sorted(classes1)
    pools = [permutations(classes2[d]) for d in degrees]
    for assignment in product(*pools):
        mapping = {}
        for d, image in zip(degrees, assignment):
            for x, y in zip(classes1[d], image):
                mapping[x] = y
        if all((min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) in target
               for u, v in edges1):
            return True
    return False


def prufer_edges(sequence):
    """Decode a Pruefer sequence into edges (straight textbook decoding)."""
    seq = list(sequence)
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(y for y in range(n) if degree[y] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [y for y in range(n) if degree[y] == 1]
    edges.append((u, v))
    return edges


def all_labeled_trees(n):
    """Every labeled tree on n vertices, via all Pruefer sequences."""
    if n == 2:
        yield [(0, 1)]
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_edges(seq)


def relabeled_edges(edges, perm):
    return [(perm[u], perm[v]) for u, v in edges]
