"""Graphs and trees with boundary: validation, metrics, canonical codes.

Vertices are dense integer indices ``0..n-1``.  Trees carry their leaf set
as the boundary.  All operations are pure functions of immutable inputs.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from steklov.errors import (
    BoundaryError,
    CycleError,
    DisconnectedError,
    DuplicateEdgeError,
    EdgeListFormatError,
    GraphError,
    NotDiametralError,
    OddDiameterError,
    SelfLoopError,
)

Edge = tuple[int, int]


def _normalize_edges(edge_list) -> tuple[Edge, ...]:
    """Validate raw edges and return them as sorted ``(min, max)`` pairs."""
    seen = set()
    edges = []
    for u, v in edge_list:
        u, v = int(u), int(v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex index in edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return tuple(sorted(edges))


class GraphWithBoundary:
    """Simple connected graph on ``0..n-1`` with a nonempty boundary set."""

    def __init__(self, n: int, edges, boundary):
        self.n = int(n)
        self.edges = _normalize_edges(edges)
        self.boundary = frozenset(int(x) for x in boundary)
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        for u, v in self.edges:
            if v >= self.n:
                raise GraphError(f"edge ({u}, {v}) exceeds vertex range 0..{self.n - 1}")
        if not self.boundary:
            raise BoundaryError("boundary must be nonempty")
        if not all(0 <= x < self.n for x in self.boundary):
            raise BoundaryError("boundary contains out-of-range vertices")
        if self.n > 1 and len(self._component_of(0)) != self.n:
            raise DisconnectedError("graph is not connected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def boundary_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.boundary))

    @cached_property
    def interior_list(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if x not in self.boundary)

    def _component_of(self, start: int, banned_edges=()) -> set[int]:
        banned = {(min(e), max(e)) for e in banned_edges}
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if (min(x, y), max(x, y)) in banned or y in seen:
                    continue
                seen.add(y)
                queue.append(y)
        return seen

    def distances_from(self, source: int) -> list[int]:
        """BFS distances from ``source``; ``-1`` marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def __repr__(self):
        return (
            f"{type(self).__name__}(n={self.n}, edges={list(self.edges)}, "
            f"boundary={sorted(self.boundary)})"
        )

    def __eq__(self, other):
        if not isinstance(other, GraphWithBoundary):
            return NotImplemented
        return (self.n, self.edges, self.boundary) == (other.n, other.edges, other.boundary)

    def __hash__(self):
        return hash((self.n, self.edges, self.boundary))


class TreeWithLeafBoundary(GraphWithBoundary):
    """Connected graph with ``n-1`` edges whose boundary is its leaf set."""

    def __init__(self, n: int, edges):
        edges = _normalize_edges(edges)
        if n < 2:
            raise GraphError("a tree with leaf boundary needs at least 2 vertices")
        degree = [0] * n
        for u, v in edges:
            if v >= n:
                raise GraphError(f"edge ({u}, {v}) exceeds vertex range 0..{n - 1}")
            degree[u] += 1
            degree[v] += 1
        leaves = [x for x in range(n) if degree[x] == 1]
        super().__init__(n, edges, leaves or [0])
        if len(self.edges) != self.n - 1:
            raise CycleError(f"cycle detected: {len(self.edges)} edges on {self.n} vertices")
        if len(leaves) < 2:
            raise GraphError("a tree on >= 2 vertices has at least 2 leaves")

    @property
    def leaf_count(self) -> int:
        return len(self.boundary)


def build_tree(edge_list, n: int | None = None) -> TreeWithLeafBoundary:
    """Validate an edge list into a tree whose leaves form the boundary.

    Reports self-loops, duplicate edges, disconnectedness and cycles as
    distinct errors.  ``n`` defaults to ``1 + max vertex index``.
    """
    edges = _normalize_edges(edge_list)
    if not edges:
        raise GraphError("empty edge list")
    inferred = 1 + max(v for _, v in edges)
    if n is None:
        n = inferred
    elif n < inferred:
        raise GraphError(f"declared n={n} but edges reach vertex {inferred - 1}")
    return TreeWithLeafBoundary(n, edges)


def diameter(tree: GraphWithBoundary) -> int:
    """Maximum pairwise distance, via a double breadth-first traversal."""
    dist0 = tree.distances_from(0)
    far = max(range(tree.n), key=lambda x: dist0[x])
    dist1 = tree.distances_from(far)
    return max(dist1)


def path_between(tree: TreeWithLeafBoundary, u: int, v: int) -> tuple[int, ...]:
    """The unique u-v path in a tree."""
    parent = [-1] * tree.n
    parent[u] = u
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in tree.adjacency[x]:
            if parent[y] < 0:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def all_diametral_paths(tree: TreeWithLeafBoundary) -> list[tuple[int, ...]]:
    """All paths realizing the diameter, once each, smaller endpoint first.

    Diametral endpoints in a tree are always leaves, so only leaf pairs are
    inspected.
    """
    d = diameter(tree)
    leaves = tree.boundary_list
    paths = []
    for i, u in enumerate(leaves):
        dist = tree.distances_from(u)
        for v in leaves[i + 1 :]:
            if dist[v] == d:
                paths.append(path_between(tree, u, v))
    return paths


@dataclass(frozen=True)
class BranchDecomposition:
    """Off-path components hanging at the interior vertices of a diametral path.

    ``components[i-1]`` is the vertex set (excluding ``path[i]`` itself) of
    the connected component of ``path[i]`` after deleting the two incident
    path edges, for ``i = 1..D-1``.
    """

    path: tuple[int, ...]
    components: tuple[frozenset[int], ...]


def branch_decomposition(tree: TreeWithLeafBoundary, path) -> BranchDecomposition:
    """Decompose a tree along a diametral path."""
    path = tuple(int(x) for x in path)
    if len(set(path)) != len(path):
        raise NotDiametralError("path vertices are not distinct")
    edge_set = set(tree.edges)
    for a, b in zip(path, path[1:]):
        if (min(a, b), max(a, b)) not in edge_set:
            raise NotDiametralError(f"({a}, {b}) is not an edge")
    if len(path) - 1 != diameter(tree):
        raise NotDiametralError("path length differs from the tree diameter")
    comps = []
    for i in range(1, len(path) - 1):
        banned = [(path[i - 1], path[i]), (path[i], path[i + 1])]
        comp = tree._component_of(path[i], banned) - {path[i]}
        comps.append(frozenset(comp))
    return BranchDecomposition(path=path, components=tuple(comps))


def rooted_depth(tree: GraphWithBoundary, root: int, restrict) -> int:
    """Maximum distance from ``root`` to ``restrict``, inside their union.

    ``restrict`` together with the root must induce a connected subtree;
    returns 0 when ``restrict`` is empty.
    """
    restrict = {int(x) for x in restrict}
    if not restrict:
        return 0
    allowed = restrict | {root}
    dist = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in tree.adjacency[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if set(dist) != allowed:
        raise DisconnectedError("restrict set does not induce a connected subtree at root")
    return max(dist[x] for x in restrict)


def _path_has_midpoint_structure(tree, path) -> bool:
    d = len(path) - 1
    r = d // 2
    decomp = branch_decomposition(tree, path)
    for i, comp in enumerate(decomp.components, start=1):
        if i != r and comp:
            return False
        if i == r and comp and rooted_depth(tree, path[r], comp) > r:
            return False
    return True


def even_diameter_path_reports(tree: TreeWithLeafBoundary) -> list[tuple[tuple[int, ...], bool]]:
    """Per-diametral-path answers for the even-diameter attainment structure."""
    d = diameter(tree)
    if d % 2:
        raise OddDiameterError(f"diameter {d} is odd")
    return [(p, _path_has_midpoint_structure(tree, p)) for p in all_diametral_paths(tree)]


def attains_even_diameter_bound(tree: TreeWithLeafBoundary) -> bool:
    """Whether an even-diameter tree attains the 2/D bound on sigma_2.

    True iff EVERY diametral path v_0..v_(2r) has all off-path components
    empty except at the midpoint v_r, where the hanging rooted tree has
    depth at most r.  (Quantifying existentially is not sufficient: a tree
    can carry one structured diametral path and still have sigma_2 < 2/D
    because of branches seen only by the other diametral paths.)
    """
    return all(ok for _, ok in even_diameter_path_reports(tree))


def tree_centers(tree: TreeWithLeafBoundary) -> list[int]:
    """The one or two center vertices, by repeated leaf peeling."""
    if tree.n <= 2:
        return list(range(tree.n))
    degree = list(tree.degrees)
    layer = [x for x in range(tree.n) if degree[x] == 1]
    remaining = tree.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for x in layer:
            degree[x] = 0
            for y in tree.adjacency[x]:
                if degree[y] > 1:
                    degree[y] -= 1
                    if degree[y] == 1:
                        nxt.append(y)
        layer = nxt
    return sorted(layer)


def _rooted_code(tree: GraphWithBoundary, root: int) -> bytes:
    """AHU-style canonical encoding of the tree rooted at ``root``."""
    order = []
    parent = [-1] * tree.n
    parent[root] = root
    queue = deque([root])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in tree.adjacency[x]:
            if parent[y] < 0:
                parent[y] = x
                queue.append(y)
    code: list[bytes] = [b""] * tree.n
    for x in reversed(order):
        children = sorted(code[y] for y in tree.adjacency[x] if parent[y] == x and y != x)
        code[x] = b"(" + b"".join(children) + b")"
    return code[root]


def canonical_code(tree: TreeWithLeafBoundary) -> bytes:
    """Isomorphism-invariant encoding: equal codes iff isomorphic trees.

    The tree is rooted at its center; when the center is an edge, both
    center-rooted encodings are formed and the lexicographic minimum wins.
    """
    return min(_rooted_code(tree, c) for c in tree_centers(tree))


def subtree(tree: TreeWithLeafBoundary, vertices) -> TreeWithLeafBoundary:
    """Induced subtree on ``vertices``, relabeled densely in sorted order.

    The boundary of the result is recomputed as its own leaf set.
    """
    keep = sorted({int(x) for x in vertices})
    if not keep:
        raise DisconnectedError("empty vertex subset")
    if len(keep) < 2:
        raise GraphError("subtree needs at least 2 vertices to have leaves")
    if any(x < 0 or x >= tree.n for x in keep):
        raise GraphError("subset contains out-of-range vertices")
    relabel = {x: i for i, x in enumerate(keep)}
    kept = set(keep)
    edges = [(relabel[u], relabel[v]) for u, v in tree.edges if u in kept and v in kept]
    if len(edges) != len(keep) - 1:
        raise DisconnectedError("vertex subset does not induce a connected subtree")
    return TreeWithLeafBoundary(len(keep), edges)


def parse_edge_list(text: str) -> TreeWithLeafBoundary:
    """Parse the edge-list text format: optional ``n=<int>`` header, then one
    ``u v`` pair per line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("n="):
            if edges or n is not None:
                raise EdgeListFormatError(f"line {lineno}: stray header {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise EdgeListFormatError(f"line {lineno}: bad header {line!r}") from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
    if not edges:
        raise EdgeListFormatError("no edges found")
    return build_tree(edges, n=n)


def format_edge_list(tree: GraphWithBoundary) -> str:
    """Serialize a graph in the edge-list text format (with header)."""
    lines = [f"n={tree.n}"]
    lines += [f"{u} {v}" for u, v in tree.edges]
    return "\n".join(lines) + "\n"
