"""
Graphs, cluster graphs, induced-P3 counting and the two cluster distances
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NotClusterGraph, SizeMismatch

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def pair(u: int, v: int) -> Pair:
    """Return the unordered pair {u, v} as a sorted tuple."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on the vertices 0..n-1.

    The adjacency lives in a read-only boolean matrix. The edge set, neighbor
    sets and connected components are derived from it on first use.
    """

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"Vertex count must be nonnegative, got {n}")
        adjacency = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) out of range for n={n}")
            adjacency[u, v] = adjacency[v, u] = True
        self._install(adjacency)

    def _install(self, adjacency: np.ndarray):
        adjacency.setflags(write=False)
        self.n = int(adjacency.shape[0])
        self._adjacency = adjacency
        self._edges: Optional[FrozenSet[Pair]] = None
        self._neighbor_sets: Optional[List[FrozenSet[int]]] = None
        self._components: Optional[Tuple[FrozenSet[int], ...]] = None

    @classmethod
    def _wrap(cls, adjacency: np.ndarray) -> "Graph":
        """Adopt a symmetric loop-free boolean matrix the caller no longer mutates."""
        graph = cls.__new__(cls)
        graph._install(adjacency)
        return graph

    @classmethod
    def from_adjacency(cls, adjacency) -> "Graph":
        """Build a graph from a square symmetric 0/1 matrix (copied)."""
        matrix = np.array(adjacency, dtype=bool)
        if matrix.size == 0:
            matrix = matrix.reshape(0, 0)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Adjacency matrix must be square, got shape {matrix.shape}")
        if matrix.diagonal().any():
            raise ValueError("Adjacency matrix has self-loops")
        if not np.array_equal(matrix, matrix.T):
            raise ValueError("Adjacency matrix is not symmetric")
        return cls._wrap(matrix)

    @classmethod
    def from_cliques(cls, n: int, cliques: Iterable[Iterable[int]]) -> "Graph":
        """Build the graph whose edges are all pairs inside the given vertex sets."""
        matrix = np.zeros((n, n), dtype=bool)
        for clique in cliques:
            members = np.fromiter(clique, dtype=np.int64)
            matrix[np.ix_(members, members)] = True
        np.fill_diagonal(matrix, False)
        return cls._wrap(matrix)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, numbering nodes in iteration order."""
        index = {node: i for i, node in enumerate(graph.nodes())}
        return cls(len(index), ((index[u], index[v]) for u, v in graph.edges()))

    def to_networkx(self) -> nx.Graph:
        """Convert to a networkx graph on nodes 0..n-1."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adjacency

    @property
    def edges(self) -> FrozenSet[Pair]:
        """All edges as sorted vertex pairs."""
        if self._edges is None:
            upper = np.argwhere(np.triu(self._adjacency, 1))
            self._edges = frozenset((int(u), int(v)) for u, v in upper)
        return self._edges

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self._adjacency)) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self._adjacency[u, v])

    def neighbors(self, v: int) -> FrozenSet[int]:
        if self._neighbor_sets is None:
            self._neighbor_sets = [
                frozenset(int(w) for w in np.flatnonzero(row)) for row in self._adjacency
            ]
        return self._neighbor_sets[v]

    def degrees(self) -> np.ndarray:
        return self._adjacency.sum(axis=1).astype(np.int64)

    def components(self) -> Tuple[FrozenSet[int], ...]:
        """Connected components ordered by their smallest vertex."""
        if self._components is None:
            labels = _component_labels(self._adjacency)
            groups: Dict[int, List[int]] = {}
            for v, label in enumerate(labels):
                groups.setdefault(int(label), []).append(v)
            self._components = tuple(frozenset(members) for members in groups.values())
        return self._components

    def induced(self, keep: Sequence[int]) -> "Graph":
        """Subgraph on `keep`, renumbered so that keep[i] becomes vertex i."""
        index = np.asarray(keep, dtype=np.int64)
        return Graph._wrap(self._adjacency[np.ix_(index, index)].copy())

    def with_pair_toggled(self, u: int, v: int) -> "Graph":
        """Copy with the pair {u, v} inserted if absent or deleted if present."""
        matrix = self._adjacency.copy()
        matrix[u, v] = matrix[v, u] = not matrix[u, v]
        return Graph._wrap(matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adjacency, other._adjacency)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adjacency).tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def _component_labels(adjacency: np.ndarray) -> np.ndarray:
    if adjacency.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    _, labels = connected_components(csr_matrix(adjacency), directed=False)
    return labels


@dataclass(frozen=True)
class ClusterGraph:
    """Partition of 0..n-1 into clusters, ordered by smallest contained vertex."""

    n: int
    clusters: Tuple[FrozenSet[int], ...]
    cluster_of: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    labels: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be nonnegative, got {self.n}")
        blocks = [frozenset(int(v) for v in cluster) for cluster in self.clusters]
        if any(not block for block in blocks):
            raise ValueError("Cluster graph contains an empty cluster")
        blocks.sort(key=min)
        labels = np.full(self.n, -1, dtype=np.int64)
        for index, block in enumerate(blocks):
            for v in block:
                if not 0 <= v < self.n:
                    raise ValueError(f"Vertex {v} out of range for n={self.n}")
                if labels[v] != -1:
                    raise ValueError(f"Vertex {v} appears in more than one cluster")
                labels[v] = index
        uncovered = np.flatnonzero(labels < 0)
        if uncovered.size:
            raise ValueError(f"Vertex {int(uncovered[0])} is not covered by any cluster")
        labels.setflags(write=False)
        object.__setattr__(self, "clusters", tuple(blocks))
        object.__setattr__(self, "cluster_of", tuple(int(x) for x in labels))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "ClusterGraph":
        return cls(n, tuple(frozenset(c) for c in clusters))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "ClusterGraph":
        """Group vertices by label; label values themselves are discarded."""
        groups: Dict[int, List[int]] = {}
        for v, label in enumerate(labels):
            groups.setdefault(int(label), []).append(v)
        return cls(len(labels), tuple(frozenset(g) for g in groups.values()))

    def __len__(self) -> int:
        return len(self.clusters)

    @property
    def sizes(self) -> np.ndarray:
        return np.fromiter((len(c) for c in self.clusters), dtype=np.int64, count=len(self.clusters))

    @property
    def edge_count(self) -> int:
        sizes = self.sizes
        return int((sizes * (sizes - 1) // 2).sum())

    def cluster_containing(self, v: int) -> FrozenSet[int]:
        return self.clusters[self.cluster_of[v]]

    def induced(self, keep: Sequence[int]) -> "ClusterGraph":
        """Partition restricted to `keep`, renumbered so that keep[i] becomes vertex i."""
        return ClusterGraph.from_labels([self.labels[v] for v in keep])

    def co_clustered(self) -> np.ndarray:
        """Boolean matrix of intra-cluster pairs (the edge set of the cluster graph)."""
        matrix = self.labels[:, None] == self.labels[None, :]
        np.fill_diagonal(matrix, False)
        return matrix


@dataclass(frozen=True)
class WeightedBipartite:
    """Bipartite graph with nonnegative integer weights; absent pairs weigh 0."""

    left_count: int
    right_count: int
    weight: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.left_count < 0 or self.right_count < 0:
            raise ValueError("Side sizes must be nonnegative")
        for (i, j), w in self.weight.items():
            if not (0 <= i < self.left_count and 0 <= j < self.right_count):
                raise ValueError(f"Weighted pair ({i}, {j}) out of range")
            if w < 0:
                raise ValueError(f"Negative weight {w} on pair ({i}, {j})")

    @classmethod
    def from_matrix(cls, matrix) -> "WeightedBipartite":
        array = np.asarray(matrix, dtype=np.int64)
        if array.ndim != 2:
            array = array.reshape(0, 0)
        weight = {(int(i), int(j)): int(array[i, j]) for i, j in np.argwhere(array)}
        return cls(array.shape[0], array.shape[1], weight)

    def matrix(self) -> np.ndarray:
        array = np.zeros((self.left_count, self.right_count), dtype=np.int64)
        for (i, j), w in self.weight.items():
            array[i, j] = w
        return array


def _best_assignment(weights: np.ndarray) -> Tuple[int, List[Pair]]:
    if weights.size == 0:
        return 0, []
    rows, cols = linear_sum_assignment(weights, maximize=True)
    total = int(weights[rows, cols].sum())
    matched = [(int(r), int(c)) for r, c in zip(rows, cols) if weights[r, c] > 0]
    return total, matched


def max_weight_bipartite_matching(b: WeightedBipartite) -> Tuple[int, FrozenSet[Pair]]:
    """Maximum total weight of a matching and one matching attaining it.

    Zero-weight pairs are left out of the returned matching.
    """
    total, matched = _best_assignment(b.matrix())
    return total, frozenset(matched)


def is_cluster_graph(g: Graph) -> bool:
    """True iff every connected component of g is a clique."""
    if g.n == 0:
        return True
    labels = _component_labels(g.adjacency)
    sizes = np.bincount(labels)
    return bool(np.all(g.degrees() == sizes[labels] - 1))


def find_induced_p3(g: Graph) -> Optional[Tuple[int, int, int]]:
    """Return some induced path u-v-w (u, w non-adjacent), or None."""
    if g.n < 3:
        return None
    a = g.adjacency.astype(np.float64)
    common = a @ a
    mask = (common > 0.5) & ~g.adjacency
    np.fill_diagonal(mask, False)
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    u, w = (int(x) for x in hits[0])
    v = int(np.flatnonzero(g.adjacency[u] & g.adjacency[w])[0])
    return u, v, w


def to_cluster_graph(g: Graph) -> ClusterGraph:
    """Partition of g into its connected components, which must all be cliques."""
    if not is_cluster_graph(g):
        p3 = find_induced_p3(g)
        raise NotClusterGraph(f"Graph contains the induced P3 {p3[0]}-{p3[1]}-{p3[2]}", p3)
    return ClusterGraph(g.n, g.components())


def cluster_to_graph(c: ClusterGraph) -> Graph:
    """Graph whose edges are exactly the intra-cluster pairs of c."""
    return Graph._wrap(c.co_clustered())


def isolated_cliques(g: Graph) -> List[FrozenSet[int]]:
    """Connected components of g that are cliques, ordered by smallest vertex."""
    degrees = g.degrees()
    return [
        component
        for component in g.components()
        if all(degrees[v] == len(component) - 1 for v in component)
    ]


@dataclass(frozen=True, eq=False)
class P3Counts:
    """Per-pair induced-P3 counts of a graph.

    `matrix[u, v]` is the number of vertices w such that {u, v, w} induces a
    P3; for an edge {u, v} the P3 uses that edge, for a non-edge u and v are
    its endpoints.
    """

    matrix: np.ndarray
    vertices: FrozenSet[int]

    def count(self, u: int, v: int) -> int:
        return int(self.matrix[u, v])

    @property
    def counts(self) -> Dict[Pair, int]:
        upper = np.argwhere(np.triu(self.matrix, 1) > 0)
        return {(int(u), int(v)): int(self.matrix[u, v]) for u, v in upper}


def enumerate_p3_pairs(g: Graph) -> P3Counts:
    """Exact induced-P3 counts for every vertex pair, from one matrix product."""
    adjacency = g.adjacency
    # float product goes through BLAS; counts stay far below 2**53
    a = adjacency.astype(np.float64)
    common = np.rint(a @ a).astype(np.int64)
    degrees = g.degrees()
    through_edge = degrees[:, None] + degrees[None, :] - 2 * common - 2
    matrix = np.where(adjacency, through_edge, common)
    np.fill_diagonal(matrix, 0)
    matrix.setflags(write=False)
    vertices = frozenset(int(v) for v in np.flatnonzero((matrix > 0).any(axis=1)))
    return P3Counts(matrix, vertices)


def overlap_matrix(a: ClusterGraph, b: ClusterGraph) -> np.ndarray:
    """Matrix of |A_i ∩ B_j| over the clusters of a (rows) and b (columns)."""
    if a.n != b.n:
        raise SizeMismatch(f"Cluster graphs have {a.n} and {b.n} vertices")
    overlap = np.zeros((len(a), len(b)), dtype=np.int64)
    np.add.at(overlap, (a.labels, b.labels), 1)
    return overlap


def cluster_overlap_bipartite(a: ClusterGraph, b: ClusterGraph) -> WeightedBipartite:
    """Bipartite cluster graph weighted by overlaps."""
    return WeightedBipartite.from_matrix(overlap_matrix(a, b))


def cluster_matching(a: ClusterGraph, b: ClusterGraph) -> List[Tuple[int, int, int]]:
    """Matched cluster index pairs with their overlap, for explanations."""
    bipartite = cluster_overlap_bipartite(a, b)
    _, matched = max_weight_bipartite_matching(bipartite)
    return [(i, j, bipartite.weight[(i, j)]) for i, j in sorted(matched)]


def matching_distance(a: ClusterGraph, b: ClusterGraph) -> int:
    """n minus the maximum overlap weight of a cluster matching."""
    total, _ = _best_assignment(overlap_matrix(a, b))
    return a.n - total


def edge_distance(a: ClusterGraph, b: ClusterGraph) -> int:
    """Size of the symmetric difference of the two intra-cluster edge sets."""
    overlap = overlap_matrix(a, b)
    shared = int((overlap * (overlap - 1) // 2).sum())
    return a.edge_count + b.edge_count - 2 * shared


def symmetric_difference_size(g: Graph, gc: ClusterGraph) -> int:
    """|E(g) ⊕ E(gc)| for an arbitrary graph g and a cluster graph gc."""
    if g.n != gc.n:
        raise SizeMismatch(f"Graph has {g.n} vertices, cluster graph has {gc.n}")
    return int(np.count_nonzero(g.adjacency ^ gc.co_clustered())) // 2
