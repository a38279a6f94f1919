"""
Instances built from hardness gadgets, with brute-force deciders for their
source problems and explicit witnesses for yes-sources.

Vertex layouts are fixed so generated files are reproducible:

- 3-Partition: the m big cliques first, then the small cliques in input order.
- X3C: five vertices per set, v1 and v2 followed by the set's elements in
  sorted order.
- Clique: one block of L1 bulk vertices plus the single vertex per vertex of
  g0, then one block of 2*L2 vertices per edge of g0 in sorted order whose
  first half belongs to the smaller endpoint.
- Multicolored clique: one block of 2*ell vertices per vertex of g0, then
  the universal vertex.
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.errors import InvalidSource
from core.graph import ClusterGraph, Graph, symmetric_difference_size
from core.instance import Instance, Measure, Solution, Variant

logger = logging.getLogger(__name__)


def _instance(variant: Variant, measure: Measure, g: Graph, gc: ClusterGraph, k: int, d: int) -> Instance:
    if k < 0 or d < 0:
        raise InvalidSource(f"Source yields negative parameters (k={k}, d={d})")
    inst = Instance(variant, measure, g, gc, k, d)
    logger.info(f"Generated {inst.describe()}")
    return inst


def _blocks(start: int, sizes: Sequence[int]) -> List[range]:
    blocks = []
    for size in sizes:
        blocks.append(range(start, start + size))
        start += size
    return blocks


# 3-Partition -> Completion with edge distance


@dataclass(frozen=True)
class ThreePartitionSource:
    """3m numbers, each strictly between B/4 and B/2, summing to m*B."""

    m: int
    bin_size: int
    numbers: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(int(a) for a in self.numbers))
        if self.m < 1 or self.bin_size < 1:
            raise InvalidSource(f"m and B must be positive (m={self.m}, B={self.bin_size})")
        if len(self.numbers) != 3 * self.m:
            raise InvalidSource(f"Expected {3 * self.m} numbers, got {len(self.numbers)}")
        if sum(self.numbers) != self.m * self.bin_size:
            raise InvalidSource(f"Numbers sum to {sum(self.numbers)}, expected {self.m * self.bin_size}")
        for a in self.numbers:
            if not (4 * a > self.bin_size and 2 * a < self.bin_size):
                raise InvalidSource(f"Number {a} is not strictly between B/4 and B/2 for B={self.bin_size}")

    @property
    def big_size(self) -> int:
        return 4 * (self.m * self.bin_size) ** 2


def _three_partition_layout(src: ThreePartitionSource) -> Tuple[List[range], List[range]]:
    big = _blocks(0, [src.big_size] * src.m)
    small = _blocks(src.m * src.big_size, src.numbers)
    return big, small


def gen_3partition_completion_edge(src: ThreePartitionSource) -> Instance:
    """m big cliques of 4(mB)^2 vertices and one small clique per number; G_c is complete."""
    big, small = _three_partition_layout(src)
    n = src.m * src.big_size + src.m * src.bin_size
    g = Graph.from_cliques(n, big + small)
    gc = ClusterGraph.from_clusters(n, [range(n)] if n else [])
    b = src.bin_size
    k = src.m * src.big_size * b + (src.m * b * b - sum(a * a for a in src.numbers)) // 2
    d = symmetric_difference_size(g, gc) - k
    return _instance(Variant.COMPLETION, Measure.EDGE_DIST, g, gc, k, d)


def find_three_partition(src: ThreePartitionSource) -> Optional[List[Tuple[int, int, int]]]:
    """Index triples each summing to B, or None."""
    numbers = src.numbers

    def search(left: FrozenSet[int]) -> Optional[List[Tuple[int, int, int]]]:
        if not left:
            return []
        first = min(left)
        rest = sorted(left - {first})
        for i, j in itertools.combinations(rest, 2):
            if numbers[first] + numbers[i] + numbers[j] == src.bin_size:
                tail = search(left - {first, i, j})
                if tail is not None:
                    return [(first, i, j)] + tail
        return None

    return search(frozenset(range(len(numbers))))


def three_partition_witness(
    src: ThreePartitionSource, inst: Instance, triples: Optional[Sequence[Sequence[int]]] = None
) -> Optional[Solution]:
    """Merge every big clique with the small cliques of one triple."""
    triples = find_three_partition(src) if triples is None else triples
    if triples is None:
        return None
    big, small = _three_partition_layout(src)
    clusters = [set(block) for block in big]
    for cluster, triple in zip(clusters, triples):
        for index in triple:
            cluster.update(small[index])
    return Solution.from_partition(inst.g, ClusterGraph.from_clusters(inst.n, clusters))


# Exact cover by 3-sets -> Deletion with matching distance


@dataclass(frozen=True)
class X3cSource:
    """Universe of 3q elements and a collection of 3-element subsets."""

    q: int
    universe: Tuple[Hashable, ...]
    sets: Tuple[Tuple[Hashable, ...], ...]

    def __post_init__(self):
        universe = tuple(sorted(self.universe))
        sets = tuple(tuple(sorted(s)) for s in self.sets)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "sets", sets)
        if self.q < 1:
            raise InvalidSource(f"q must be positive, got {self.q}")
        if len(set(universe)) != len(universe) or len(universe) != 3 * self.q:
            raise InvalidSource(f"Universe must hold {3 * self.q} distinct elements")
        members = set(universe)
        for index, s in enumerate(sets):
            if len(set(s)) != 3 or not set(s) <= members:
                raise InvalidSource(f"Set {index} is not a 3-element subset of the universe: {list(s)}")
        if len(sets) < self.q:
            raise InvalidSource(f"{len(sets)} sets cannot cover {3 * self.q} elements")

    @property
    def m(self) -> int:
        return len(self.sets)


def gen_x3c_deletion_matching(src: X3cSource) -> Instance:
    """One 5-clique per set; G_c pairs up v1, v2 and gathers all copies of each element."""
    n = 5 * src.m
    g = Graph.from_cliques(n, _blocks(0, [5] * src.m))
    clusters = [[5 * j, 5 * j + 1] for j in range(src.m)]
    copies: Dict[Hashable, List[int]] = {}
    for j, s in enumerate(src.sets):
        for position, x in enumerate(s):
            copies.setdefault(x, []).append(5 * j + 2 + position)
    clusters.extend(copies[x] for x in src.universe if x in copies)
    gc = ClusterGraph.from_clusters(n, clusters)
    return _instance(Variant.DELETION, Measure.MATCHING_DIST, g, gc, 9 * src.q, 3 * src.m - 3 * src.q)


def find_exact_cover(src: X3cSource) -> Optional[List[int]]:
    """Indices of q sets covering every element exactly once, or None."""
    by_element: Dict[Hashable, List[int]] = {x: [] for x in src.universe}
    for j, s in enumerate(src.sets):
        for x in s:
            by_element[x].append(j)

    def search(uncovered: FrozenSet[Hashable]) -> Optional[List[int]]:
        if not uncovered:
            return []
        x = min(uncovered)
        for j in by_element[x]:
            chosen = set(src.sets[j])
            if chosen <= uncovered:
                tail = search(uncovered - chosen)
                if tail is not None:
                    return [j] + tail
        return None

    return search(frozenset(src.universe))


def x3c_witness(src: X3cSource, inst: Instance, cover: Optional[Sequence[int]] = None) -> Optional[Solution]:
    """Split the clique of every chosen set into {v1, v2} and three singletons."""
    cover = find_exact_cover(src) if cover is None else cover
    if cover is None:
        return None
    chosen = set(cover)
    clusters: List[List[int]] = []
    for j in range(src.m):
        base = 5 * j
        if j in chosen:
            clusters.append([base, base + 1])
            clusters.extend([base + offset] for offset in range(2, 5))
        else:
            clusters.append(list(range(base, base + 5)))
    return Solution.from_partition(inst.g, ClusterGraph.from_clusters(inst.n, clusters))


# Clique -> Editing with edge distance


@dataclass(frozen=True)
class CliqueSource:
    g0: Graph
    ell: int

    def __post_init__(self):
        if self.ell < 3:
            raise InvalidSource(f"The clique gadget needs ell >= 3, got {self.ell}")

    @property
    def bulk_size(self) -> int:
        return self.ell**7 + 1

    @property
    def half_size(self) -> int:
        return self.ell**2

    def budget(self) -> int:
        ell, l1, l2 = self.ell, self.bulk_size, self.half_size
        return ell * l1 + ell * (ell - 1) * l2 + ell * comb(ell - 1, 2) * l2 * l2 + comb(ell, 2) * l2 * l2


@dataclass(frozen=True)
class _CliqueLayout:
    bulk: List[range]
    single: List[int]
    edges: List[Tuple[int, int]]
    halves: List[Tuple[range, range]]
    n: int


def _clique_layout(src: CliqueSource) -> _CliqueLayout:
    l1, l2 = src.bulk_size, src.half_size
    vertex_blocks = _blocks(0, [l1 + 1] * src.g0.n)
    edges = sorted(src.g0.edges)
    edge_blocks = _blocks(src.g0.n * (l1 + 1), [2 * l2] * len(edges))
    return _CliqueLayout(
        bulk=[block[:l1] for block in vertex_blocks],
        single=[block[l1] for block in vertex_blocks],
        edges=edges,
        halves=[(block[:l2], block[l2:]) for block in edge_blocks],
        n=src.g0.n * (l1 + 1) + len(edges) * 2 * l2,
    )


def gen_clique_editing_edge(src: CliqueSource) -> Instance:
    """G is a cluster graph of vertex and edge cliques; k + d = |E(G) ⊕ E(G_c)| holds by construction."""
    layout = _clique_layout(src)
    vertex_cliques = [list(bulk) + [single] for bulk, single in zip(layout.bulk, layout.single)]
    edge_cliques = [list(low) + list(high) for low, high in layout.halves]
    g = Graph.from_cliques(layout.n, vertex_cliques + edge_cliques)

    home: List[List[int]] = [[single] for single in layout.single]
    for (u, v), (low, high) in zip(layout.edges, layout.halves):
        home[u].extend(low)
        home[v].extend(high)
    gc = ClusterGraph.from_clusters(layout.n, [list(bulk) for bulk in layout.bulk if len(bulk)] + home)

    k = src.budget()
    d = symmetric_difference_size(g, gc) - k
    return _instance(Variant.EDITING, Measure.EDGE_DIST, g, gc, k, d)


def find_clique(src: CliqueSource) -> Optional[Tuple[int, ...]]:
    """Smallest ell vertices of the lexicographically first large enough maximal clique."""
    candidates = sorted(sorted(c) for c in nx.find_cliques(src.g0.to_networkx()) if len(c) >= src.ell)
    return tuple(candidates[0][: src.ell]) if candidates else None


def clique_witness(src: CliqueSource, inst: Instance, clique: Optional[Sequence[int]] = None) -> Optional[Solution]:
    """Cut the single vertices and edge cliques of the clique, then regroup them per clique vertex."""
    clique = find_clique(src) if clique is None else clique
    if clique is None:
        return None
    chosen = set(clique)
    layout = _clique_layout(src)
    clusters: List[List[int]] = []
    grouped: Dict[int, List[int]] = {v: [layout.single[v]] for v in chosen}
    for v in range(src.g0.n):
        if v in chosen:
            clusters.append(list(layout.bulk[v]))
        else:
            clusters.append(list(layout.bulk[v]) + [layout.single[v]])
    for (u, v), (low, high) in zip(layout.edges, layout.halves):
        if u in chosen and v in chosen:
            grouped[u].extend(low)
            grouped[v].extend(high)
        else:
            clusters.append(list(low) + list(high))
    clusters.extend(grouped.values())
    return Solution.from_partition(inst.g, ClusterGraph.from_clusters(inst.n, clusters))


# Multicolored clique -> Deletion with edge distance


@dataclass(frozen=True)
class McCliqueSource:
    """Graph with every vertex colored 1..ell."""

    g0: Graph
    coloring: Tuple[int, ...]
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "coloring", tuple(int(c) for c in self.coloring))
        if self.ell < 1:
            raise InvalidSource(f"ell must be positive, got {self.ell}")
        if len(self.coloring) != self.g0.n:
            raise InvalidSource(f"Coloring has {len(self.coloring)} entries for {self.g0.n} vertices")
        for v, color in enumerate(self.coloring):
            if not 1 <= color <= self.ell:
                raise InvalidSource(f"Vertex {v} has color {color} outside 1..{self.ell}")

    def multicolored_edges(self) -> List[Tuple[int, int]]:
        """Edges of g0 whose endpoints differ in color."""
        return sorted((u, v) for u, v in self.g0.edges if self.coloring[u] != self.coloring[v])


def gen_mcclique_deletion_edge(src: McCliqueSource) -> Instance:
    """G_c holds a 2*ell clique per vertex plus the universal vertex; G adds the g0 edges and the universal edges."""
    size = 2 * src.ell
    n = size * src.g0.n + 1
    universal = n - 1
    blocks = _blocks(0, [size] * src.g0.n)

    matrix = np.zeros((n, n), dtype=bool)
    for block in blocks:
        matrix[block.start : block.stop, block.start : block.stop] = True
    for u, v in src.multicolored_edges():
        matrix[blocks[u].start : blocks[u].stop, blocks[v].start : blocks[v].stop] = True
        matrix[blocks[v].start : blocks[v].stop, blocks[u].start : blocks[u].stop] = True
    matrix[universal, :] = True
    matrix[:, universal] = True
    np.fill_diagonal(matrix, False)
    g = Graph.from_adjacency(matrix)
    gc = ClusterGraph.from_clusters(n, [list(block) for block in blocks] + [[universal]])

    d = 2 * src.ell**2 + 4 * src.ell**2 * comb(src.ell, 2)
    k = symmetric_difference_size(g, gc) - d
    return _instance(Variant.DELETION, Measure.EDGE_DIST, g, gc, k, d)


def find_multicolored_clique(src: McCliqueSource) -> Optional[Tuple[int, ...]]:
    """One vertex per color, pairwise adjacent, or None."""
    classes = [[v for v in range(src.g0.n) if src.coloring[v] == color] for color in range(1, src.ell + 1)]
    for choice in itertools.product(*classes):
        if all(src.g0.has_edge(u, v) for u, v in itertools.combinations(choice, 2)):
            return tuple(choice)
    return None


def mcclique_witness(
    src: McCliqueSource, inst: Instance, clique: Optional[Sequence[int]] = None
) -> Optional[Solution]:
    """Merge the clusters of the clique vertices with the universal vertex."""
    clique = find_multicolored_clique(src) if clique is None else clique
    if clique is None:
        return None
    size = 2 * src.ell
    chosen = set(clique)
    merged = [inst.n - 1]
    clusters: List[List[int]] = []
    for v in range(src.g0.n):
        block = list(range(size * v, size * (v + 1)))
        if v in chosen:
            merged.extend(block)
        else:
            clusters.append(block)
    clusters.append(merged)
    return Solution.from_partition(inst.g, ClusterGraph.from_clusters(inst.n, clusters))
