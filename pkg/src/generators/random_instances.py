"""
Seeded random instances
"""

import logging
import random
from typing import List, Optional

import networkx as nx

from core.config import DEFAULT_SEED
from core.graph import ClusterGraph, Graph, cluster_to_graph
from core.instance import Instance, Measure, Variant

logger = logging.getLogger(__name__)


def random_partition(n: int, rng: random.Random) -> ClusterGraph:
    """Partition 0..n-1 by drawing each vertex a label in 0..n-1."""
    labels: List[int] = [rng.randrange(n) for _ in range(n)]
    return ClusterGraph.from_labels(labels)


def gen_random(
    n: int,
    edge_prob: float,
    variant: Variant,
    measure: Measure,
    k: int,
    d: int,
    seed: Optional[int] = None,
    cluster_input: bool = False,
) -> Instance:
    """Erdős–Rényi G (or a random cluster graph) and a random partition as G_c."""
    if not 0 <= edge_prob <= 1:
        raise ValueError(f"Edge probability must lie in [0, 1], got {edge_prob}")
    seed = DEFAULT_SEED if seed is None else seed
    rng = random.Random(seed)

    if cluster_input:
        g = cluster_to_graph(random_partition(n, rng))
    else:
        g = Graph.from_networkx(nx.gnp_random_graph(n, edge_prob, seed=rng.randrange(2**32)))
    gc = random_partition(n, rng)
    inst = Instance(Variant(variant), Measure(measure), g, gc, k, d)
    logger.debug(f"Random instance (seed {seed}): {inst.describe()}")
    return inst
