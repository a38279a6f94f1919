"""
Problem instances of the six Dynamic Cluster Editing variants, solutions
and solution verification
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, Tuple

import numpy as np

from .errors import NotApplicable, SizeMismatch
from .graph import (
    ClusterGraph,
    Graph,
    Pair,
    cluster_to_graph,
    edge_distance,
    is_cluster_graph,
    matching_distance,
    symmetric_difference_size,
    to_cluster_graph,
)

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """Which edge modifications are allowed."""

    EDITING = "editing"
    DELETION = "deletion"
    COMPLETION = "completion"


class Measure(str, Enum):
    """Distance measure between the solution and the target cluster graph."""

    MATCHING_DIST = "matching"
    EDGE_DIST = "edge"


def measure_distance(measure: Measure, a: ClusterGraph, b: ClusterGraph) -> int:
    if measure is Measure.MATCHING_DIST:
        return matching_distance(a, b)
    return edge_distance(a, b)


@dataclass(frozen=True)
class Instance:
    """(variant, measure, G, G_c, k, d). k and d may go negative inside reduction rules."""

    variant: Variant
    measure: Measure
    g: Graph
    gc: ClusterGraph
    k: int
    d: int

    def __post_init__(self):
        if self.g.n != self.gc.n:
            raise SizeMismatch(f"G has {self.g.n} vertices but G_c has {self.gc.n}")

    @property
    def n(self) -> int:
        return self.g.n

    def with_budgets(self, k: int, d: int) -> "Instance":
        return replace(self, k=k, d=d)

    def describe(self) -> str:
        return (
            f"{self.variant.value}/{self.measure.value} n={self.n} "
            f"|E|={self.g.edge_count} clusters={len(self.gc)} k={self.k} d={self.d}"
        )


@dataclass(frozen=True)
class Solution:
    """A target cluster graph G' together with E(G) ⊕ E(G')."""

    gprime: ClusterGraph
    edits: FrozenSet[Pair]

    @classmethod
    def from_partition(cls, g: Graph, gprime: ClusterGraph) -> "Solution":
        if g.n != gprime.n:
            raise SizeMismatch(f"G has {g.n} vertices but G' has {gprime.n}")
        changed = np.argwhere(np.triu(g.adjacency ^ gprime.co_clustered(), 1))
        return cls(gprime, frozenset((int(u), int(v)) for u, v in changed))

    def split_edits(self, g: Graph) -> Tuple[FrozenSet[Pair], FrozenSet[Pair]]:
        """(insertions, deletions) relative to g."""
        insertions = frozenset(e for e in self.edits if not g.has_edge(*e))
        return insertions, self.edits - insertions


class ReasonCode(str, Enum):
    BUDGET_EXCEEDED = "BudgetExceeded"
    DISTANCE_EXCEEDED = "DistanceExceeded"
    FORBIDDEN_EDIT = "ForbiddenEdit"
    EDIT_SET_MISMATCH = "EditSetMismatch"


@dataclass(frozen=True)
class Verification:
    """Outcome of verify_solution; truthy iff the solution is valid."""

    ok: bool
    reasons: Tuple[ReasonCode, ...] = ()
    edit_count: int = 0
    distance: int = 0

    def __bool__(self) -> bool:
        return self.ok


def verify_solution(inst: Instance, sol: Solution) -> Verification:
    """Check budget, distance bound and the variant's allowed edit direction."""
    if sol.gprime.n != inst.n:
        raise SizeMismatch(f"Instance has {inst.n} vertices but G' has {sol.gprime.n}")

    reasons = []
    expected = Solution.from_partition(inst.g, sol.gprime).edits
    if sol.edits != expected:
        reasons.append(ReasonCode.EDIT_SET_MISMATCH)
    if len(expected) > inst.k:
        reasons.append(ReasonCode.BUDGET_EXCEEDED)
    distance = measure_distance(inst.measure, sol.gprime, inst.gc)
    if distance > inst.d:
        reasons.append(ReasonCode.DISTANCE_EXCEEDED)

    insertions = [e for e in expected if not inst.g.has_edge(*e)]
    if inst.variant is Variant.DELETION and insertions:
        reasons.append(ReasonCode.FORBIDDEN_EDIT)
    elif inst.variant is Variant.COMPLETION and len(insertions) < len(expected):
        reasons.append(ReasonCode.FORBIDDEN_EDIT)

    if reasons:
        logger.debug(f"Solution rejected: {[r.value for r in reasons]}")
    return Verification(not reasons, tuple(reasons), len(expected), distance)


def swap_instance(inst: Instance) -> Instance:
    """Exchange the roles of G and G_c and of k and d (editing, edge distance only)."""
    if inst.variant is not Variant.EDITING or inst.measure is not Measure.EDGE_DIST:
        raise NotApplicable("Swapping needs an editing instance with edge distance")
    if not is_cluster_graph(inst.g):
        raise NotApplicable("Swapping needs G to be a cluster graph")
    return Instance(
        variant=inst.variant,
        measure=inst.measure,
        g=cluster_to_graph(inst.gc),
        gc=to_cluster_graph(inst.g),
        k=inst.d,
        d=inst.k,
    )


def is_tight(inst: Instance) -> bool:
    """k + d == |E(G) ⊕ E(G_c)| under the edge distance."""
    return inst.measure is Measure.EDGE_DIST and inst.k + inst.d == symmetric_difference_size(inst.g, inst.gc)


def exact_modification_check(inst: Instance, sol: Solution) -> bool:
    """On a tight instance a valid solution spends exactly k edits, all inside E ⊕ E_c."""
    if not is_tight(inst):
        raise NotApplicable("Instance is not tight (needs edge distance and k + d = |E ⊕ E_c|)")
    verdict = verify_solution(inst, sol)
    if not verdict:
        raise NotApplicable(f"Solution does not verify: {[r.value for r in verdict.reasons]}")

    within = all(inst.g.has_edge(u, v) != (inst.gc.cluster_of[u] == inst.gc.cluster_of[v]) for u, v in sol.edits)
    return verdict.edit_count == inst.k and verdict.distance == inst.d and within
