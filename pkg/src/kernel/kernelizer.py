"""
Exhaustive application of the reduction rules and lifting of solutions
from a reduced instance back to the input instance
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from core.errors import SizeMismatch
from core.graph import ClusterGraph
from core.instance import Instance, Measure, Solution
from utils.logger import log_execution_time

from .rules import (
    CLASSIC_RULES,
    RuleId,
    RuleStatus,
    TraceEntry,
    apply_first,
    apply_rule,
    large_clique_rule,
    many_cliques_rule,
)

logger = logging.getLogger(__name__)

# removals that leave the removed clique untouched in every solution
_SET_ASIDE_RULES = frozenset({RuleId.RR5_SAME_CLIQUE, RuleId.RR6_LARGE_CLIQUE_EDGE})


def kernel_vertex_bound(measure: Measure, k: int, d: int) -> int:
    """Vertex count guaranteed for an instance no rule applies to."""
    if measure is Measure.MATCHING_DIST:
        return 3 * k * k + 6 * d * k + 4 * d * d + 6 * k + 4 * d
    return 2 * d * k + 2 * d + 3 * k * k + 4 * k


@dataclass(frozen=True)
class KernelResult:
    """Reduced instance (or a definitive NO) plus the rule trace.

    `vertex_map[i]` is the input id of reduced vertex i, or None for a fresh
    vertex. `set_aside` holds the input-id vertex sets removed as cliques
    that stay untouched in every solution.
    """

    original: Instance
    reduced: Optional[Instance]
    no_reason: Optional[RuleId]
    no_message: str
    trace: Tuple[TraceEntry, ...]
    vertex_map: Tuple[Optional[int], ...]
    set_aside: Tuple[FrozenSet[int], ...]

    @property
    def is_no(self) -> bool:
        return self.reduced is None

    @property
    def liftable(self) -> bool:
        """True when reduced solutions translate back to the input instance."""
        return not self.is_no and all(entry.rule is not RuleId.RR6_LARGE_CLIQUE_MATCHING for entry in self.trace)

    def vertex_bound(self) -> Optional[int]:
        if self.reduced is None:
            return None
        return kernel_vertex_bound(self.reduced.measure, self.reduced.k, self.reduced.d)

    def lift(self, sol: Solution) -> Optional[Solution]:
        """Translate a solution of the reduced instance to the input instance."""
        if not self.liftable:
            return None
        if sol.gprime.n != self.reduced.n:
            raise SizeMismatch(f"Solution has {sol.gprime.n} vertices, kernel has {self.reduced.n}")
        clusters = [frozenset(self.vertex_map[v] for v in cluster) for cluster in sol.gprime.clusters]
        clusters.extend(self.set_aside)
        gprime = ClusterGraph.from_clusters(self.original.n, clusters)
        return Solution.from_partition(self.original.g, gprime)


class _Reduction:
    """Mutable bookkeeping for one kernelization run."""

    def __init__(self, inst: Instance):
        self.original = inst
        self.current = inst
        self.trace: List[TraceEntry] = []
        self.vertex_map: List[Optional[int]] = list(range(inst.n))
        self.set_aside: List[FrozenSet[int]] = []
        self.no_reason: Optional[RuleId] = None
        self.no_message = ""

    def exhaust(self, rules: Sequence[RuleId]):
        """Apply the highest-priority applicable rule until none applies."""
        while self.no_reason is None:
            outcome = apply_first(self.current, rules)
            if outcome.status is RuleStatus.NOT_APPLICABLE:
                return
            if outcome.status is RuleStatus.NO:
                self.no_reason = outcome.rule
                self.no_message = outcome.reason
                return
            self._record(outcome.entry)
            self.current = outcome.instance

    def _record(self, entry: TraceEntry):
        removed = set(entry.removed)
        if entry.rule in _SET_ASIDE_RULES:
            self.set_aside.append(frozenset(self.vertex_map[v] for v in entry.removed if self.vertex_map[v] is not None))
        self.vertex_map = [origin for v, origin in enumerate(self.vertex_map) if v not in removed]
        self.vertex_map.extend([None] * len(entry.added))
        self.trace.append(entry)

    def result(self) -> KernelResult:
        reduced = None if self.no_reason is not None else self.current
        return KernelResult(
            original=self.original,
            reduced=reduced,
            no_reason=self.no_reason,
            no_message=self.no_message,
            trace=tuple(self.trace),
            vertex_map=tuple(self.vertex_map),
            set_aside=tuple(self.set_aside),
        )


def exhaust(inst: Instance, rules: Sequence[RuleId]) -> KernelResult:
    """Apply `rules` in priority order until none applies or one answers NO."""
    reduction = _Reduction(inst)
    reduction.exhaust(rules)
    return reduction.result()


@log_execution_time
def kernelize(inst: Instance) -> KernelResult:
    """Reduce `inst` exhaustively.

    Classic rules run first and never become applicable again afterwards;
    same-clique removal is exhausted before every large-clique step; the
    many-cliques check runs last.
    """
    reduction = _Reduction(inst)
    reduction.exhaust(CLASSIC_RULES)
    reduction.exhaust((RuleId.RR1_TRIVIAL, RuleId.RR5_SAME_CLIQUE, large_clique_rule(inst.measure)))
    reduction.exhaust((RuleId.RR1_TRIVIAL, many_cliques_rule(inst.measure)))

    result = reduction.result()
    if result.is_no:
        logger.info(f"Kernelization answered NO via {result.no_reason.value}: {result.no_message}")
    else:
        logger.info(
            f"Kernelized {inst.n} -> {result.reduced.n} vertices "
            f"({len(result.trace)} rule applications, bound {result.vertex_bound()})"
        )
    return result


def replay_trace(inst: Instance, trace: Sequence[TraceEntry]) -> Instance:
    """Re-apply a recorded trace and return the instance it leads to."""
    current = inst
    for step, entry in enumerate(trace):
        outcome = apply_rule(current, entry.rule)
        if not outcome.applied or outcome.entry != entry:
            raise ValueError(f"Trace diverges at step {step} ({entry.rule.value})")
        current = outcome.instance
    return current
