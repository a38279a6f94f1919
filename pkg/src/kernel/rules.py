"""
Data reduction rules for Dynamic Cluster Editing.

Each rule inspects an instance and either does not apply, proves the
instance infeasible, or returns an equivalent smaller instance together
with a trace entry. Rules assume that every rule earlier in the priority
order is exhausted, which is how the kernelizer drives them.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Optional, Sequence, Tuple

import numpy as np

from core.graph import ClusterGraph, Graph, P3Counts, Pair, enumerate_p3_pairs, isolated_cliques
from core.instance import Instance, Measure, Variant

logger = logging.getLogger(__name__)


class RuleId(str, Enum):
    RR1_TRIVIAL = "RR1_Trivial"
    RR2_HEAVY_EDGE = "RR2_HeavyEdge"
    RR3_HEAVY_NON_EDGE = "RR3_HeavyNonEdge"
    RR4_P3_VERTEX_BOUND = "RR4_P3VertexBound"
    RR5_SAME_CLIQUE = "RR5_SameClique"
    RR6_LARGE_CLIQUE_MATCHING = "RR6_LargeCliqueMatching"
    RR6_LARGE_CLIQUE_EDGE = "RR6_LargeCliqueEdge"
    RR7_MANY_CLIQUES_MATCHING = "RR7_ManyCliquesMatching"
    RR7_MANY_CLIQUES_EDGE = "RR7_ManyCliquesEdge"


class RuleStatus(Enum):
    NOT_APPLICABLE = "not_applicable"
    NO = "no"
    APPLIED = "applied"


@dataclass(frozen=True)
class TraceEntry:
    """One rule application. Vertex ids in `removed` refer to the instance
    before the application, ids in `added` to the instance after it."""

    rule: RuleId
    effect: str
    dk: int = 0
    dd: int = 0
    removed: Tuple[int, ...] = ()
    added: Tuple[int, ...] = ()
    pair: Optional[Pair] = None

    def to_dict(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "rule": self.rule.value,
            "effect": self.effect,
            "dk": self.dk,
            "dd": self.dd,
            "vertices": list(self.removed),
        }
        if self.added:
            record["added"] = list(self.added)
        if self.pair is not None:
            record["pair"] = list(self.pair)
        return record


@dataclass(frozen=True)
class RuleOutcome:
    rule: RuleId
    status: RuleStatus
    instance: Optional[Instance] = None
    entry: Optional[TraceEntry] = None
    reason: str = ""

    @property
    def applied(self) -> bool:
        return self.status is RuleStatus.APPLIED


def _not_applicable(rule: RuleId) -> RuleOutcome:
    return RuleOutcome(rule, RuleStatus.NOT_APPLICABLE)


def _no(rule: RuleId, reason: str) -> RuleOutcome:
    logger.debug(f"{rule.value} answers NO: {reason}")
    return RuleOutcome(rule, RuleStatus.NO, reason=reason)


def _applied(inst: Instance, entry: TraceEntry) -> RuleOutcome:
    logger.debug(f"{entry.rule.value}: {entry.effect}")
    return RuleOutcome(entry.rule, RuleStatus.APPLIED, inst, entry)


def _without(inst: Instance, removed: FrozenSet[int]) -> Tuple[Graph, np.ndarray]:
    keep = [v for v in range(inst.n) if v not in removed]
    return inst.g.induced(keep), inst.gc.labels[keep]


def _heavy_pair(inst: Instance, counts: P3Counts, edge: bool) -> Optional[Pair]:
    """Lexicographically smallest edge (or non-edge) lying in more than k induced P3s."""
    heavy = counts.matrix >= max(inst.k + 1, 1)
    heavy &= inst.g.adjacency if edge else ~inst.g.adjacency
    hits = np.argwhere(np.triu(heavy, 1))
    if hits.size == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def trivial(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    if inst.k < 0 or inst.d < 0:
        return _no(RuleId.RR1_TRIVIAL, f"negative budget or bound (k={inst.k}, d={inst.d})")
    return _not_applicable(RuleId.RR1_TRIVIAL)


def heavy_edge(inst: Instance, counts: P3Counts) -> RuleOutcome:
    rule = RuleId.RR2_HEAVY_EDGE
    found = _heavy_pair(inst, counts, edge=True)
    if found is None:
        return _not_applicable(rule)
    u, v = found
    witnesses = counts.count(u, v)
    if inst.variant is Variant.COMPLETION:
        return _no(rule, f"edge {u}-{v} lies in {witnesses} induced P3s but cannot be deleted")
    reduced = replace(inst, g=inst.g.with_pair_toggled(u, v), k=inst.k - 1)
    return _applied(reduced, TraceEntry(rule, f"deleted edge {u}-{v} ({witnesses} induced P3s)", dk=-1, pair=found))


def heavy_non_edge(inst: Instance, counts: P3Counts) -> RuleOutcome:
    rule = RuleId.RR3_HEAVY_NON_EDGE
    found = _heavy_pair(inst, counts, edge=False)
    if found is None:
        return _not_applicable(rule)
    u, v = found
    witnesses = counts.count(u, v)
    if inst.variant is Variant.DELETION:
        return _no(rule, f"non-edge {u}-{v} lies in {witnesses} induced P3s but cannot be inserted")
    reduced = replace(inst, g=inst.g.with_pair_toggled(u, v), k=inst.k - 1)
    return _applied(reduced, TraceEntry(rule, f"inserted edge {u}-{v} ({witnesses} induced P3s)", dk=-1, pair=found))


def p3_vertex_bound(inst: Instance, counts: P3Counts) -> RuleOutcome:
    limit = inst.k * inst.k + 2 * inst.k
    if len(counts.vertices) > limit:
        return _no(RuleId.RR4_P3_VERTEX_BOUND, f"{len(counts.vertices)} vertices lie in induced P3s, limit {limit}")
    return _not_applicable(RuleId.RR4_P3_VERTEX_BOUND)


def same_clique(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    rule = RuleId.RR5_SAME_CLIQUE
    targets = set(inst.gc.clusters)
    for clique in isolated_cliques(inst.g):
        if clique in targets:
            g, labels = _without(inst, clique)
            reduced = replace(inst, g=g, gc=ClusterGraph.from_labels(labels))
            members = tuple(sorted(clique))
            return _applied(reduced, TraceEntry(rule, f"removed clique {list(members)} shared by G and G_c", removed=members))
    return _not_applicable(rule)


def _first_large_clique(inst: Instance, limit: int) -> Optional[FrozenSet[int]]:
    for clique in isolated_cliques(inst.g):
        if len(clique) > limit:
            return clique
    return None


def large_clique_matching(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    rule = RuleId.RR6_LARGE_CLIQUE_MATCHING
    clique = _first_large_clique(inst, inst.k + 2 * inst.d + 2)
    if clique is None:
        return _not_applicable(rule)

    members = tuple(sorted(clique))
    overlaps = np.bincount(inst.gc.labels[list(members)], minlength=len(inst.gc))
    partner = int(np.argmax(overlaps))
    if overlaps[partner] <= inst.d:
        return _no(rule, f"clique {list(members)} shares at most d={inst.d} vertices with every G_c cluster")

    outside = len(clique) - int(overlaps[partner])
    d = inst.d - outside
    g, labels = _without(inst, clique)
    added: Tuple[int, ...] = ()
    if d >= 0:
        # fresh clique C_d, clustered in G_c together with what is left of the partner cluster
        base = g.n
        size = inst.k + d + 1
        matrix = np.zeros((base + size, base + size), dtype=bool)
        matrix[:base, :base] = g.adjacency
        matrix[base:, base:] = True
        np.fill_diagonal(matrix, False)
        g = Graph.from_adjacency(matrix)
        labels = np.concatenate([labels, np.full(size, partner, dtype=np.int64)])
        added = tuple(range(base, base + size))

    reduced = replace(inst, g=g, gc=ClusterGraph.from_labels(labels), d=d)
    effect = f"removed clique {list(members)} matched to G_c cluster {sorted(inst.gc.clusters[partner])}"
    if added:
        effect += f", added fresh clique of {len(added)} vertices"
    return _applied(reduced, TraceEntry(rule, effect, dd=-outside, removed=members, added=added))


def large_clique_edge(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    rule = RuleId.RR6_LARGE_CLIQUE_EDGE
    clique = _first_large_clique(inst, inst.k + 1)
    if clique is None:
        return _not_applicable(rule)

    members = tuple(sorted(clique))
    inside = np.bincount(inst.gc.labels[list(members)], minlength=len(inst.gc))
    rest = inst.gc.sizes - inside
    size = len(members)
    decrement = (
        inst.gc.edge_count
        + size * (size - 1) // 2
        - 2 * int((inside * (inside - 1) // 2).sum())
        - int((rest * (rest - 1) // 2).sum())
    )
    g, labels = _without(inst, clique)
    reduced = replace(inst, g=g, gc=ClusterGraph.from_labels(labels), d=inst.d - decrement)
    return _applied(reduced, TraceEntry(rule, f"removed clique {list(members)}", dd=-decrement, removed=members))


def _many_cliques(rule: RuleId, inst: Instance) -> RuleOutcome:
    # one edit touches at most two cliques, and every cluster of the solution that
    # is not a G_c cluster costs distance shared by at most two clusters
    limit = 2 * (inst.k + inst.d)
    count = len(isolated_cliques(inst.g))
    if count > limit:
        return _no(rule, f"{count} isolated cliques exceed 2(k+d)={limit}")
    return _not_applicable(rule)


def many_cliques_matching(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    return _many_cliques(RuleId.RR7_MANY_CLIQUES_MATCHING, inst)


def many_cliques_edge(inst: Instance, counts: Optional[P3Counts] = None) -> RuleOutcome:
    return _many_cliques(RuleId.RR7_MANY_CLIQUES_EDGE, inst)


_RULES: Dict[RuleId, Callable[[Instance, Optional[P3Counts]], RuleOutcome]] = {
    RuleId.RR1_TRIVIAL: trivial,
    RuleId.RR2_HEAVY_EDGE: heavy_edge,
    RuleId.RR3_HEAVY_NON_EDGE: heavy_non_edge,
    RuleId.RR4_P3_VERTEX_BOUND: p3_vertex_bound,
    RuleId.RR5_SAME_CLIQUE: same_clique,
    RuleId.RR6_LARGE_CLIQUE_MATCHING: large_clique_matching,
    RuleId.RR6_LARGE_CLIQUE_EDGE: large_clique_edge,
    RuleId.RR7_MANY_CLIQUES_MATCHING: many_cliques_matching,
    RuleId.RR7_MANY_CLIQUES_EDGE: many_cliques_edge,
}

P3_RULES = frozenset({RuleId.RR2_HEAVY_EDGE, RuleId.RR3_HEAVY_NON_EDGE, RuleId.RR4_P3_VERTEX_BOUND})

CLASSIC_RULES = (
    RuleId.RR1_TRIVIAL,
    RuleId.RR2_HEAVY_EDGE,
    RuleId.RR3_HEAVY_NON_EDGE,
    RuleId.RR4_P3_VERTEX_BOUND,
)


def large_clique_rule(measure: Measure) -> RuleId:
    if measure is Measure.MATCHING_DIST:
        return RuleId.RR6_LARGE_CLIQUE_MATCHING
    return RuleId.RR6_LARGE_CLIQUE_EDGE


def many_cliques_rule(measure: Measure) -> RuleId:
    if measure is Measure.MATCHING_DIST:
        return RuleId.RR7_MANY_CLIQUES_MATCHING
    return RuleId.RR7_MANY_CLIQUES_EDGE


def admissible_rules(measure: Measure) -> Tuple[RuleId, ...]:
    """Rules of an instance with this measure, in priority order."""
    return CLASSIC_RULES + (RuleId.RR5_SAME_CLIQUE, large_clique_rule(measure), many_cliques_rule(measure))


def apply_rule(inst: Instance, rule: RuleId, counts: Optional[P3Counts] = None) -> RuleOutcome:
    """Try one rule on `inst`.

    Rules of the other distance measure never apply. `counts` may carry
    precomputed P3 counts of `inst.g`.
    """
    if rule not in admissible_rules(inst.measure):
        return _not_applicable(rule)
    if rule in P3_RULES and counts is None:
        counts = enumerate_p3_pairs(inst.g)
    return _RULES[rule](inst, counts)


def apply_first(inst: Instance, rules: Sequence[RuleId]) -> RuleOutcome:
    """Apply the first rule of `rules` that does not report NOT_APPLICABLE."""
    counts = None
    for rule in rules:
        if rule in P3_RULES and counts is None:
            counts = enumerate_p3_pairs(inst.g)
        outcome = apply_rule(inst, rule, counts)
        if outcome.status is not RuleStatus.NOT_APPLICABLE:
            return outcome
    return _not_applicable(rules[-1])
