"""
Completion solvers parameterized by the distance bound d, for the edge
distance and for the matching distance.

Both start from the normalized instance where every component of G is a
clique; a solution then only merges whole cliques.
"""

import itertools
import logging
from dataclasses import replace
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from more_itertools import set_partitions

from core.errors import PreconditionViolated, SizeMismatch, WrongVariant
from core.graph import ClusterGraph, Graph, matching_distance, symmetric_difference_size
from core.instance import Instance, Measure, Solution, Variant
from kernel.kernelizer import exhaust
from kernel.rules import RuleId
from utils.logger import log_execution_time

from .four_step import PartTuple, TupleSet, four_step_drive
from .result import SolveResult

logger = logging.getLogger(__name__)

SOLVER_NAME = "fpt-d"


def _require_completion(inst: Instance, measure: Optional[Measure] = None):
    if inst.variant is not Variant.COMPLETION or (measure is not None and inst.measure is not measure):
        wanted = "completion" if measure is None else f"completion with {measure.value} distance"
        raise WrongVariant(f"Expected {wanted}, got {inst.variant.value}/{inst.measure.value}")


def normalize_completion(inst: Instance) -> Instance:
    """Turn every component of G into a clique and charge the insertions to k.

    A negative k in the result marks a NO instance.
    """
    _require_completion(inst)
    components = inst.g.components()
    missing = sum(len(c) * (len(c) - 1) // 2 for c in components) - inst.g.edge_count
    if missing == 0:
        return inst
    logger.debug(f"Normalization inserts {missing} edges")
    return replace(inst, g=Graph.from_cliques(inst.n, components), k=inst.k - missing)


def majority_home(clique: FrozenSet[int], gc: ClusterGraph) -> int:
    """1-based index of the G_c cluster holding a strict majority of `clique`, else 0."""
    overlaps = np.bincount(gc.labels[sorted(clique)], minlength=len(gc))
    best = int(np.argmax(overlaps))
    return best + 1 if 2 * int(overlaps[best]) > len(clique) else 0


def t_map(cliques_of_g: ClusterGraph, gc: ClusterGraph) -> Dict[int, int]:
    """Majority home of every clique, keyed by clique index."""
    if cliques_of_g.n != gc.n:
        raise SizeMismatch(f"Cliques cover {cliques_of_g.n} vertices but G_c has {gc.n}")
    return {i: majority_home(c, gc) for i, c in enumerate(cliques_of_g.clusters)}


def tmap_merge_inequality(c0: FrozenSet[int], others: Sequence[FrozenSet[int]], gc: ClusterGraph) -> Tuple[int, int]:
    """(|E* ∩ E_c|, |E* \\ E_c|) for the edges E* joining c0 to the other cliques.

    Needs c0 to have no majority home, or a home no other clique shares;
    then the first count never exceeds the second.
    """
    home = majority_home(c0, gc)
    seen = set(c0)
    for other in others:
        if seen & other:
            raise PreconditionViolated("Cliques must be disjoint")
        seen |= other
        if home and majority_home(other, gc) == home:
            raise PreconditionViolated(f"Clique {sorted(other)} shares majority home {home} with c0")

    profile = np.bincount(gc.labels[sorted(c0)], minlength=len(gc))
    inside = 0
    total = 0
    for other in others:
        inside += int(profile @ np.bincount(gc.labels[sorted(other)], minlength=len(gc)))
        total += len(c0) * len(other)
    return inside, total - inside


class _CliqueProfiles:
    """Sizes and per-G_c-cluster overlaps of the cliques of a cluster graph G."""

    def __init__(self, inst: Instance, cliques: Sequence[FrozenSet[int]]):
        self.cliques = list(cliques)
        self.sizes = np.array([len(c) for c in cliques], dtype=np.int64)
        self.profiles = np.array(
            [np.bincount(inst.gc.labels[sorted(c)], minlength=len(inst.gc)) for c in cliques], dtype=np.int64
        ).reshape(len(cliques), len(inst.gc))

    def merge_cost(self, indices: Sequence[int]) -> Tuple[int, int]:
        """(insertions, of which inside E_c) for merging the given cliques into one."""
        sizes = self.sizes[list(indices)]
        profile = self.profiles[list(indices)]
        insertions = (int(sizes.sum()) ** 2 - int((sizes**2).sum())) // 2
        total = profile.sum(axis=0)
        inside = (int((total**2).sum()) - int((profile**2).sum())) // 2
        return insertions, inside

    def block(self, indices: Sequence[int]) -> FrozenSet[int]:
        return frozenset().union(*(self.cliques[i] for i in indices))


def _edge_tuples(cliques: _CliqueProfiles, group: List[int], d: int, k: int, part_id: int) -> TupleSet:
    if len(group) >= d + 2:
        # every solution merges a group of this size completely
        layouts: Iterator[List[List[int]]] = iter([[group]])
    else:
        layouts = set_partitions(group)

    tuples = []
    for layout in layouts:
        cost = 0
        gain = 0
        for block in layout:
            insertions, inside = cliques.merge_cost(block)
            cost += insertions
            gain += 2 * inside - insertions
        if cost <= k:
            tuples.append(PartTuple(cost, gain, tuple(cliques.block(block) for block in layout)))
    return TupleSet(part_id, tuple(tuples))


@log_execution_time
def fpt_completion_edge_d(inst: Instance) -> SolveResult:
    """Group cliques by majority home and let MCK pick one merge pattern per group."""
    _require_completion(inst, Measure.EDGE_DIST)
    normalized = normalize_completion(inst)
    kres = exhaust(normalized, (RuleId.RR1_TRIVIAL, RuleId.RR6_LARGE_CLIQUE_EDGE))
    if kres.is_no:
        logger.info(f"fpt-d: NO by {kres.no_reason.value}")
        return SolveResult(False, SOLVER_NAME, kernel=kres)

    reduced = kres.reduced
    cliques = _CliqueProfiles(reduced, reduced.g.components())
    groups: Dict[int, List[int]] = {}
    for index, clique in enumerate(cliques.cliques):
        home = majority_home(clique, reduced.gc)
        if home:
            groups.setdefault(home, []).append(index)

    homes = sorted(groups)
    parts = [cliques.block(groups[h]) for h in homes]
    tuple_sets = [_edge_tuples(cliques, groups[h], reduced.d, reduced.k, i) for i, h in enumerate(homes)]
    target = symmetric_difference_size(reduced.g, reduced.gc) - reduced.d
    stats = {"groups": len(parts), "tuples": sum(len(ts.tuples) for ts in tuple_sets), "target": target}
    if any(not ts.tuples for ts in tuple_sets):
        logger.info(f"fpt-d: NO, a forced merge exceeds k ({stats})")
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats=stats)

    outcome = four_step_drive(parts, tuple_sets, reduced, target)
    if not outcome:
        logger.info(f"fpt-d: NO ({stats})")
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats=stats)

    lifted = kres.lift(outcome.solution)
    logger.info(f"fpt-d: YES ({stats})")
    return SolveResult(True, SOLVER_NAME, Solution.from_partition(inst.g, lifted.gprime), kernel=kres, stats=stats)


def _optional_cliques(contained: List[int], cliques: _CliqueProfiles, d: int) -> Tuple[List[int], List[int]]:
    """Split contained cliques into (forced into the main clique, optionally left out).

    Left-out cliques total at most d vertices, so at most d // x cliques of
    size x can be left out; equal-size cliques are interchangeable.
    """
    forced, optional = [], []
    by_size: Dict[int, List[int]] = {}
    for index in sorted(contained, key=lambda i: min(cliques.cliques[i])):
        by_size.setdefault(int(cliques.sizes[index]), []).append(index)
    for size, members in by_size.items():
        keep = d // size if size <= d else 0
        optional.extend(members[:keep])
        forced.extend(members[keep:])
    return forced, optional


def _exclusions(optional: List[int], sizes: np.ndarray, room: int, start: int = 0) -> Iterator[Tuple[int, ...]]:
    yield ()
    for i in range(start, len(optional)):
        size = int(sizes[optional[i]])
        if size <= room:
            for rest in _exclusions(optional, sizes, room - size, i + 1):
                yield (optional[i],) + rest


def _matching_tuples(
    cliques: _CliqueProfiles, assigned: List[int], contained: List[int], cluster: int, inst: Instance, part_id: int
) -> TupleSet:
    forced, optional = _optional_cliques(contained, cliques, inst.d)
    tuples = []
    for excluded in _exclusions(optional, cliques.sizes, inst.d):
        main = assigned + forced + [i for i in optional if i not in excluded]
        cost, _ = cliques.merge_cost(main) if main else (0, 0)
        if cost > inst.k:
            continue
        profit = int(cliques.profiles[main, cluster].sum()) if main else 0
        blocks = ([cliques.block(main)] if main else []) + [cliques.cliques[i] for i in excluded]
        tuples.append(PartTuple(cost, profit, tuple(blocks)))
    return TupleSet(part_id, tuple(tuples))


@log_execution_time
def fpt_completion_matching_d(inst: Instance) -> SolveResult:
    """Branch on the target cluster of every spanning clique, then solve each branch with MCK."""
    _require_completion(inst, Measure.MATCHING_DIST)
    normalized = normalize_completion(inst)
    if normalized.k < 0 or normalized.d < 0:
        logger.info("fpt-d: NO, normalization exceeds k")
        return SolveResult.no(SOLVER_NAME)

    cliques = _CliqueProfiles(normalized, normalized.g.components())
    spanning: List[int] = []
    contained: Dict[int, List[int]] = {}
    for index in range(len(cliques.cliques)):
        touched = np.flatnonzero(cliques.profiles[index])
        if len(touched) == 1:
            contained.setdefault(int(touched[0]), []).append(index)
        else:
            spanning.append(index)
    if len(spanning) > normalized.d:
        logger.info(f"fpt-d: NO, {len(spanning)} cliques span several G_c clusters, d={normalized.d}")
        return SolveResult.no(SOLVER_NAME, spanning=len(spanning))

    options = [[None] + np.flatnonzero(cliques.profiles[i]).tolist() for i in spanning]
    target = normalized.n - normalized.d
    branches = 0
    for mapping in itertools.product(*options):
        branches += 1
        assigned: Dict[int, List[int]] = {}
        for index, cluster in zip(spanning, mapping):
            if cluster is not None:
                assigned.setdefault(cluster, []).append(index)

        clusters = sorted(set(assigned) | set(contained))
        parts = [cliques.block(assigned.get(c, []) + contained.get(c, [])) for c in clusters]
        tuple_sets = [
            _matching_tuples(cliques, assigned.get(c, []), contained.get(c, []), c, normalized, i)
            for i, c in enumerate(clusters)
        ]
        if any(not ts.tuples for ts in tuple_sets):
            continue

        outcome = four_step_drive(parts, tuple_sets, normalized, target)
        if not outcome:
            continue
        gprime = outcome.solution.gprime
        assert matching_distance(gprime, normalized.gc) <= normalized.n - outcome.profit
        logger.info(f"fpt-d: YES in branch {branches} ({len(spanning)} spanning cliques)")
        return SolveResult(
            True, SOLVER_NAME, Solution.from_partition(inst.g, gprime), stats={"branches": branches, "profit": outcome.profit}
        )

    logger.info(f"fpt-d: NO after {branches} branches")
    return SolveResult.no(SOLVER_NAME, branches=branches)
