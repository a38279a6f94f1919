"""
Deletion with the edge distance, parameterized by k
"""

import logging
from typing import FrozenSet, List, Sequence

import numpy as np

from core.errors import WrongVariant
from core.graph import symmetric_difference_size
from core.instance import Instance, Measure, Variant
from kernel.kernelizer import exhaust
from kernel.rules import CLASSIC_RULES
from utils.logger import log_execution_time

from .four_step import PartTuple, TupleSet, four_step_drive
from .partitions import PartitionSearch, vertex_units
from .result import SolveResult

logger = logging.getLogger(__name__)

SOLVER_NAME = "fpt-k"


def _deletion_gain(inst: Instance, members: List[int], blocks: Sequence[FrozenSet[int]]) -> int:
    """|E' \\ E_c| - |E' ∩ E_c| for the edges E' the blocks cut inside `members`."""
    index = {v: i for i, v in enumerate(members)}
    labels = np.empty(len(members), dtype=np.int64)
    for b, block in enumerate(blocks):
        for v in block:
            labels[index[v]] = b
    cut = np.triu(inst.g.adjacency[np.ix_(members, members)] & (labels[:, None] != labels[None, :]), 1)
    in_target = inst.gc.co_clustered()[np.ix_(members, members)]
    inside = int((cut & in_target).sum())
    return int(cut.sum()) - 2 * inside


def _deletion_tuples(inst: Instance, part: FrozenSet[int], part_id: int) -> TupleSet:
    members = sorted(part)
    search = PartitionSearch(inst.g, vertex_units(members), allow_insert=False, limit=inst.k)
    tuples = tuple(
        PartTuple(placement.deletions, _deletion_gain(inst, members, placement.blocks), placement.blocks)
        for placement in search
    )
    return TupleSet(part_id, tuples)


def split_parts(inst: Instance) -> List[FrozenSet[int]]:
    """All non-clique components as one part, then every isolated clique as its own part."""
    cliques = []
    rest = set()
    for component in inst.g.components():
        members = list(component)
        size = len(members)
        if int(inst.g.adjacency[np.ix_(members, members)].sum()) == size * (size - 1):
            cliques.append(component)
        else:
            rest |= component
    return ([frozenset(rest)] if rest else []) + cliques


@log_execution_time
def fpt_deletion_edge_k(inst: Instance) -> SolveResult:
    """Classic rules, then one MCK group per part with every cluster graph reachable by ≤ k deletions."""
    if inst.variant is not Variant.DELETION or inst.measure is not Measure.EDGE_DIST:
        raise WrongVariant(f"fpt-k handles deletion with edge distance, got {inst.variant.value}/{inst.measure.value}")

    kres = exhaust(inst, CLASSIC_RULES)
    if kres.is_no:
        logger.info(f"fpt-k: NO by {kres.no_reason.value}")
        return SolveResult(False, SOLVER_NAME, kernel=kres)

    reduced = kres.reduced
    parts = split_parts(reduced)
    tuple_sets = [_deletion_tuples(reduced, part, i) for i, part in enumerate(parts)]
    target = symmetric_difference_size(reduced.g, reduced.gc) - reduced.d
    stats = {"parts": len(parts), "tuples": sum(len(ts.tuples) for ts in tuple_sets), "target": target}
    if any(not ts.tuples for ts in tuple_sets):
        logger.info("fpt-k: NO (a part cannot become a cluster graph within k deletions)")
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats=stats)

    outcome = four_step_drive(parts, tuple_sets, reduced, target)
    if not outcome:
        logger.info(f"fpt-k: NO ({stats})")
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats=stats)

    logger.info(f"fpt-k: YES ({stats})")
    return SolveResult(True, SOLVER_NAME, kres.lift(outcome.solution), kernel=kres, stats=stats)
