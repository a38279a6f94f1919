"""
Exhaustive ground-truth solver for small instances
"""

import logging
from typing import Optional

from core.config import DEFAULT_ORACLE_CAP
from core.errors import TooLarge
from core.graph import ClusterGraph
from core.instance import Instance, Solution, Variant, measure_distance
from utils.logger import log_execution_time

from .partitions import PartitionSearch, vertex_units
from .result import SolveResult

logger = logging.getLogger(__name__)

SOLVER_NAME = "oracle"


def _search(inst: Instance) -> PartitionSearch:
    if inst.variant is Variant.COMPLETION:
        units = [tuple(c) for c in inst.g.components()]
        return PartitionSearch(inst.g, units, allow_delete=False, limit=inst.k)
    return PartitionSearch(
        inst.g,
        vertex_units(range(inst.n)),
        allow_insert=inst.variant is Variant.EDITING,
        limit=inst.k,
    )


@log_execution_time
def oracle_solve(inst: Instance, cap: Optional[int] = None) -> SolveResult:
    """Try every admissible target partition.

    On Yes the witness minimizes (edit count, distance) lexicographically.
    """
    cap = DEFAULT_ORACLE_CAP if cap is None else cap
    if inst.n > cap:
        raise TooLarge(f"Instance has {inst.n} vertices, oracle cap is {cap}")
    if inst.k < 0 or inst.d < 0:
        return SolveResult.no(SOLVER_NAME, leaves=0)

    search = _search(inst)
    best = None
    leaves = 0
    for placement in search:
        leaves += 1
        gprime = ClusterGraph.from_clusters(inst.n, placement.blocks)
        distance = measure_distance(inst.measure, gprime, inst.gc)
        if distance > inst.d:
            continue
        key = (placement.cost, distance)
        if best is None or key < best[0]:
            best = (key, gprime)
            search.limit = placement.cost

    if best is None:
        logger.info(f"Oracle: NO after {leaves} candidate partitions")
        return SolveResult.no(SOLVER_NAME, leaves=leaves)

    (cost, distance), gprime = best
    logger.info(f"Oracle: YES with {cost} edits at distance {distance} ({leaves} candidates)")
    return SolveResult(
        True,
        SOLVER_NAME,
        Solution.from_partition(inst.g, gprime),
        stats={"leaves": leaves, "edits": cost, "distance": distance},
    )
