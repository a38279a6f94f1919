"""
Kernelize, then search the kernel exhaustively
"""

import logging
from typing import Optional

from core.config import DEFAULT_ORACLE_CAP
from core.errors import KernelTooLargeForOracle
from core.instance import Instance
from kernel.kernelizer import kernelize
from utils.logger import log_execution_time

from .oracle import oracle_solve
from .result import SCOPE_KERNEL, SCOPE_ORIGINAL, SolveResult

logger = logging.getLogger(__name__)

SOLVER_NAME = "combined"


@log_execution_time
def solve_combined(inst: Instance, cap: Optional[int] = None) -> SolveResult:
    """Works for all six variants; the kernel size is bounded in k and d."""
    cap = DEFAULT_ORACLE_CAP if cap is None else cap
    kres = kernelize(inst)
    if kres.is_no:
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats={"rule": kres.no_reason.value})

    reduced = kres.reduced
    if reduced.n > cap:
        raise KernelTooLargeForOracle(
            f"Kernel has {reduced.n} vertices (bound {kres.vertex_bound()}), oracle cap is {cap}"
        )

    answer = oracle_solve(reduced, cap)
    stats = {"kernel_vertices": reduced.n, **answer.stats}
    if not answer:
        return SolveResult(False, SOLVER_NAME, kernel=kres, stats=stats)

    lifted = kres.lift(answer.solution)
    if lifted is None:
        logger.info("Combined: witness stays at kernel level (a large-clique rule added fresh vertices)")
        return SolveResult(True, SOLVER_NAME, answer.solution, SCOPE_KERNEL, kres, stats)
    return SolveResult(True, SOLVER_NAME, lifted, SCOPE_ORIGINAL, kres, stats)
