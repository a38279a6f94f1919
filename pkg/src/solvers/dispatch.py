"""
Maps algorithm names to solvers
"""

import logging
from typing import Callable, Dict, Optional

from core.instance import Instance, Measure, Variant

from .combined import solve_combined
from .fpt_completion import fpt_completion_edge_d, fpt_completion_matching_d
from .fpt_deletion import fpt_deletion_edge_k
from .oracle import oracle_solve
from .result import SolveResult

logger = logging.getLogger(__name__)

ALGORITHMS = ("auto", "oracle", "combined", "fpt-k", "fpt-d")

_FPT: Dict[tuple, Callable[[Instance], SolveResult]] = {
    (Variant.DELETION, Measure.EDGE_DIST): fpt_deletion_edge_k,
    (Variant.COMPLETION, Measure.EDGE_DIST): fpt_completion_edge_d,
    (Variant.COMPLETION, Measure.MATCHING_DIST): fpt_completion_matching_d,
}


def _fpt_d(inst: Instance) -> SolveResult:
    if inst.measure is Measure.MATCHING_DIST:
        return fpt_completion_matching_d(inst)
    return fpt_completion_edge_d(inst)


def solve_instance(inst: Instance, algo: str = "auto", cap: Optional[int] = None) -> SolveResult:
    """Run the requested algorithm; `auto` prefers a parameterized solver when one exists."""
    if algo == "auto":
        solver = _FPT.get((inst.variant, inst.measure))
        if solver is None:
            logger.debug(f"No parameterized solver for {inst.variant.value}/{inst.measure.value}, using combined")
            return solve_combined(inst, cap)
        return solver(inst)
    if algo == "oracle":
        return oracle_solve(inst, cap)
    if algo == "combined":
        return solve_combined(inst, cap)
    if algo == "fpt-k":
        return fpt_deletion_edge_k(inst)
    if algo == "fpt-d":
        return _fpt_d(inst)
    raise ValueError(f"Unknown algorithm '{algo}', expected one of {', '.join(ALGORITHMS)}")
