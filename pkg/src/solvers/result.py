"""
Common answer type of all decision procedures
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from core.instance import Solution
from kernel.kernelizer import KernelResult

SCOPE_ORIGINAL = "original"
SCOPE_KERNEL = "kernel"


@dataclass(frozen=True)
class SolveResult:
    """Yes/No answer; on Yes a witness for the input instance or, when it cannot be lifted, for the kernel."""

    yes: bool
    solver: str
    solution: Optional[Solution] = None
    scope: str = SCOPE_ORIGINAL
    kernel: Optional[KernelResult] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.yes

    @classmethod
    def no(cls, solver: str, **stats) -> "SolveResult":
        return cls(False, solver, stats=stats)
