"""
Part-wise solving through Multi-Choice Knapsack.

The graph is split into parts with no G-edge between them; each part offers
a set of local modifications, tagged with their edit cost and their gain
towards the distance bound. One modification per part is chosen by MCK
with capacity k and profit target P, and the chosen local partitions are
assembled into a global cluster graph.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import MalformedParts
from core.graph import ClusterGraph
from core.instance import Instance, Solution

from .mck import MckInstance, MckItem, MckResult, solve_mck

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartTuple:
    """A local modification: its cost, its gain and the resulting partition of the part."""

    cost: int
    gain: int
    blocks: Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class TupleSet:
    part_id: int
    tuples: Tuple[PartTuple, ...]


@dataclass(frozen=True)
class FourStepOutcome:
    yes: bool
    solution: Optional[Solution]
    profit: Optional[int]
    selection: Optional[Tuple[int, ...]]
    mck: MckResult

    def __bool__(self) -> bool:
        return self.yes


def local_edit_count(inst: Instance, part: FrozenSet[int], blocks: Sequence[FrozenSet[int]]) -> int:
    """Edits inside `part` needed to turn G[part] into the given blocks."""
    members = sorted(part)
    index = {v: i for i, v in enumerate(members)}
    labels = np.empty(len(members), dtype=np.int64)
    for b, block in enumerate(blocks):
        for v in block:
            labels[index[v]] = b
    together = labels[:, None] == labels[None, :]
    sub = inst.g.adjacency[np.ix_(members, members)]
    return int(np.triu(sub ^ together, 1).sum())


def _check_parts(inst: Instance, parts: Sequence[FrozenSet[int]]) -> np.ndarray:
    owner = np.full(inst.n, -1, dtype=np.int64)
    for p, part in enumerate(parts):
        for v in part:
            if owner[v] != -1:
                raise MalformedParts(f"Vertex {v} lies in parts {owner[v]} and {p}")
            owner[v] = p
    rows, cols = np.nonzero(np.triu(inst.g.adjacency, 1))
    crossing = (owner[rows] != owner[cols]) & ((owner[rows] != -1) | (owner[cols] != -1))
    if crossing.any():
        u, v = int(rows[crossing][0]), int(cols[crossing][0])
        raise MalformedParts(f"Edge ({u}, {v}) crosses parts {owner[u]} and {owner[v]}")
    return owner


def _check_tuples(inst: Instance, part: FrozenSet[int], tuple_set: TupleSet):
    if not tuple_set.tuples:
        raise MalformedParts(f"Part {tuple_set.part_id} offers no modification")
    for t in tuple_set.tuples:
        covered = [v for block in t.blocks for v in block]
        if len(covered) != len(part) or set(covered) != part:
            raise MalformedParts(f"A tuple of part {tuple_set.part_id} does not partition the part")
        if local_edit_count(inst, part, t.blocks) != t.cost:
            raise MalformedParts(f"A tuple of part {tuple_set.part_id} misstates its cost")


def four_step_drive(
    parts: Sequence[FrozenSet[int]],
    tuple_sets: Sequence[TupleSet],
    inst: Instance,
    target: int,
) -> FourStepOutcome:
    """Select one tuple per part with total cost ≤ k and total gain ≥ target.

    Vertices outside every part keep their G-components as clusters.
    """
    parts = [frozenset(p) for p in parts]
    if len(parts) != len(tuple_sets):
        raise MalformedParts(f"{len(parts)} parts but {len(tuple_sets)} tuple sets")
    owner = _check_parts(inst, parts)
    for part, tuple_set in zip(parts, tuple_sets):
        _check_tuples(inst, part, tuple_set)

    if inst.k < 0:
        empty = MckResult(False, None, None, 0)
        return FourStepOutcome(False, None, None, None, empty)

    mck = MckInstance(
        groups=tuple(tuple(MckItem(t.cost, t.gain) for t in ts.tuples) for ts in tuple_sets),
        capacity=inst.k,
        target=target,
    )
    result = solve_mck(mck, track_selection=True)
    logger.debug(f"Four-step: {len(parts)} parts, {mck.item_count} tuples, target {target}, best {result.best_profit}")
    if not result.feasible:
        return FourStepOutcome(False, None, result.best_profit, None, result)

    clusters: List[FrozenSet[int]] = []
    for ts, j in zip(tuple_sets, result.selection):
        clusters.extend(ts.tuples[j].blocks)
    outside = np.flatnonzero(owner == -1)
    if outside.size:
        clusters.extend(_outside_components(inst, outside))

    gprime = ClusterGraph.from_clusters(inst.n, clusters)
    solution = Solution.from_partition(inst.g, gprime)
    return FourStepOutcome(True, solution, result.best_profit, result.selection, result)


def _outside_components(inst: Instance, outside: np.ndarray) -> List[FrozenSet[int]]:
    keep = set(outside.tolist())
    return [c for c in inst.g.components() if c <= keep]
