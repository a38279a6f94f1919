"""
Multi-Choice Knapsack: pick one item per group, total weight at most W,
total profit at least P
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_NEG = np.iinfo(np.int64).min // 4


@dataclass(frozen=True)
class MckItem:
    weight: int
    profit: int


@dataclass(frozen=True)
class MckInstance:
    """Groups of items, capacity W and profit target P. Profits may be negative."""

    groups: Tuple[Tuple[MckItem, ...], ...]
    capacity: int
    target: int

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError(f"Capacity must be non-negative, got {self.capacity}")
        groups = tuple(tuple(MckItem(*item) if not isinstance(item, MckItem) else item for item in g) for g in self.groups)
        for index, group in enumerate(groups):
            if not group:
                raise ValueError(f"Group {index} is empty")
            if any(item.weight < 0 for item in group):
                raise ValueError(f"Group {index} has an item with negative weight")
        object.__setattr__(self, "groups", groups)

    @property
    def item_count(self) -> int:
        return sum(len(g) for g in self.groups)


@dataclass(frozen=True)
class MckResult:
    feasible: bool
    selection: Optional[Tuple[int, ...]]
    best_profit: Optional[int]
    cells: int

    def __bool__(self) -> bool:
        return self.feasible


def solve_mck(m: MckInstance, track_selection: bool = True) -> MckResult:
    """Dynamic program over (group prefix, exact weight) maximizing profit.

    Runs in O(W * total item count); `cells` counts the relaxations done.
    """
    width = m.capacity + 1
    best = np.full(width, _NEG, dtype=np.int64)
    best[0] = 0
    parents = []
    cells = 0

    for group in m.groups:
        nxt = np.full(width, _NEG, dtype=np.int64)
        choice = np.full(width, -1, dtype=np.int32)
        for j, item in enumerate(group):
            cells += width
            if item.weight >= width:
                continue
            source = best[: width - item.weight]
            candidate = np.where(source > _NEG, source + item.profit, _NEG)
            target = nxt[item.weight:]
            better = candidate > target
            target[better] = candidate[better]
            choice[item.weight:][better] = j
        best = nxt
        if track_selection:
            parents.append(choice)

    reachable = best > _NEG
    if not reachable.any():
        logger.debug("MCK: no selection fits the capacity")
        return MckResult(False, None, None, cells)

    end = int(np.argmax(np.where(reachable, best, _NEG)))
    profit = int(best[end])
    feasible = profit >= m.target
    selection = None
    if feasible and track_selection:
        picks = []
        weight = end
        for group, choice in zip(reversed(m.groups), reversed(parents)):
            j = int(choice[weight])
            picks.append(j)
            weight -= group[j].weight
        selection = tuple(reversed(picks))

    logger.debug(f"MCK: best profit {profit} against target {m.target} ({cells} cells)")
    return MckResult(feasible, selection, profit, cells)


def selection_totals(m: MckInstance, selection: Sequence[int]) -> Tuple[int, int]:
    """(total weight, total profit) of one item index per group."""
    items = [group[j] for group, j in zip(m.groups, selection)]
    return sum(i.weight for i in items), sum(i.profit for i in items)


def brute_force_mck(m: MckInstance) -> MckResult:
    """Reference solver trying every selection."""
    best_profit = None
    best_selection = None
    for selection in itertools.product(*(range(len(g)) for g in m.groups)):
        weight, profit = selection_totals(m, selection)
        if weight <= m.capacity and (best_profit is None or profit > best_profit):
            best_profit, best_selection = profit, selection
    feasible = best_profit is not None and best_profit >= m.target
    return MckResult(feasible, best_selection if feasible else None, best_profit, 0)
