"""
Pruned enumeration of partitions of a vertex set into blocks, with the
number of edge insertions and deletions each partition costs
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.graph import Graph


@dataclass(frozen=True)
class Placement:
    """One partition reached by the search and the edits that realize it."""

    blocks: Tuple[FrozenSet[int], ...]
    insertions: int
    deletions: int

    @property
    def cost(self) -> int:
        return self.insertions + self.deletions


class PartitionSearch:
    """Restricted-growth enumeration over units (vertex groups that stay together).

    Every partition of the units is produced once. Branches whose edit count
    exceeds `limit` are cut; callers may lower `limit` while iterating.
    With `allow_insert=False` only partitions into cliques of G survive, with
    `allow_delete=False` only partitions whose blocks are unions of units
    with no G-edge between different blocks.
    """

    def __init__(
        self,
        g: Graph,
        units: Sequence[Sequence[int]],
        allow_insert: bool = True,
        allow_delete: bool = True,
        limit: Optional[int] = None,
    ):
        self.units = [tuple(sorted(u)) for u in units]
        self.allow_insert = allow_insert
        self.allow_delete = allow_delete
        self.limit = limit if limit is not None else np.iinfo(np.int64).max

        adjacency = g.adjacency.astype(np.int64)
        count = len(self.units)
        self._links = np.zeros((count, count), dtype=np.int64)
        self._inner_missing: List[int] = []
        for i, u in enumerate(self.units):
            rows = adjacency[list(u)]
            for j, w in enumerate(self.units):
                if i != j:
                    self._links[i, j] = rows[:, list(w)].sum()
            size = len(u)
            inner = int(rows[:, list(u)].sum()) // 2
            self._inner_missing.append(size * (size - 1) // 2 - inner)

    def __iter__(self) -> Iterator[Placement]:
        blocks: List[List[int]] = []
        links: List[np.ndarray] = []
        sizes: List[int] = []
        yield from self._place(0, blocks, links, sizes, 0, 0)

    def _place(self, index, blocks, links, sizes, insertions, deletions) -> Iterator[Placement]:
        if index == len(self.units):
            yield Placement(
                tuple(frozenset(v for unit in block for v in self.units[unit]) for block in blocks),
                insertions,
                deletions,
            )
            return

        size = len(self.units[index])
        inner = self._inner_missing[index]
        placed = sum(int(row[index]) for row in links)
        if inner and not self.allow_insert:
            return

        for b in range(len(blocks) + 1):
            if b < len(blocks):
                joined = int(links[b][index])
                added = inner + size * sizes[b] - joined
            else:
                joined = 0
                added = inner
            removed = placed - joined
            if (added and not self.allow_insert) or (removed and not self.allow_delete):
                continue
            if insertions + added + deletions + removed > self.limit:
                continue

            if b < len(blocks):
                blocks[b].append(index)
                links[b] = links[b] + self._links[index]
                sizes[b] += size
                yield from self._place(index + 1, blocks, links, sizes, insertions + added, deletions + removed)
                blocks[b].pop()
                links[b] = links[b] - self._links[index]
                sizes[b] -= size
            else:
                blocks.append([index])
                links.append(self._links[index].copy())
                sizes.append(size)
                yield from self._place(index + 1, blocks, links, sizes, insertions + added, deletions + removed)
                blocks.pop()
                links.pop()
                sizes.pop()


def vertex_units(vertices: Sequence[int]) -> List[Tuple[int]]:
    return [(v,) for v in sorted(vertices)]
