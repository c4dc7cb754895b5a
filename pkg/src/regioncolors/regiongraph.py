"""Region graphs: one vertex per region, edges between adjacent regions.

Graphs are built either from an explicit edge list or from a labeled grid
partition (the planar-dual path: cells are the underlying vertices, two
regions are adjacent when any two of their cells touch).  Labels are
canonically renumbered to 0..n-1 in order of first appearance, row-major;
the original labels are kept for output.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class RegionGraph:
    """Simple undirected graph over region indices 0..n-1."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    region_ids: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a region graph needs at least one region")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match region count")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @functools.cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) int64 arrays for the numeric kernels."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for i, nbrs in enumerate(self.adjacency):
            indptr[i + 1] = indptr[i] + len(nbrs)
        indices = np.fromiter(
            (j for nbrs in self.adjacency for j in nbrs), dtype=np.int64,
            count=int(indptr[-1]))
        indptr.flags.writeable = False
        indices.flags.writeable = False
        return indptr, indices

    @functools.cached_property
    def inv_degree(self) -> np.ndarray:
        """1/|N_i| per region, 0 for isolated regions."""
        deg = np.array([len(nbrs) for nbrs in self.adjacency], dtype=float)
        out = np.zeros(self.n)
        np.divide(1.0, deg, out=out, where=deg > 0)
        out.flags.writeable = False
        return out


def _build(n: int, edge_set: set[tuple[int, int]],
           region_ids: Optional[Sequence[int]] = None) -> RegionGraph:
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i, j in edge_set:
        nbrs[i].add(j)
        nbrs[j].add(i)
    return RegionGraph(
        n=n,
        adjacency=tuple(tuple(sorted(s)) for s in nbrs),
        region_ids=None if region_ids is None else tuple(int(r) for r in region_ids),
    )


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> RegionGraph:
    """Build a region graph from explicit edges; duplicates collapse."""
    if n < 1:
        raise ValueError("region count must be at least 1")
    edge_set = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j:
            raise ValueError(f"self-loop on region {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        edge_set.add((min(i, j), max(i, j)))
    return _build(n, edge_set)


@dataclass(frozen=True, eq=False)
class GridPartition:
    """A rectangular grid of non-negative integer region labels."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.ndim != 2 or labels.size == 0:
            raise ValueError("grid labels must form a non-empty 2-D matrix")
        if not np.issubdtype(labels.dtype, np.integer):
            raise ValueError("grid labels must be integers")
        if labels.min() < 0:
            raise ValueError("grid labels must be non-negative")
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

    @property
    def rows(self) -> int:
        return self.labels.shape[0]

    @property
    def cols(self) -> int:
        return self.labels.shape[1]


def from_grid(partition: GridPartition, diagonal: bool = False) -> RegionGraph:
    """Region graph of a labeled grid: one vertex per distinct label, an
    edge wherever two side-adjacent cells (also corner-adjacent when
    ``diagonal``) carry different labels.  Disconnected cells sharing a
    label still map to one vertex."""
    labels = partition.labels
    order = {}
    for lab in labels.ravel():
        if int(lab) not in order:
            order[int(lab)] = len(order)
    index = np.vectorize(order.__getitem__, otypes=[np.int64])(labels)

    shifts = [(0, 1), (1, 0)]
    if diagonal:
        shifts += [(1, 1), (1, -1)]
    edge_set: set[tuple[int, int]] = set()
    for dr, dc in shifts:
        r0, r1 = (0, labels.shape[0] - dr), (dr, labels.shape[0])
        if dc >= 0:
            c0, c1 = (0, labels.shape[1] - dc), (dc, labels.shape[1])
        else:
            c0, c1 = (-dc, labels.shape[1]), (0, labels.shape[1] + dc)
        a = index[r0[0]:r0[1], c0[0]:c0[1]]
        b = index[r1[0]:r1[1], c1[0]:c1[1]]
        diff = a != b
        if diff.any():
            pairs = np.unique(np.stack([np.minimum(a[diff], b[diff]),
                                        np.maximum(a[diff], b[diff])], axis=1), axis=0)
            edge_set.update((int(x), int(y)) for x, y in pairs)
    return _build(len(order), edge_set, region_ids=list(order.keys()))


def degree_stats(graph: RegionGraph) -> tuple[int, int, float]:
    """(min, max, mean) vertex degree."""
    degrees = [len(nbrs) for nbrs in graph.adjacency]
    return min(degrees), max(degrees), sum(degrees) / graph.n
