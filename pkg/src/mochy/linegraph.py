"""Weighted line graph of a hypergraph, plus a budget-bounded neighbor store.

Hyperedges become vertices; two are adjacent iff they share a node, with
edge weight equal to the overlap size. The memoized store recomputes
neighborhoods on demand under a total-entry budget, evicting lowest-degree
hyperedges first (ties broken toward the lower index).
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .hypergraph import Hypergraph


@dataclass(frozen=True)
class LineGraph:
    """Per-hyperedge neighbor maps (adjacent index -> overlap weight)."""

    neighbors: tuple[dict[int, int], ...]
    sorted_neighbors: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    def __post_init__(self):
        if not self.sorted_neighbors:
            object.__setattr__(
                self,
                "sorted_neighbors",
                tuple(tuple(sorted(n)) for n in self.neighbors),
            )

    @property
    def wedge_count(self) -> int:
        return sum(len(n) for n in self.neighbors) // 2

    def degrees(self) -> list[int]:
        return [len(n) for n in self.neighbors]

    def weight(self, i: int, j: int) -> int:
        return self.neighbors[i].get(j, 0)


def hyperedge_neighbors(h: Hypergraph, i: int) -> dict[int, int]:
    """Neighbor map of hyperedge i computed from incidence lists alone."""
    if not 0 <= i < h.num_edges:
        raise IndexError(f"hyperedge index {i} out of range (|E|={h.num_edges})")
    out: dict[int, int] = {}
    for v in h.edges[i]:
        for j in h.incidence[v]:
            if j != i:
                out[j] = out.get(j, 0) + 1
    return out


def hyperedge_degrees(h: Hypergraph, workers: int = 1) -> list[int]:
    """Line-graph degree of every hyperedge, without storing neighbor maps."""

    def degree(i: int) -> int:
        seen: set[int] = set()
        for v in h.edges[i]:
            seen.update(h.incidence[v])
        return len(seen) - 1 if seen else 0

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(degree, range(h.num_edges)))
    return [degree(i) for i in range(h.num_edges)]


def build_line_graph(h: Hypergraph, workers: int = 1) -> LineGraph:
    """Materialize the full weighted line graph.

    Each hyperedge i scans incident edges with larger index, so every
    hyperwedge is accumulated once and mirrored afterwards; the result is
    identical for any worker count.
    """

    def upper_neighbors(i: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in h.edges[i]:
            for j in h.incidence[v]:
                if j > i:
                    out[j] = out.get(j, 0) + 1
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            upper = list(pool.map(upper_neighbors, range(h.num_edges)))
    else:
        upper = [upper_neighbors(i) for i in range(h.num_edges)]

    neighbors: list[dict[int, int]] = [dict(u) for u in upper]
    for i, u in enumerate(upper):
        for j, w in u.items():
            neighbors[j][i] = w
    return LineGraph(neighbors=tuple(neighbors))


def dump_line_graph(lg: LineGraph, out) -> None:
    """CSV rows "i,j,weight" with i < j."""
    out.write("i,j,weight\n")
    for i, nbrs in enumerate(lg.neighbors):
        for j in sorted(nbrs):
            if j > i:
                out.write(f"{i},{j},{nbrs[j]}\n")


class MemoizedNeighborStore:
    """Neighbor maps memoized under a budget of total stored entries.

    The sum of line-graph degrees of memoized hyperedges never exceeds the
    budget. When space is needed, memoized hyperedges are evicted in
    ascending (degree, index) order, skipping pinned indices. A hyperedge
    whose degree exceeds what the budget can ever hold is computed but not
    stored.
    """

    def __init__(self, h: Hypergraph, budget: int, degrees: list[int] | None = None):
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.h = h
        self.budget = budget
        self.degrees = degrees if degrees is not None else hyperedge_degrees(h)
        self.cap = budget
        self.store: dict[int, dict[int, int]] = {}
        self._heap: list[tuple[int, int]] = []  # (degree, index), lazy deletion
        self.recomputations = 0

    def __contains__(self, i: int) -> bool:
        return i in self.store

    def memoized_entries(self) -> int:
        return sum(self.degrees[i] for i in self.store)

    def _evict_one(self, pinned: frozenset[int]) -> bool:
        parked = []
        evicted = False
        while self._heap:
            d, m = heapq.heappop(self._heap)
            if m not in self.store:
                continue  # stale entry
            if m in pinned:
                parked.append((d, m))
                continue
            del self.store[m]
            self.cap += d
            evicted = True
            break
        for item in parked:
            heapq.heappush(self._heap, item)
        return evicted

    def get(self, i: int, pinned: frozenset[int] = frozenset()) -> dict[int, int]:
        """Neighbor map of hyperedge i, memoizing it if the budget allows."""
        hit = self.store.get(i)
        if hit is not None:
            return hit
        nbrs = hyperedge_neighbors(self.h, i)
        self.recomputations += 1
        d = self.degrees[i]
        while self.cap < d:
            if not self._evict_one(pinned):
                return nbrs  # cannot fit: serve without memoizing
        self.store[i] = nbrs
        self.cap -= d
        heapq.heappush(self._heap, (d, i))
        return nbrs

    def evict(self, i: int) -> None:
        """Permanently drop hyperedge i's memoized neighbors, if present."""
        if i in self.store:
            del self.store[i]
            self.cap += self.degrees[i]


def memo_get(
    store: MemoizedNeighborStore, i: int, pinned: frozenset[int] = frozenset()
) -> dict[int, int]:
    return store.get(i, pinned)
