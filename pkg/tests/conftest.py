"""Shared fixtures and independent oracles.

The oracles here recompute everything from raw sets with no access to the
library's line graph, inclusion-exclusion shortcuts, or permutation tables,
so they can vouch for the counting path end to end.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from mochy import Hypergraph, enumerate_catalog, from_edge_sets


def oracle_regions(a: frozenset, b: frozenset, c: frozenset) -> tuple[int, ...]:
    """Region cardinalities by direct set arithmetic, in catalog order."""
    return (
        len(a - b - c),
        len(b - c - a),
        len(c - a - b),
        len((a & b) - c),
        len((b & c) - a),
        len((c & a) - b),
        len(a & b & c),
    )


def oracle_connected(a: frozenset, b: frozenset, c: frozenset) -> bool:
    overlaps = [bool(a & b), bool(b & c), bool(c & a)]
    return sum(overlaps) >= 2


def oracle_pattern(a, b, c, state_of=lambda card: 1 if card else 0):
    """Canonical state vector, minimized over explicit set orderings."""
    return min(
        tuple(state_of(card) for card in oracle_regions(x, y, z))
        for x, y, z in permutations((a, b, c))
    )


def oracle_ternary_state(theta: int):
    return lambda card: 0 if card == 0 else (1 if card <= theta else 2)


def oracle_counts(h: Hypergraph, state_of=lambda card: 1 if card else 0):
    """Naive O(|E|^3) per-pattern instance counts over connected triples."""
    out: dict[tuple[int, ...], int] = {}
    sets = h.edge_sets
    for x, y, z in combinations(range(h.num_edges), 3):
        a, b, c = sets[x], sets[y], sets[z]
        if oracle_connected(a, b, c):
            pat = oracle_pattern(a, b, c, state_of)
            out[pat] = out.get(pat, 0) + 1
    return out


def oracle_count_vector(h: Hypergraph, states: int = 2, theta: int = 1):
    """Naive counts arranged per catalog id."""
    catalog = enumerate_catalog(3, states)
    state_of = (
        (lambda card: 1 if card else 0) if states == 2 else oracle_ternary_state(theta)
    )
    by_pattern = oracle_counts(h, state_of)
    index = {p: t for t, p in zip(catalog.ids, catalog.patterns)}
    counts = [0] * len(catalog)
    for pat, n in by_pattern.items():
        counts[index[pat] - 1] = n
    return counts


def random_hypergraph(
    rng: random.Random,
    max_nodes: int = 20,
    max_edges: int = 15,
    max_size: int = 6,
    min_edges: int = 3,
) -> Hypergraph:
    """Small random hypergraph; duplicate member sets are retried."""
    num_nodes = rng.randint(4, max_nodes)
    target = rng.randint(min_edges, max_edges)
    edges: set[frozenset[int]] = set()
    attempts = 0
    while len(edges) < target and attempts < 50 * target:
        attempts += 1
        size = rng.randint(1, min(max_size, num_nodes))
        edges.add(frozenset(rng.sample(range(num_nodes), size)))
    return from_edge_sets(sorted(edges, key=sorted))


@pytest.fixture
def chain3() -> Hypergraph:
    """Three overlapping hyperedges forming one closed instance."""
    return from_edge_sets([{1, 2, 3}, {2, 3, 4}, {3, 4, 5}])


@pytest.fixture
def star4() -> Hypergraph:
    """Four hyperedges sharing exactly one node: 4 instances of one motif."""
    return from_edge_sets([{0, 1}, {0, 2}, {0, 3}, {0, 4}])


@pytest.fixture
def disjoint3() -> Hypergraph:
    return from_edge_sets([{0, 1}, {2, 3}, {4, 5}])


# Frozen 12-edge hypergraph used by the estimator statistics tests: varied
# sizes and overlaps, several motifs populated, no isolated hyperedges.
TWELVE_EDGES = [
    {0, 1, 2, 3},
    {2, 3, 4},
    {4, 5, 6, 7},
    {1, 4, 8},
    {8, 9},
    {0, 9, 10},
    {3, 6, 10, 11},
    {5, 11},
    {7, 8, 11},
    {0, 2, 5, 9},
    {1, 6, 9, 11},
    {10, 11},
]


@pytest.fixture
def twelve() -> Hypergraph:
    return from_edge_sets(TWELVE_EDGES)
