"""Motif-instance counting: exact, enumerative, sampling, and on-the-fly.

All engines classify hyperedge triples through the catalog lookup tables and
accumulate integer tallies per motif id; sampling estimators rescale once at
the end, which makes every result bit-identical for any worker count. Each
sample index draws from its own RNG stream derived from (seed, index).
"""

from __future__ import annotations

import math
import random
import warnings
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Callable, Iterable

from .catalog import BINARY, MotifMode, make_classifier
from .hypergraph import Hypergraph
from .linegraph import (
    LineGraph,
    MemoizedNeighborStore,
    hyperedge_degrees,
    hyperedge_neighbors,
)

ALGORITHMS = ("exact", "edge-sample", "wedge-sample", "otf-basic", "otf-advanced")


@dataclass
class CountVector:
    """Per-motif counts (exact integers or rescaled estimates) plus run info."""

    mode: MotifMode
    counts: list[float]
    meta: dict = field(default_factory=dict)

    def __getitem__(self, motif_id: int) -> float:
        return self.counts[motif_id - 1]

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> float:
        return sum(self.counts)

    def nonzero(self) -> dict[int, float]:
        return {t + 1: c for t, c in enumerate(self.counts) if c}


def _stream(seed: int, index: int) -> random.Random:
    # unique integer per (seed, index); Mersenne init hashes it internally
    return random.Random((seed << 64) ^ index)


def _chunks(n: int, workers: int) -> list[range]:
    workers = max(1, min(workers, n)) if n else 1
    bounds = [round(n * w / workers) for w in range(workers + 1)]
    return [range(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def _run_chunks(task: Callable, chunks: list[range], workers: int) -> Iterable:
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, chunks))
    return [task(c) for c in chunks]


def _triple_cards(h: Hypergraph, i: int, j: int, k: int, w_ij: int, w_ik: int, w_jk: int):
    sets = h.edge_sets
    si, sj, sk = sets[i], sets[j], sets[k]
    li, lj, lk = len(si), len(sj), len(sk)
    if li <= lj and li <= lk:
        small, o1, o2 = si, sj, sk
    elif lj <= lk:
        small, o1, o2 = sj, si, sk
    else:
        small, o1, o2 = sk, si, sj
    c7 = sum(1 for v in small if v in o1 and v in o2)
    return (
        (
            li - w_ij - w_ik + c7,
            lj - w_ij - w_jk + c7,
            lk - w_ik - w_jk + c7,
            w_ij - c7,
            w_jk - c7,
            w_ik - c7,
            c7,
        ),
        (li, lj, lk),
    )


# ---------------------------------------------------------------------------
# Exact counting and enumeration


def count_exact(
    h: Hypergraph, lg: LineGraph, mode: MotifMode = BINARY, workers: int = 1
) -> CountVector:
    """Exact per-motif instance counts.

    For every hyperedge e_i and unordered neighbor pair {e_j, e_k}, the triple
    is tallied iff e_j and e_k are disjoint or i is the smallest index, so
    each instance is counted exactly once.
    """
    classifier = make_classifier(mode)
    size = len(mode.catalog())
    neighbors = lg.neighbors
    snbrs = lg.sorted_neighbors

    def scan(chunk: range) -> list[int]:
        counts = [0] * size
        for i in chunk:
            nbrs_i = neighbors[i]
            order = snbrs[i]
            deg = len(order)
            for a in range(deg - 1):
                j = order[a]
                nbrs_j = neighbors[j]
                w_ij = nbrs_i[j]
                counted_if_closed = i < j
                for b in range(a + 1, deg):
                    k = order[b]
                    w_jk = nbrs_j.get(k, 0)
                    if w_jk == 0 or counted_if_closed:
                        cards, sizes = _triple_cards(h, i, j, k, w_ij, nbrs_i[k], w_jk)
                        counts[classifier(cards, sizes) - 1] += 1
        return counts

    chunk_list = _chunks(h.num_edges, workers)
    merged = [0] * size
    for part in _run_chunks(scan, chunk_list, workers):
        merged = [m + p for m, p in zip(merged, part)]
    return CountVector(
        mode=mode,
        counts=[float(c) for c in merged],
        meta={
            "algorithm": "exact",
            "num_edges": h.num_edges,
            "num_wedges": lg.wedge_count,
            "workers": workers,
        },
    )


class EnumerationAborted(RuntimeError):
    """Raised when the enumeration sink fails; carries the partial count."""

    def __init__(self, partial_count: int):
        self.partial_count = partial_count
        super().__init__(f"enumeration sink failed after {partial_count} instances")


def enumerate_instances(
    h: Hypergraph, lg: LineGraph, sink: Callable[[int, int, int, int], None],
    mode: MotifMode = BINARY,
) -> int:
    """Invoke sink(i, j, k, motif_id) exactly once per motif instance.

    Returns the number of instances emitted. A sink exception aborts the
    walk, reporting the partial count.
    """
    classifier = make_classifier(mode)
    neighbors = lg.neighbors
    snbrs = lg.sorted_neighbors
    emitted = 0
    for i in range(h.num_edges):
        nbrs_i = neighbors[i]
        order = snbrs[i]
        deg = len(order)
        for a in range(deg - 1):
            j = order[a]
            nbrs_j = neighbors[j]
            w_ij = nbrs_i[j]
            counted_if_closed = i < j
            for b in range(a + 1, deg):
                k = order[b]
                w_jk = nbrs_j.get(k, 0)
                if w_jk == 0 or counted_if_closed:
                    cards, sizes = _triple_cards(h, i, j, k, w_ij, nbrs_i[k], w_jk)
                    try:
                        sink(i, j, k, classifier(cards, sizes))
                    except Exception as exc:
                        raise EnumerationAborted(emitted) from exc
                    emitted += 1
    return emitted


# ---------------------------------------------------------------------------
# Sampling estimators


def _scan_wedge(h, classifier, counts, i, j, nbrs_i, nbrs_j):
    """Tally every instance containing the hyperwedge {e_i, e_j} once."""
    w_ij = nbrs_i[j]
    for k, w_ik in nbrs_i.items():
        if k != j:
            cards, sizes = _triple_cards(h, i, j, k, w_ij, w_ik, nbrs_j.get(k, 0))
            counts[classifier(cards, sizes) - 1] += 1
    for k, w_jk in nbrs_j.items():
        if k != i and k not in nbrs_i:
            cards, sizes = _triple_cards(h, i, j, k, w_ij, 0, w_jk)
            counts[classifier(cards, sizes) - 1] += 1


def count_sample_hyperedge(
    h: Hypergraph,
    lg: LineGraph,
    s: int,
    seed: int = 0,
    mode: MotifMode = BINARY,
    workers: int = 1,
) -> CountVector:
    """Unbiased estimate from s uniform hyperedge draws (with replacement).

    Each draw tallies every instance containing the drawn hyperedge once;
    final counts are rescaled by |E| / (3s).
    """
    if s < 1:
        raise ValueError("sample count s must be >= 1")
    if h.num_edges < 3:
        raise ValueError("hyperedge sampling needs at least 3 hyperedges")
    classifier = make_classifier(mode)
    size = len(mode.catalog())
    neighbors = lg.neighbors
    num_edges = h.num_edges

    def scan(chunk: range) -> list[int]:
        counts = [0] * size
        for n in chunk:
            i = _stream(seed, n).randrange(num_edges)
            nbrs_i = neighbors[i]
            for j, w_ij in nbrs_i.items():
                nbrs_j = neighbors[j]
                for k, w_ik in nbrs_i.items():
                    if k > j:
                        cards, sizes = _triple_cards(
                            h, i, j, k, w_ij, w_ik, nbrs_j.get(k, 0)
                        )
                        counts[classifier(cards, sizes) - 1] += 1
                for k, w_jk in nbrs_j.items():
                    if k != i and k not in nbrs_i:
                        cards, sizes = _triple_cards(h, i, j, k, w_ij, 0, w_jk)
                        counts[classifier(cards, sizes) - 1] += 1
        return counts

    merged = [0] * size
    for part in _run_chunks(scan, _chunks(s, workers), workers):
        merged = [m + p for m, p in zip(merged, part)]
    scale = num_edges / (3 * s)
    return CountVector(
        mode=mode,
        counts=[c * scale for c in merged],
        meta={
            "algorithm": "edge-sample",
            "num_edges": num_edges,
            "num_wedges": lg.wedge_count,
            "samples": s,
            "seed": seed,
            "workers": workers,
        },
    )


def _rescale_wedge_estimate(counts: list[int], mode: MotifMode, wedges: int, r: int):
    catalog = mode.catalog()
    open_scale = wedges / (2 * r)
    closed_scale = wedges / (3 * r)
    return [
        c * (open_scale if is_open else closed_scale)
        for c, is_open in zip(counts, catalog.open_flags)
    ]


def _wedge_draw(rng: random.Random, prefix: list[int], total: int) -> tuple[int, int]:
    """Uniform hyperwedge via degree-weighted endpoint then neighbor position."""
    m = rng.randrange(total)
    i = bisect_right(prefix, m) - 1
    return i, m - prefix[i]


def count_sample_hyperwedge(
    h: Hypergraph,
    lg: LineGraph,
    r: int,
    seed: int = 0,
    mode: MotifMode = BINARY,
    workers: int = 1,
) -> CountVector:
    """Unbiased estimate from r uniform hyperwedge draws (with replacement).

    Each draw scans the neighbor union of the wedge endpoints; open motifs
    are rescaled by |wedges| / (2r), closed ones by |wedges| / (3r).
    """
    if r < 1:
        raise ValueError("sample count r must be >= 1")
    classifier = make_classifier(mode)
    size = len(mode.catalog())
    degrees = lg.degrees()
    total = sum(degrees)
    wedges = total // 2
    if wedges == 0:
        warnings.warn("hypergraph has no hyperwedges; estimate is all-zero")
        return CountVector(
            mode=mode,
            counts=[0.0] * size,
            meta={"algorithm": "wedge-sample", "num_wedges": 0, "samples": r, "seed": seed},
        )
    prefix = [0, *accumulate(degrees)]
    neighbors = lg.neighbors
    snbrs = lg.sorted_neighbors

    def scan(chunk: range) -> list[int]:
        counts = [0] * size
        for n in chunk:
            i, pos = _wedge_draw(_stream(seed, n), prefix, total)
            j = snbrs[i][pos]
            _scan_wedge(h, classifier, counts, i, j, neighbors[i], neighbors[j])
        return counts

    merged = [0] * size
    for part in _run_chunks(scan, _chunks(r, workers), workers):
        merged = [m + p for m, p in zip(merged, part)]
    return CountVector(
        mode=mode,
        counts=_rescale_wedge_estimate(merged, mode, wedges, r),
        meta={
            "algorithm": "wedge-sample",
            "num_edges": h.num_edges,
            "num_wedges": wedges,
            "samples": r,
            "seed": seed,
            "workers": workers,
        },
    )


def count_otf(
    h: Hypergraph,
    r: int,
    budget: int,
    seed: int = 0,
    variant: str = "basic",
    mode: MotifMode = BINARY,
    workers: int = 1,
) -> CountVector:
    """Hyperwedge-sampling estimate without a precomputed line graph.

    A light pre-pass finds line-graph degrees (hence the wedge count);
    neighborhoods are then computed on demand under the memoization budget.
    The basic variant processes samples in draw order; the advanced variant
    groups wedges by their higher-(degree, index) endpoint, processes groups
    in descending order, and permanently evicts each group's key afterwards.
    Estimates are bit-identical to count_sample_hyperwedge at the same seed.
    """
    if r < 1:
        raise ValueError("sample count r must be >= 1")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if variant not in {"basic", "advanced"}:
        raise ValueError(f"unknown on-the-fly variant {variant!r}")
    classifier = make_classifier(mode)
    size = len(mode.catalog())
    degrees = hyperedge_degrees(h, workers=workers)
    total = sum(degrees)
    wedges = total // 2
    if wedges == 0:
        warnings.warn("hypergraph has no hyperwedges; estimate is all-zero")
        return CountVector(
            mode=mode,
            counts=[0.0] * size,
            meta={"algorithm": f"otf-{variant}", "num_wedges": 0, "samples": r, "seed": seed},
        )
    prefix = [0, *accumulate(degrees)]
    chunk_list = _chunks(r, workers)
    chunk_budget = budget // len(chunk_list) if len(chunk_list) > 1 else budget
    recomputations = [0] * len(chunk_list)

    def scan_basic(chunk: range) -> list[int]:
        counts = [0] * size
        store = MemoizedNeighborStore(h, chunk_budget, degrees)
        for n in chunk:
            i, pos = _wedge_draw(_stream(seed, n), prefix, total)
            pin = frozenset((i,))
            j = sorted(store.get(i, pin))[pos]
            pinned = frozenset((i, j))
            nbrs_i = store.get(i, pinned)
            nbrs_j = store.get(j, pinned)
            _scan_wedge(h, classifier, counts, i, j, nbrs_i, nbrs_j)
        recomputations[chunk_list.index(chunk)] = store.recomputations
        return counts

    def scan_advanced(chunk: range) -> list[int]:
        counts = [0] * size
        store = MemoizedNeighborStore(h, chunk_budget, degrees)
        groups: dict[int, list[tuple[int, int]]] = {}
        for n in chunk:
            i, pos = _wedge_draw(_stream(seed, n), prefix, total)
            j = sorted(hyperedge_neighbors(h, i))[pos]
            key = i if (degrees[i], i) > (degrees[j], j) else j
            groups.setdefault(key, []).append((i, j))
        for key in sorted(groups, key=lambda e: (degrees[e], e), reverse=True):
            for i, j in groups[key]:
                pinned = frozenset((i, j))
                nbrs_i = store.get(i, pinned)
                nbrs_j = store.get(j, pinned)
                _scan_wedge(h, classifier, counts, i, j, nbrs_i, nbrs_j)
            store.evict(key)
        recomputations[chunk_list.index(chunk)] = store.recomputations
        return counts

    scan = scan_basic if variant == "basic" else scan_advanced
    merged = [0] * size
    for part in _run_chunks(scan, chunk_list, workers):
        merged = [m + p for m, p in zip(merged, part)]
    return CountVector(
        mode=mode,
        counts=_rescale_wedge_estimate(merged, mode, wedges, r),
        meta={
            "algorithm": f"otf-{variant}",
            "num_edges": h.num_edges,
            "num_wedges": wedges,
            "samples": r,
            "seed": seed,
            "workers": workers,
            "budget": budget,
            "recomputations": sum(recomputations),
        },
    )


# ---------------------------------------------------------------------------
# Estimator-quality calculators


class InstanceCapExceeded(RuntimeError):
    """pair_overlap_stats refused to enumerate past its instance cap."""


@dataclass
class PairOverlapStats:
    """Per-motif unordered instance-pair tallies.

    p[t] = (p0, p1, p2): pairs of motif-t instances sharing 0/1/2 hyperedges.
    q[t] = (q0, q1): pairs sharing 0/1 hyperwedges.
    """

    mode: MotifMode
    counts: dict[int, int]
    p: dict[int, tuple[int, int, int]]
    q: dict[int, tuple[int, int]]


def pair_overlap_stats(
    h: Hypergraph,
    lg: LineGraph,
    mode: MotifMode = BINARY,
    max_instances: int = 100_000,
) -> PairOverlapStats:
    """Brute-force overlap statistics for variance validation.

    Enumerates all instances and all same-motif instance pairs; refuses when
    the instance count exceeds max_instances.
    """
    by_motif: dict[int, list[tuple[int, int, int]]] = {}
    seen = 0

    def sink(i, j, k, t):
        nonlocal seen
        seen += 1
        if seen > max_instances:
            raise InstanceCapExceeded(
                f"more than {max_instances} instances; raise max_instances to proceed"
            )
        by_motif.setdefault(t, []).append((i, j, k))

    try:
        enumerate_instances(h, lg, sink, mode)
    except EnumerationAborted as exc:
        raise exc.__cause__ from None
    p = {}
    q = {}
    for t, triples in by_motif.items():
        p_l = [0, 0, 0]
        q_n = [0, 0]
        tsets = [frozenset(tr) for tr in triples]
        for x in range(len(tsets)):
            for y in range(x + 1, len(tsets)):
                shared = tsets[x] & tsets[y]
                l = len(shared)
                p_l[l] += 1
                if l == 2:
                    a, b = sorted(shared)
                    q_n[1 if lg.weight(a, b) else 0] += 1
                else:
                    q_n[0] += 1
        p[t] = tuple(p_l)
        q[t] = tuple(q_n)
    return PairOverlapStats(
        mode=mode, counts={t: len(v) for t, v in by_motif.items()}, p=p, q=q
    )


def estimator_variance(
    count: float,
    stats: PairOverlapStats,
    motif_id: int,
    samples: int,
    population: int,
    estimator: str,
) -> float:
    """Closed-form variance of the requested estimator for one motif.

    The pair sums use ordered instance pairs, i.e. twice the unordered
    tallies held by PairOverlapStats.
    """
    if estimator not in {"edge", "wedge"}:
        raise ValueError(f"unknown estimator {estimator!r}")
    if samples < 1:
        raise ValueError("sample count must be >= 1")
    if motif_id in stats.counts and stats.counts[motif_id] != count:
        raise ValueError(
            f"count {count} disagrees with enumerated count {stats.counts[motif_id]}"
        )
    if count == 0:
        return 0.0
    if estimator == "edge":
        pairs = stats.p.get(motif_id, (0, 0, 0))
        var = count * (population - 3) / (3 * samples)
        var += sum(
            2 * p_l * (l * population - 9) for l, p_l in enumerate(pairs)
        ) / (9 * samples)
        return var
    pairs = stats.q.get(motif_id, (0, 0))
    if stats.mode.catalog().is_open(motif_id):
        var = count * (population - 2) / (2 * samples)
        var += sum(
            2 * q_n * (n * population - 4) for n, q_n in enumerate(pairs)
        ) / (4 * samples)
    else:
        var = count * (population - 3) / (3 * samples)
        var += sum(
            2 * q_n * (n * population - 9) for n, q_n in enumerate(pairs)
        ) / (9 * samples)
    return var


def recommend_samples(
    epsilon: float,
    delta: float,
    d_max: int,
    count: float,
    population: int,
    estimator: str,
    is_open: bool = False,
) -> int:
    """Samples sufficient for a relative-error concentration guarantee.

    Returns one more than the ceiling of the Hoeffding-based bound; the edge
    estimator squares d_max inside the ratio, the wedge estimator does not,
    and open motifs enjoy a 1/8 constant instead of 1/18.
    """
    if epsilon <= 0 or delta <= 0:
        raise ValueError("epsilon and delta must be positive")
    if count <= 0:
        raise ValueError("bound undefined for motifs with zero instances")
    if estimator not in {"edge", "wedge"}:
        raise ValueError(f"unknown estimator {estimator!r}")
    log_term = math.log(2 / delta)
    if estimator == "edge":
        ratio = population * d_max * d_max / count
        bound = ratio * ratio * log_term / (18 * epsilon * epsilon)
    else:
        ratio = population * d_max / count
        constant = 8 if is_open else 18
        bound = ratio * ratio * log_term / (constant * epsilon * epsilon)
    return math.ceil(bound) + 1
