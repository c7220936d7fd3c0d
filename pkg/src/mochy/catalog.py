"""Canonical motif catalogs and triple classification.

An overlap pattern of three connected hyperedges (a, b, c) is described by
the seven intersection-region cardinalities, in this fixed order:

    0: a \\ b \\ c      (only a)
    1: b \\ c \\ a      (only b)
    2: c \\ a \\ b      (only c)
    3: a & b \\ c
    4: b & c \\ a
    5: c & a \\ b
    6: a & b & c

Mapping each region to a small number of states (2 for the binary motifs,
3 for the ternary ones) and reducing modulo hyperedge relabeling yields the
canonical pattern catalogs: 26 binary and 431 ternary patterns for triples,
2 binary patterns for pairs, 1853 for quadruples. Catalog ids are 1-based
positions in the lexicographically sorted list of canonical vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

SUPPORTED = {(2, 2), (3, 2), (3, 3), (4, 2)}

# Region order for triples matches the module docstring; for other arities
# regions are the nonempty position subsets sorted by (size, members).
_TRIPLE_SUBSETS = ((0,), (1,), (2,), (0, 1), (1, 2), (0, 2), (0, 1, 2))


@lru_cache(maxsize=None)
def region_subsets(k: int) -> tuple[tuple[int, ...], ...]:
    """Covering-position subsets for the 2^k - 1 regions of a k-edge pattern."""
    if k == 3:
        return _TRIPLE_SUBSETS
    subsets = []
    for size in range(1, k + 1):
        subsets.extend(itertools.combinations(range(k), size))
    return tuple(subsets)


@lru_cache(maxsize=None)
def _perm_tables(k: int) -> tuple[tuple[int, ...], ...]:
    """For each relabeling of the k hyperedges, the induced region index map.

    Applying table t to vector v gives w with w[r] = v[t[r]].
    """
    subsets = region_subsets(k)
    index_of = {frozenset(s): r for r, s in enumerate(subsets)}
    tables = []
    for perm in itertools.permutations(range(k)):
        tables.append(
            tuple(index_of[frozenset(perm[x] for x in s)] for s in subsets)
        )
    return tuple(tables)


def canonicalize(pattern: Sequence[int], k: int = 3) -> tuple[int, ...]:
    """Lexicographic minimum of the pattern over all k! hyperedge relabelings."""
    if len(pattern) != (1 << k) - 1:
        raise ValueError(f"pattern length {len(pattern)} does not match k={k}")
    p = tuple(pattern)
    return min(tuple(p[t[r]] for r in range(len(p))) for t in _perm_tables(k))


def is_valid_pattern(pattern: Sequence[int], k: int = 3) -> bool:
    """True iff the pattern can arise from k distinct, connected, non-empty
    hyperedges: every edge covers a nonzero region, the edge adjacency graph
    is connected, and every edge pair is distinguished by a nonzero region.
    """
    if k not in {2, 3, 4}:
        raise ValueError(f"unsupported arity k={k}")
    if len(pattern) != (1 << k) - 1:
        raise ValueError(f"pattern length {len(pattern)} does not match k={k}")
    subsets = region_subsets(k)
    nonzero = [s for s, state in zip(subsets, pattern) if state != 0]
    for x in range(k):
        if not any(x in s for s in nonzero):
            return False  # empty hyperedge
    for x, y in itertools.combinations(range(k), 2):
        if not any((x in s) != (y in s) for s in nonzero):
            return False  # the two hyperedges would be identical sets
    adjacent = {x: set() for x in range(k)}
    for s in nonzero:
        for x, y in itertools.combinations(s, 2):
            adjacent[x].add(y)
            adjacent[y].add(x)
    seen = {0}
    stack = [0]
    while stack:
        for y in adjacent[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == k


def _pair_disjoint(pattern: Sequence[int], subsets, x: int, y: int) -> bool:
    return not any(
        state != 0 for s, state in zip(subsets, pattern) if x in s and y in s
    )


@dataclass(frozen=True)
class MotifCatalog:
    """Canonical pattern list for (arity, states) with stable 1-based ids."""

    arity: int
    states: int
    patterns: tuple[tuple[int, ...], ...]
    open_flags: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.patterns)

    @property
    def ids(self) -> range:
        return range(1, len(self.patterns) + 1)

    def id_of(self, pattern: Sequence[int]) -> int:
        """Catalog id of an arbitrary (not necessarily canonical) pattern."""
        canon = canonicalize(pattern, self.arity)
        try:
            return self._index[canon] + 1
        except KeyError:
            raise ValueError(f"pattern {tuple(pattern)} is not a valid motif") from None

    def is_open(self, motif_id: int) -> bool:
        return self.open_flags[motif_id - 1]

    @property
    def _index(self) -> dict[tuple[int, ...], int]:
        # lazily built canonical-vector -> 0-based position map
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {p: i for i, p in enumerate(self.patterns)}
            self.__dict__["_index_cache"] = cached
        return cached

    def packed_id_table(self) -> list[int]:
        """Raw-pattern lookup: packed base-`states` key -> id (0 = invalid).

        Only sensible for arity 3, where counting engines classify triples.
        """
        cached = self.__dict__.get("_packed_cache")
        if cached is not None:
            return cached
        n = len(self.patterns[0])
        table = [0] * (self.states**n)
        for raw in itertools.product(range(self.states), repeat=n):
            canon = canonicalize(raw, self.arity)
            pos = self._index.get(canon)
            if pos is not None:
                key = 0
                for state in raw:
                    key = key * self.states + state
                table[key] = pos + 1
        self.__dict__["_packed_cache"] = table
        return table


@lru_cache(maxsize=None)
def enumerate_catalog(arity: int = 3, states: int = 2) -> MotifCatalog:
    """Enumerate all canonical valid patterns for (arity, states).

    Supported combinations: (2,2), (3,2), (3,3), (4,2). Sizes: 2, 26, 431, 1853.
    """
    if (arity, states) not in SUPPORTED:
        raise ValueError(f"unsupported catalog ({arity}, {states})")
    n = (1 << arity) - 1
    subsets = region_subsets(arity)
    tables = _perm_tables(arity)
    kept = []
    for raw in itertools.product(range(states), repeat=n):
        if any(tuple(raw[t[r]] for r in range(n)) < raw for t in tables):
            continue  # not the orbit representative
        if is_valid_pattern(raw, arity):
            kept.append(raw)
    kept.sort()
    open_flags = tuple(
        any(
            _pair_disjoint(p, subsets, x, y)
            for x, y in itertools.combinations(range(arity), 2)
        )
        for p in kept
    )
    return MotifCatalog(
        arity=arity, states=states, patterns=tuple(kept), open_flags=open_flags
    )


def count_state_motifs(states: int) -> int:
    """Closed-form count of canonical triple motifs with the given number of
    per-region states: 26 for 2 states, 431 for 3, 3076 for 4, ...
    """
    k = states
    if k < 2:
        raise ValueError("state count must be >= 2")
    return k * (k - 1) * (k**5 + k**4 + 4 * k**3 + k**2 - 4 * k + 2) // 6


def ternary_refinement_map() -> dict[int, int]:
    """Ternary motif id -> binary motif id obtained by collapsing states
    {1, 2} to "non-empty"."""
    binary = enumerate_catalog(3, 2)
    ternary = enumerate_catalog(3, 3)
    return {
        tid: binary.id_of(tuple(1 if s else 0 for s in pattern))
        for tid, pattern in zip(ternary.ids, ternary.patterns)
    }


# ---------------------------------------------------------------------------
# Classification of concrete hyperedge triples


def region_cardinalities(
    a: frozenset | set,
    b: frozenset | set,
    c: frozenset | set,
    w_ab: int | None = None,
    w_bc: int | None = None,
    w_ca: int | None = None,
) -> tuple[int, int, int, int, int, int, int]:
    """Cardinalities of the seven intersection regions of three distinct
    hyperedges, in catalog region order.

    The triple intersection is found by scanning the smallest hyperedge; the
    remaining regions follow from the pairwise overlaps by inclusion-exclusion.
    """
    if a == b or b == c or a == c:
        raise ValueError("hyperedges of a motif instance must be distinct")
    if w_ab is None:
        w_ab = len(a & b)
    if w_bc is None:
        w_bc = len(b & c)
    if w_ca is None:
        w_ca = len(c & a)
    smallest, s1, s2 = sorted((a, b, c), key=len)[0], None, None
    if smallest is a:
        s1, s2 = b, c
    elif smallest is b:
        s1, s2 = a, c
    else:
        s1, s2 = a, b
    c_abc = sum(1 for v in smallest if v in s1 and v in s2)
    return (
        len(a) - w_ab - w_ca + c_abc,
        len(b) - w_ab - w_bc + c_abc,
        len(c) - w_ca - w_bc + c_abc,
        w_ab - c_abc,
        w_bc - c_abc,
        w_ca - c_abc,
        c_abc,
    )


@dataclass(frozen=True)
class MotifMode:
    """Region-to-state mapping used when classifying triples.

    kind "binary" uses emptiness (2 states). The 3-state kinds are
    "abs" (cardinality threshold theta), "mr" (cardinality over the
    instance's node-union size, against p), and "hr" (an aggregate sigma of
    cardinality over the sizes of the covering hyperedges, against p).
    """

    kind: str = "binary"
    theta: int = 1
    p: float = 0.5
    sigma: str = "mean"

    def __post_init__(self):
        if self.kind not in {"binary", "abs", "mr", "hr"}:
            raise ValueError(f"unknown mode kind {self.kind!r}")
        if self.kind == "abs" and self.theta < 1:
            raise ValueError("theta must be >= 1")
        if self.kind in {"mr", "hr"} and not 0.0 < self.p < 1.0:
            raise ValueError("p must lie in (0, 1)")
        if self.kind == "hr" and self.sigma not in {"mean", "max", "min"}:
            raise ValueError("sigma must be mean, max, or min")

    @property
    def states(self) -> int:
        return 2 if self.kind == "binary" else 3

    def catalog(self) -> MotifCatalog:
        return enumerate_catalog(3, self.states)

    def region_states(
        self, cards: Sequence[int], sizes: Sequence[int]
    ) -> tuple[int, ...]:
        if self.kind == "binary":
            return tuple(1 if c else 0 for c in cards)
        if self.kind == "abs":
            return tuple(0 if c == 0 else (1 if c <= self.theta else 2) for c in cards)
        if self.kind == "mr":
            n = sum(cards)
            return tuple(
                0 if c == 0 else (1 if c / n <= self.p else 2) for c in cards
            )
        agg = {"mean": lambda v: sum(v) / len(v), "max": max, "min": min}[self.sigma]
        out = []
        for c, covering in zip(cards, _TRIPLE_SUBSETS):
            if c == 0:
                out.append(0)
            else:
                ratio = agg([c / sizes[x] for x in covering])
                out.append(1 if ratio <= self.p else 2)
        return tuple(out)


BINARY = MotifMode("binary")
TERNARY = MotifMode("abs", theta=1)


def _check_connected(cards: Sequence[int]) -> None:
    ab = cards[3] + cards[6]
    bc = cards[4] + cards[6]
    ca = cards[5] + cards[6]
    if (ab > 0) + (bc > 0) + (ca > 0) < 2:
        raise ValueError("hyperedge triple is not connected")


def classify(
    a: frozenset | set,
    b: frozenset | set,
    c: frozenset | set,
    mode: MotifMode = BINARY,
    w_ab: int | None = None,
    w_bc: int | None = None,
    w_ca: int | None = None,
) -> int:
    """Catalog id of the motif describing the connected triple (a, b, c)."""
    cards = region_cardinalities(a, b, c, w_ab, w_bc, w_ca)
    _check_connected(cards)
    states = mode.region_states(cards, (len(a), len(b), len(c)))
    return mode.catalog().id_of(states)


def make_classifier(mode: MotifMode) -> Callable:
    """Fast classification closure for counting engines.

    Returns f(cards, sizes) -> motif id, backed by a packed lookup table; the
    caller guarantees the triple is connected and distinct.
    """
    table = mode.catalog().packed_id_table()
    s = mode.states
    if mode.kind == "binary":

        def classify_binary(cards, sizes):
            key = 0
            for c in cards:
                key = key + key + (1 if c else 0)
            return table[key]

        return classify_binary

    region_states = mode.region_states

    def classify_multistate(cards, sizes):
        key = 0
        for state in region_states(cards, sizes):
            key = key * s + state
        return table[key]

    return classify_multistate
