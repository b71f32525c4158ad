"""Exact independence counting and the quantitative density bounds.

Two engines compute the independence profile (number of independent sets
by size).  `exhaustive_profile` scans all 2^n subsets and is the ground
truth for small inputs; `branching_profile` is a branch-and-reduce
counter with connected-component convolution that reaches the sizes the
chain machinery needs.  Everything is exact: counts are Python big
integers, probabilities and densities are `fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapError, DomainError
from .hypergraph import Hypergraph, VertexSet

__all__ = [
    "ORACLE_VERTEX_CAP",
    "MATCHING_EDGE_CAP",
    "Profile",
    "Matching",
    "as_probability",
    "exhaustive_profile",
    "branching_profile",
    "evaluate_profile",
    "density",
    "greedy_matching",
    "maximum_matching",
    "matching_bound",
    "add_edge_sandwich",
]

ORACLE_VERTEX_CAP = 25
MATCHING_EDGE_CAP = 30


def as_probability(p: Fraction | str | float) -> Fraction:
    """Validate and canonicalize an inclusion probability in (0, 1)."""
    value = Fraction(p)
    if not 0 < value < 1:
        raise DomainError(f"probability must lie strictly between 0 and 1, got {value}")
    return value


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Profile:
    """Independent-set counts by size: `counts[j]` sets of size j.

    The length is always `n + 1` for an n-vertex hypergraph, so the
    evaluation weights p^j (1-p)^(n-j) are well defined.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise DomainError("a profile needs at least the size-0 entry")
        if any(c < 0 for c in self.counts):
            raise DomainError("profile counts must be non-negative")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        """Total number of independent sets."""
        return sum(self.counts)

    def density(self, p: Fraction | str) -> Fraction:
        return evaluate_profile(self, p)


# -- exhaustive engine (ground truth) ----------------------------------


def exhaustive_profile(h: Hypergraph, *, cap: int = ORACLE_VERTEX_CAP) -> Profile:
    """Profile by scanning all 2^n subsets; refuses above `cap` vertices."""
    n = h.n
    if n > cap:
        raise CapError(f"{n} vertices exceeds the {cap}-vertex exhaustive enumeration cap")
    counts = np.zeros(n + 1, dtype=np.int64)
    edge_masks = [np.uint32(m) for m in h.edge_masks()]
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, start + chunk, dtype=np.uint32)
        ok = np.ones(masks.shape, dtype=bool)
        for e in edge_masks:
            ok &= (masks & e) != e
        sizes = np.zeros(masks.shape, dtype=np.uint8)
        for b in range(n):
            sizes += ((masks >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
        counts += np.bincount(sizes[ok], minlength=n + 1).astype(np.int64)
    return Profile(tuple(int(c) for c in counts))


# -- branch-and-reduce engine -------------------------------------------


def branching_profile(h: Hypergraph) -> Profile:
    """Branch-and-reduce profile; agrees with `exhaustive_profile` exactly.

    Branches on the highest-degree vertex (ties to the lowest index).
    Excluding a vertex deletes every edge through it (such an edge can no
    longer be fully selected); including it shrinks those edges, and a
    singleton edge forces its vertex out.  Edgeless remainders contribute
    binomial rows, connected components are solved independently and
    combined by convolution.  Components are memoized per call under a
    canonical relabelling, which keeps long induced paths linear.
    """
    full = (1 << h.n) - 1
    memo: dict[tuple[int, ...], tuple[int, ...]] = {}
    counts = _profile_over(full, tuple(sorted(h.edge_masks())), memo)
    return Profile(tuple(counts))


def _binomial_row(f: int) -> list[int]:
    return [math.comb(f, j) for j in range(f + 1)]


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pad(row: Sequence[int], n: int) -> list[int]:
    out = list(row)
    out.extend([0] * (n + 1 - len(out)))
    return out


def _components(edges: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Group edges into connected components, ordered by lowest vertex."""
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        first = None
        for v in iter_bits(e):
            parent.setdefault(v, v)
            if first is None:
                first = v
            else:
                parent[find(v)] = find(first)
    groups: dict[int, tuple[int, list[int]]] = {}
    for e in edges:
        root = find(next(iter_bits(e)))
        vmask, bucket = groups.get(root, (0, []))
        bucket.append(e)
        groups[root] = (vmask | e, bucket)
    return sorted(
        ((vmask, tuple(bucket)) for vmask, bucket in groups.values()),
        key=lambda item: item[0] & -item[0],
    )


def _profile_over(
    vmask: int,
    edges: tuple[int, ...],
    memo: dict[tuple[int, ...], tuple[int, ...]],
) -> list[int]:
    size = vmask.bit_count()
    if not edges:
        return _binomial_row(size)
    total: list[int] | None = None
    covered = 0
    for comp_mask, comp_edges in _components(edges):
        covered |= comp_mask
        part = _component_profile(comp_mask, comp_edges, memo)
        total = part if total is None else _convolve(total, part)
    free = (vmask & ~covered).bit_count()
    if free:
        total = _convolve(total, _binomial_row(free))
    return total


def _component_profile(
    comp_mask: int,
    comp_edges: tuple[int, ...],
    memo: dict[tuple[int, ...], tuple[int, ...]],
) -> list[int]:
    verts = list(iter_bits(comp_mask))
    remap = {v: i for i, v in enumerate(verts)}
    key = tuple(sorted(sum(1 << remap[v] for v in iter_bits(e)) for e in comp_edges))
    cached = memo.get(key)
    if cached is None:
        cached = tuple(_branch(len(verts), key, memo))
        memo[key] = cached
    return list(cached)


def _branch(
    t: int,
    edges: tuple[int, ...],
    memo: dict[tuple[int, ...], tuple[int, ...]],
) -> list[int]:
    vmask = (1 << t) - 1
    work = list(edges)
    # a singleton edge bars its vertex, which deletes every edge through it
    while True:
        single = next((e for e in work if e.bit_count() == 1), None)
        if single is None:
            break
        vmask &= ~single
        work = [e for e in work if not (e & single)]
        if not work:
            return _pad(_binomial_row(vmask.bit_count()), t)
    if len(work) < len(edges):
        return _pad(_profile_over(vmask, tuple(sorted(set(work))), memo), t)
    degree: dict[int, int] = {}
    for e in work:
        for v in iter_bits(e):
            degree[v] = degree.get(v, 0) + 1
    v = min(degree, key=lambda u: (-degree[u], u))
    bit = 1 << v
    excluded = _profile_over(
        vmask ^ bit, tuple(e for e in work if not (e & bit)), memo
    )
    included = _profile_over(
        vmask ^ bit,
        tuple(sorted({(e & ~bit) if (e & bit) else e for e in work})),
        memo,
    )
    out = _pad(excluded, t)
    for j, c in enumerate(included):
        out[j + 1] += c
    return out


# -- evaluation ---------------------------------------------------------


def evaluate_profile(profile: Profile, p: Fraction | str) -> Fraction:
    """Exact density sum over the profile: sum_j i_j p^j (1-p)^(n-j)."""
    p = as_probability(p)
    a, b = p.numerator, p.denominator
    c = b - a
    n = profile.n
    num = sum(cnt * a**j * c ** (n - j) for j, cnt in enumerate(profile.counts) if cnt)
    return Fraction(num, b**n)


def density(h: Hypergraph, p: Fraction | str) -> Fraction:
    """Probability that a p-random vertex subset of `h` is independent."""
    return evaluate_profile(branching_profile(h), p)


# -- matchings and the bounds built on them ------------------------------


@dataclass(frozen=True)
class Matching:
    """Pairwise-disjoint subfamily of a hypergraph's edges."""

    edges: tuple[VertexSet, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


def _check_matching(h: Hypergraph, matching: Matching) -> None:
    known = set(h.edges)
    used: set[str] = set()
    for e in matching.edges:
        if e not in known:
            raise DomainError(f"matching edge {sorted(e)} is not an edge of the hypergraph")
        if used & e:
            raise DomainError("matching edges are not pairwise disjoint")
        used |= e


def greedy_matching(h: Hypergraph) -> Matching:
    """Maximal matching by a greedy scan in canonical edge order."""
    chosen: list[VertexSet] = []
    used: set[str] = set()
    for e in h.edges:
        if not (used & e):
            chosen.append(e)
            used |= e
    return Matching(tuple(chosen))


def maximum_matching(h: Hypergraph, *, edge_cap: int = MATCHING_EDGE_CAP) -> Matching:
    """Maximum matching by branch-and-bound over edge inclusion.

    Refuses above `edge_cap` edges unless the greedy scan already uses
    every edge (a pairwise-disjoint family), which certifies the answer.
    """
    greedy = greedy_matching(h)
    if h.edge_count > edge_cap:
        if greedy.size == h.edge_count:
            return greedy
        raise CapError(
            f"{h.edge_count} edges exceeds the {edge_cap}-edge exact matching cap; "
            "greedy_matching gives a certified lower bound"
        )
    order = sorted(h.edge_masks(), key=lambda m: (m.bit_count(), m))
    total = len(order)
    label_edges = {m: e for m, e in zip(h.edge_masks(), h.edges)}
    best: list[int] = [sum(1 << h.index_of(v) for v in e) for e in greedy.edges]

    def search(i: int, used: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if i == total or len(chosen) + (total - i) <= len(best):
            return
        e = order[i]
        if not (used & e):
            chosen.append(e)
            search(i + 1, used | e, chosen)
            chosen.pop()
        search(i + 1, used, chosen)

    search(0, 0, [])
    picked = sorted(best, key=lambda m: tuple(sorted(iter_bits(m))))
    return Matching(tuple(label_edges[m] for m in picked))


def matching_bound(h: Hypergraph, p: Fraction | str, matching: Matching) -> Fraction:
    """Upper bound (1 - p^rank)^m for a certified matching of size m.

    An independent set misses at least one vertex of each matching edge,
    and the matching edges are disjoint, so the miss events are
    independent; p^rank lower-bounds each edge's full-selection weight.
    """
    p = as_probability(p)
    _check_matching(h, matching)
    return (1 - p**h.rank) ** matching.size


def add_edge_sandwich(
    h: Hypergraph,
    x: Iterable[str],
    witnesses: Iterable[Iterable[str]],
    p: Fraction | str,
) -> tuple[Fraction, Fraction]:
    """Two-sided bounds on the density of `h` after adding `x` as an edge.

    Requires `x` independent in `h` (hence not an edge) and witnesses
    Y_1..Y_m pairwise disjoint, non-empty, disjoint from `x`, with every
    `x | Y_i` an edge of `h`.  Returns (lo, hi) with
    lo = density(h + {x}) and hi = lo + p^|x| (1 - p^(k-|x|))^m, k the
    rank; the density of `h` itself lies in (lo, hi].
    """
    p = as_probability(p)
    base = frozenset(x)
    if base in set(h.edges):
        raise DomainError("x is already an edge")
    if not h.is_independent(base):
        raise DomainError("x is not independent")
    k = h.rank
    if len(base) > k:
        raise DomainError(f"|x| = {len(base)} exceeds the rank {k}")
    known = set(h.edges)
    used: set[str] = set()
    count = 0
    for y in witnesses:
        witness = frozenset(y)
        if not witness:
            raise DomainError("witness sets must be non-empty")
        if witness & base:
            raise DomainError("witness sets must be disjoint from x")
        if used & witness:
            raise DomainError("witness sets must be pairwise disjoint")
        if (base | witness) not in known:
            raise DomainError(f"x extended by {sorted(witness)} is not an edge")
        used |= witness
        count += 1
    if base:
        lower = density(h.with_edges([base]), p)
    else:
        # the empty set as an edge kills every subset: density 0
        lower = Fraction(0)
    upper = lower + p ** len(base) * (1 - p ** (k - len(base))) ** count
    return lower, upper
