"""Finite-core extraction for presented families and density-preserving rewrites.

The limit density of a bounded-rank countable hypergraph is realized by a
finite hypergraph: the core prefix plus every subset whose neighbourhood
keeps growing matchings (a heavy set may be added as an edge without
moving the limit).  Heaviness is an infinite condition, so detection
gathers evidence at two probe horizons and `verify_core` arbitrates by
comparing the core's exact density against a certified enclosure.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import budget
from .density import (
    as_probability,
    density,
    greedy_matching,
    iter_bits,
    maximum_matching,
)
from .errors import CapError, DomainError
from .families import Enclosure, Family, eval_to_tolerance
from .hypergraph import Hypergraph, VertexSet

__all__ = [
    "CORE_SCAN_CAP",
    "HeavySetReport",
    "CoreResult",
    "VerifyResult",
    "AddReduceResult",
    "detect_heavy_sets",
    "finite_core",
    "verify_core",
    "finitize",
    "add_and_reduce",
    "triangle_gadget",
]

CORE_SCAN_CAP = 16


@dataclass(frozen=True)
class HeavySetReport:
    """Evidence of heavy sets found over a core prefix.

    For every reported set the matching size in its neighbourhood beyond
    the core strictly grew between the two probe horizons.  This is
    evidence, not proof: `verify_core` is the arbiter.
    """

    core: Hypergraph
    core_horizon: int
    probe_horizons: tuple[int, int]
    threshold: int
    heavy: tuple[VertexSet, ...]
    evidence: Mapping[VertexSet, tuple[int, int]]

    @property
    def core_vertices(self) -> tuple[str, ...]:
        return self.core.vertices

    def _format_set(self, members: VertexSet) -> str:
        ordered = sorted(members, key=self.core.index_of)
        return "{" + ",".join(ordered) + "}"

    def to_text(self) -> str:
        lines = [
            "core: " + " ".join(self.core_vertices),
            f"probes: {self.probe_horizons[0]} {self.probe_horizons[1]}",
            f"threshold: {self.threshold}",
        ]
        for members in self.heavy:
            m1, m2 = self.evidence[members]
            lines.append(f"heavy: {self._format_set(members)} {m1} {m2}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CoreResult:
    """Outcome of core construction: a hypergraph, or a direct 0 verdict.

    The empty set being heavy means arbitrarily large matchings of whole
    edges exist, so the limit density is 0; no finite hypergraph has
    density 0 and none is returned.
    """

    core: Hypergraph | None
    density_zero: bool


@dataclass(frozen=True)
class VerifyResult:
    """Core verification verdict against a certified enclosure."""

    ok: bool
    indeterminate: bool
    core_density: Fraction
    enclosure: Enclosure


def _residual_groups(
    prefix: Hypergraph, core_set: VertexSet
) -> dict[VertexSet, list[VertexSet]]:
    """Map each trace A = E & core to the residuals E - core (non-empty)."""
    groups: dict[VertexSet, list[VertexSet]] = {}
    for e in prefix.edges:
        outside = e - core_set
        if outside:
            groups.setdefault(e & core_set, []).append(outside)
    return groups


def _matching_size(outside_vertices: Iterable[str], residuals: list[VertexSet]) -> int:
    nb = Hypergraph(outside_vertices, residuals)
    try:
        return maximum_matching(nb).size
    except CapError:
        return greedy_matching(nb).size


def detect_heavy_sets(
    family: Family,
    core_horizon: int = 1,
    probe_horizons: tuple[int, int] = (4, 8),
    threshold: int = 3,
    *,
    core_cap: int = CORE_SCAN_CAP,
    workers: int | None = None,
    assume_edges: Iterable[VertexSet] = (),
) -> HeavySetReport:
    """Scan the subsets of the core prefix's vertex set for heavy sets.

    A candidate must be independent in the core (plus any `assume_edges`
    from earlier passes); it is reported heavy when the matching number
    of its neighbourhood restricted beyond the core reaches `threshold`
    at the first probe horizon and strictly grows by the second.
    """
    n1, n2 = probe_horizons
    if not 1 <= core_horizon <= n1 < n2:
        raise DomainError("need 1 <= core_horizon <= n1 < n2")
    if threshold < 2:
        raise DomainError("threshold must be at least 2")
    core = family.prefix(core_horizon)
    if core.n > core_cap:
        raise CapError(
            f"core has {core.n} vertices; the subset scan is capped at {core_cap}"
        )
    core_set = core.vertex_set
    assumed = [frozenset(a) for a in assume_edges]
    if any(not a <= core_set for a in assumed):
        raise DomainError("assumed edges must lie inside the core vertex set")
    first = family.prefix(n1)
    second = family.prefix(n2)
    groups1 = _residual_groups(first, core_set)
    groups2 = _residual_groups(second, core_set)
    outside1 = [v for v in first.vertices if v not in core_set]
    outside2 = [v for v in second.vertices if v not in core_set]
    labels = core.vertices
    blockers = list(core.edge_masks()) + [
        sum(1 << core.index_of(v) for v in a) for a in assumed
    ]

    def scan(span: range) -> list[tuple[VertexSet, int, int]]:
        found: list[tuple[VertexSet, int, int]] = []
        for mask in span:
            if any((b & mask) == b for b in blockers):
                continue
            members = frozenset(labels[i] for i in iter_bits(mask))
            residuals = groups1.get(members)
            if residuals is None:
                continue
            m1 = _matching_size(outside1, residuals)
            if m1 < threshold:
                continue
            m2 = _matching_size(outside2, groups2.get(members, []))
            if m2 > m1:
                found.append((members, m1, m2))
        return found

    count = budget.workers() if workers is None else workers
    total = 1 << core.n
    if count <= 1 or total < 2 * count:
        hits = scan(range(total))
    else:
        step = -(-total // count)
        spans = [range(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=count) as pool:
            hits = [hit for part in pool.map(scan, spans) for hit in part]
    hits.sort(key=lambda item: (len(item[0]), sorted(core.index_of(v) for v in item[0])))
    return HeavySetReport(
        core=core,
        core_horizon=core_horizon,
        probe_horizons=(n1, n2),
        threshold=threshold,
        heavy=tuple(members for members, _, _ in hits),
        evidence={members: (m1, m2) for members, m1, m2 in hits},
    )


def finite_core(family: Family, report: HeavySetReport) -> CoreResult:
    """Adjoin the heavy sets to the core prefix and reduce to an antichain."""
    if any(not members for members in report.heavy):
        return CoreResult(None, True)
    merged = report.core.with_edges(report.heavy).antichain_reduction()
    return CoreResult(merged, False)


def verify_core(
    family: Family,
    core: Hypergraph | CoreResult,
    p: Fraction | str,
    tol: Fraction | str,
    *,
    core_size: int | None = None,
) -> VerifyResult:
    """Check that the core's exact density sits in the family's enclosure.

    The enclosure is widened by `tol` on both sides.  When the enclosure
    did not converge the verdict is flagged indeterminate rather than
    treated as an error.
    """
    p = as_probability(p)
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if isinstance(core, CoreResult):
        value = Fraction(0) if core.density_zero else density(core.core, p)
    else:
        value = density(core, p)
    enc = eval_to_tolerance(family, p, tol, core_size=core_size)
    ok = enc.lower - tol <= value <= enc.upper + tol
    return VerifyResult(
        ok=ok,
        indeterminate=not bool(enc.converged),
        core_density=value,
        enclosure=enc,
    )


def finitize(
    family: Family,
    p: Fraction | str,
    tol: Fraction | str,
    *,
    core_horizon: int = 1,
    probe_horizons: tuple[int, int] = (4, 8),
    threshold: int = 3,
    iterations: int = 1,
    workers: int | None = None,
) -> tuple[HeavySetReport, CoreResult, VerifyResult]:
    """Detect heavy sets, build the finite core, and verify it.

    With `iterations > 1` the detection repeats with the heavy sets found
    so far assumed as edges, pruning candidates that already contain one;
    the loop stops early once a pass finds nothing new.
    """
    if iterations < 1:
        raise DomainError("iterations must be at least 1")
    collected: list[VertexSet] = []
    evidence: dict[VertexSet, tuple[int, int]] = {}
    report = None
    for _ in range(iterations):
        report = detect_heavy_sets(
            family,
            core_horizon,
            probe_horizons,
            threshold,
            workers=workers,
            assume_edges=collected,
        )
        fresh = [members for members in report.heavy if members not in evidence]
        evidence.update(report.evidence)
        if not fresh:
            break
        collected.extend(fresh)
    merged = HeavySetReport(
        core=report.core,
        core_horizon=report.core_horizon,
        probe_horizons=report.probe_horizons,
        threshold=report.threshold,
        heavy=tuple(
            sorted(
                collected,
                key=lambda a: (len(a), sorted(report.core.index_of(v) for v in a)),
            )
        ),
        evidence={members: evidence[members] for members in collected},
    )
    result = finite_core(family, merged)
    verdict = verify_core(family, result, p, tol)
    return merged, result, verdict


# -- density-preserving rewrites -----------------------------------------


@dataclass(frozen=True)
class AddReduceResult:
    """Outcome of adding a set as an edge and pruning its supersets.

    For a finite hypergraph the density strictly drops (the added edge
    removes at least one independent set); the exact delta at the given
    probability is reported alongside.
    """

    hypergraph: Hypergraph
    already_edge: bool
    density_before: Fraction
    density_after: Fraction

    @property
    def delta(self) -> Fraction:
        return self.density_before - self.density_after


def add_and_reduce(
    h: Hypergraph,
    x: Iterable[str],
    p: Fraction | str = Fraction(1, 2),
) -> AddReduceResult:
    """Add independent set `x` as an edge, dropping its proper supersets."""
    p = as_probability(p)
    members = frozenset(x)
    if not members:
        raise DomainError("x must be non-empty")
    if members in set(h.edges):
        value = density(h, p)
        return AddReduceResult(h, True, value, value)
    if not h.is_independent(members):
        raise DomainError("x is not independent")
    kept = [e for e in h.edges if not members < e]
    reduced = Hypergraph(h.vertices, kept + [members])
    return AddReduceResult(reduced, False, density(h, p), density(reduced, p))


def triangle_gadget(h: Hypergraph) -> Hypergraph:
    """Replace singleton edges by fresh triangles; a graph comes out.

    A vertex with a singleton edge is barred from every independent set,
    so deleting it (and every edge through it) and planting a fresh
    triangle multiplies the count by 4 while adding two net vertices:
    the density at p = 1/2 is preserved exactly.  Only defined for rank
    at most 2; at other p no finite graph need have the same density.
    """
    if h.rank > 2:
        raise DomainError("triangle substitution needs rank at most 2")
    forced = {v for e in h.edges if len(e) == 1 for v in e}
    vertices = [v for v in h.vertices if v not in forced]
    edges: list[frozenset[str]] = [e for e in h.edges if not (e & forced)]
    for v in h.vertices:
        if v in forced:
            a, b, c = f"{v}.a", f"{v}.b", f"{v}.c"
            vertices.extend((a, b, c))
            edges.extend((frozenset({a, b}), frozenset({a, c}), frozenset({b, c})))
    return Hypergraph(vertices, edges)
