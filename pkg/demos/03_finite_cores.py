"""
Finite cores: realizing a limit density with a finite hypergraph
=================================================================

Every positive limit density of a bounded-rank countable hypergraph is
already the density of a finite one.  The construction: take a core
prefix, find the heavy sets (subsets whose neighbourhood beyond the
core keeps growing matchings), adjoin them as edges, and reduce to an
antichain.  Heaviness is an infinite condition, so the detector gathers
evidence at two probe horizons and verification arbitrates against a
certified enclosure.
"""

from fractions import Fraction

from hyperdens import (
    ConstantFamily,
    Hypergraph,
    InfiniteMatching,
    InfiniteStar,
    add_and_reduce,
    density,
    detect_heavy_sets,
    finite_core,
    finitize,
    verify_core,
)

half = Fraction(1, 2)
tol = Fraction(1, 10**9)

# The star's center is heavy: beyond any core, the leaf edges through c
# form matchings of every size.  Adding {c} as an edge and reducing
# leaves the single edge {c}, whose density is exactly 1 - p.
star = InfiniteStar()
report = detect_heavy_sets(star)
print(report.to_text())
result = finite_core(star, report)
print("core:\n" + result.core.to_text())
for p in (Fraction(1, 3), half):
    verdict = verify_core(star, result, p, tol)
    print(f"p={p}: core density {verdict.core_density}, verified {verdict.ok}")

# For the infinite matching the EMPTY set is heavy: whole edges form
# growing matchings, so the limit density is 0 and no finite core
# exists; the result says so directly.
m2 = InfiniteMatching(2)
report, result, verdict = finitize(m2, half, Fraction(1, 10**6))
print("matching heavy sets:", [sorted(s) for s in report.heavy])
print("density zero:", result.density_zero, "verified:", verdict.ok)

# An eventually-constant chain has no heavy sets at all; the core is the
# hypergraph itself (the stabilized branch of the construction).
triangle = Hypergraph("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
const = ConstantFamily(triangle)
report, result, verdict = finitize(const, half, tol)
print("constant family heavy sets:", list(report.heavy))
print("core is the template:", result.core == triangle, "verified:", verdict.ok)

# The underlying rewrite on finite hypergraphs: adding an independent
# set as an edge and pruning its supersets CHANGES a finite density (the
# drop is the sandwich gap); it is only in the infinite limit that the
# operation is free.
star3 = Hypergraph(["c", "y1", "y2", "y3"], [{"c", "y1"}, {"c", "y2"}, {"c", "y3"}])
out = add_and_reduce(star3, {"c"}, half)
print(
    "before", out.density_before, "after", out.density_after,
    "delta", out.delta,
)
print("reduced edges:", [sorted(e) for e in out.hypergraph.edges])
print("limit of growing stars:", density(out.hypergraph, half), "= 1 - p")
