"""
Exact independence densities of finite hypergraphs
===================================================

A vertex subset is independent when it contains no hyperedge entirely.
The independence p-density is the probability that a random subset
(each vertex kept independently with probability p) is independent.
Everything below is exact rational arithmetic.
"""

from fractions import Fraction

from hyperdens import (
    Hypergraph,
    add_edge_sandwich,
    branching_profile,
    density,
    exhaustive_profile,
    greedy_matching,
    matching_bound,
    maximum_matching,
    parse_hypergraph,
)

half = Fraction(1, 2)

# Hypergraphs can be built directly or parsed from the line-oriented
# file format (lenient mode auto-declares vertices seen only in edges).
triangle = parse_hypergraph("""
vertices: a b c
edge: a b
edge: a c
edge: b c
""")
print("triangle:", triangle)

# The profile counts independent sets by size.  The triangle keeps the
# empty set and the three singletons: 4 sets out of 2^3 = 8.
profile = branching_profile(triangle)
print("profile:", profile.counts, "-> total", profile.total)
print("density at 1/2:", density(triangle, half))

# The branch-and-reduce engine agrees with plain enumeration; the
# enumerator is the ground truth used throughout the test suite.
assert branching_profile(triangle) == exhaustive_profile(triangle)

# Profiles evaluate at any rational p.
for p in (Fraction(1, 3), half, Fraction(9, 10)):
    print(f"density at {p}:", profile.density(p))

# Matchings (pairwise disjoint edges) yield the upper bound
# (1 - p^rank)^m.  On a path of four vertices the maximum matching has
# two edges.
path = Hypergraph("abcd", [{"a", "b"}, {"b", "c"}, {"c", "d"}])
greedy = greedy_matching(path)
exact = maximum_matching(path)
print("path matching sizes: greedy", greedy.size, "exact", exact.size)
print(
    "matching bound", matching_bound(path, half, exact),
    "vs exact density", density(path, half),
)

# Adding an independent set X as a new edge lowers the density; when X
# extends to edges X | Y_i through disjoint witnesses Y_i the drop is
# bounded: density(h) lies in (lo, hi] with
# hi = lo + p^|X| (1 - p^(rank-|X|))^m.
star = Hypergraph(["c", "y1", "y2", "y3"], [{"c", "y1"}, {"c", "y2"}, {"c", "y3"}])
lo, hi = add_edge_sandwich(star, {"c"}, [{"y1"}, {"y2"}, {"y3"}], half)
print("sandwich around the 3-leaf star:", lo, "<", density(star, half), "<=", hi)
