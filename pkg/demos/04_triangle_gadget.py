"""
The triangle substitution: rank-2 cores into honest graphs
===========================================================

A finite rank-2 core can contain singleton edges, which a graph cannot.
At p = 1/2 a singleton edge {x} is exchangeable for a fresh triangle:
x is barred from every independent set, and a triangle has 4
independent sets on 3 vertices, so counts scale by 4 while the subset
space scales by 2^2: the density is unchanged.  (The trade only works
at 1/2; for transcendental p no finite graph matches the infinite
star's density 1 - p.)
"""

from fractions import Fraction

from hyperdens import (
    Hypergraph,
    branching_profile,
    density,
    triangle_gadget,
)

half = Fraction(1, 2)

# One singleton edge becomes one triangle.
dot = Hypergraph("x", [{"x"}])
out = triangle_gadget(dot)
print("gadget of a singleton edge:\n" + out.to_text())
print("densities:", density(dot, half), "=", density(out, half))

# Mixed input: the pair {x, y} rides on the barred vertex x, so it is
# deleted along with x; y survives as an isolated vertex.
mixed = Hypergraph("xy", [{"x"}, {"x", "y"}])
gadget = triangle_gadget(mixed)
print("mixed gadget vertices:", gadget.vertices)
print("counts scale by 4:",
      branching_profile(mixed).total, "->", branching_profile(gadget).total)
print("densities:", density(mixed, half), "=", density(gadget, half))

# A graph (no singletons) passes through untouched.
triangle = Hypergraph("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
assert triangle_gadget(triangle) == triangle

# Chaining the constructions: the star's finite core {{c}} turns into a
# graph with the same density 1/2 at p = 1/2.
core = Hypergraph(["c", "y1"], [{"c"}])
graph_core = triangle_gadget(core)
print("graph core:\n" + graph_core.to_text())
print("density:", density(graph_core, half))
