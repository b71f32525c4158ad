"""
Certified enclosures for countable hypergraphs
===============================================

A countable hypergraph is presented as a chain: nested finite induced
prefixes whose union exhausts it.  Prefix densities only decrease, so
they bound the limit from above; a conditional union bound over a small
core prefix certifies a lower bound.  The result is an exact rational
interval guaranteed to contain the limit density.
"""

from fractions import Fraction

from hyperdens import (
    InfiniteMatching,
    InfiniteStar,
    RayPath,
    chain_upper,
    chains_agree,
    enclosure,
    eval_to_tolerance,
    parse_family,
)

half = Fraction(1, 2)
tol = Fraction(1, 10**9)

# The infinite star K_{1,oo}: center c joined to countably many leaves.
# Its limit density is 1 - p (the center must stay out; the leaves are
# then free).  Watch the enclosure tighten horizon by horizon.
star = InfiniteStar()
print("star prefix 3:\n" + star.prefix(3).to_text())
for n in (1, 2, 4, 8):
    enc = enclosure(star, half, n)
    print(f"horizon {n}: [{enc.lower}, {enc.upper}] width {enc.width}")

# Tolerance-driven evaluation doubles the horizon until the width drops.
enc = eval_to_tolerance(star, half, tol)
print("converged:", enc.converged, "horizon", enc.horizon, "width", float(enc.width))
assert enc.lower <= 1 - half <= enc.upper

# A countable matching of k-edges has density 0: the upper bound is
# exactly (1 - p^k)^n and no finite hypergraph gets there.
m2 = InfiniteMatching(2)
for n in (1, 4, 16):
    print(f"2-matching upper at {n}:", chain_upper(m2, half, n))
enc = eval_to_tolerance(m2, half, Fraction(1, 10**6))
print("2-matching enclosure:", enc.lower, "to", float(enc.upper))

# The one-way infinite path also thins out to density 0 (its prefix
# counts are Fibonacci numbers over powers of two).
ray = RayPath()
print("ray upper bounds:", [chain_upper(ray, half, n) for n in range(2, 7)])

# Different presentations of the same hypergraph agree: the star taken
# one leaf at a time and two leaves at a time give overlapping
# enclosures, while the star and the matching do not.
print("star ~ star(stride 2):", chains_agree(star, InfiniteStar(2), half, tol))
print("star ~ 2-matching:", chains_agree(star, m2, half, Fraction(1, 10**6)))

# Families also load from text; template kinds embed a hypergraph block.
fam = parse_family("""
family: periodic_template
repeat: shared-vertex c
begin hypergraph
vertices: c y
edge: c y
end hypergraph
""")
print("periodic star prefix 2:\n" + fam.prefix(2).to_text())
# Without a declared tail series the enclosure is honest about knowing
# only the upper side.
enc = enclosure(fam, half, 4)
print("upper-only:", enc.upper_only, "upper:", enc.upper)
