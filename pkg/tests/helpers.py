"""Shared generators for randomized suites.

Everything is driven by a caller-supplied `random.Random` so suites are
reproducible and independent of the engines they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hyperdens import Hypergraph


def random_hypergraph(
    rng: random.Random,
    max_vertices: int = 12,
    max_rank: int = 4,
    min_vertices: int = 1,
    max_edges: int | None = None,
) -> Hypergraph:
    n = rng.randint(min_vertices, max_vertices)
    labels = [f"v{i}" for i in range(n)]
    cap = 2 * n if max_edges is None else max_edges
    edges = []
    for _ in range(rng.randint(0, cap)):
        size = rng.randint(1, min(max_rank, n))
        edges.append(frozenset(rng.sample(labels, size)))
    return Hypergraph(labels, edges)


def random_probability(rng: random.Random) -> Fraction:
    den = rng.randint(2, 30)
    num = rng.randint(1, den - 1)
    return Fraction(num, den)


def random_extension(rng: random.Random, h: Hypergraph) -> Hypergraph:
    """A random superhypergraph: extra vertices plus extra edges."""
    labels = list(h.vertices) + [f"w{i}" for i in range(rng.randint(0, 3))]
    edges = list(h.edges)
    for _ in range(rng.randint(1, 4)):
        size = rng.randint(1, min(4, len(labels)))
        edges.append(frozenset(rng.sample(labels, size)))
    return Hypergraph(labels, edges)


def random_sandwich_instance(rng: random.Random):
    """Hypergraph, independent set x and witnesses meeting the sandwich preconditions."""
    while True:
        x_size = rng.randint(1, 2)
        m = rng.randint(1, 3)
        x = [f"x{i}" for i in range(x_size)]
        witnesses = [
            [f"y{i}.{j}" for j in range(rng.randint(1, 2))] for i in range(m)
        ]
        extras = [f"z{i}" for i in range(rng.randint(0, 3))]
        labels = x + [v for w in witnesses for v in w] + extras
        edges = [frozenset(x) | frozenset(w) for w in witnesses]
        for _ in range(rng.randint(0, 3)):
            size = rng.randint(1, min(3, len(labels)))
            edges.append(frozenset(rng.sample(labels, size)))
        h = Hypergraph(labels, edges)
        fx = frozenset(x)
        if fx in set(h.edges) or not h.is_independent(fx):
            continue
        # noise edges may have swallowed a witness or merged two of them
        used: set[str] = set()
        ok = True
        for w in witnesses:
            fw = frozenset(w)
            if fw & fx or (used & fw) or (fx | fw) not in set(h.edges):
                ok = False
                break
            used |= fw
        if ok:
            return h, fx, [frozenset(w) for w in witnesses]


def independent_count_recurrence(n: int) -> int:
    """Independent sets of the n-vertex path via a(n) = a(n-1) + a(n-2)."""
    a, b = 1, 2  # 0 and 1 vertices
    for _ in range(n - 1):
        a, b = b, a + b
    return b if n else 1
