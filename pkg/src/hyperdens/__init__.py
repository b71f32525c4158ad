"""Exact independence densities of finite and countable hypergraphs.

The package computes independence profiles and p-densities of finite
hypergraphs in exact rational arithmetic, certifies two-sided enclosures
of the limit densities of countable hypergraphs presented as chains, and
carries out the constructive reductions connecting the two: antichain
reduction, the add-edge sandwich, finite-core extraction, and the
triangle substitution for singleton edges.
"""

from .density import (
    Matching,
    Profile,
    add_edge_sandwich,
    as_probability,
    branching_profile,
    density,
    evaluate_profile,
    exhaustive_profile,
    greedy_matching,
    matching_bound,
    maximum_matching,
)
from .errors import CapError, DomainError, FormatError, HyperdensError
from .families import (
    ConstantFamily,
    DisjointCopies,
    Enclosure,
    Family,
    InfiniteMatching,
    InfiniteStar,
    PeriodicTemplate,
    RayPath,
    chain_upper,
    chains_agree,
    enclosure,
    eval_to_tolerance,
    parse_family,
)
from .finitize import (
    AddReduceResult,
    CoreResult,
    HeavySetReport,
    VerifyResult,
    add_and_reduce,
    detect_heavy_sets,
    finite_core,
    finitize,
    triangle_gadget,
    verify_core,
)
from .hypergraph import Hypergraph, Neighbourhood, parse_hypergraph

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "Neighbourhood",
    "parse_hypergraph",
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
    "Family",
    "InfiniteStar",
    "InfiniteMatching",
    "RayPath",
    "DisjointCopies",
    "PeriodicTemplate",
    "ConstantFamily",
    "Enclosure",
    "parse_family",
    "chain_upper",
    "enclosure",
    "eval_to_tolerance",
    "chains_agree",
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
    "HyperdensError",
    "FormatError",
    "DomainError",
    "CapError",
    "__version__",
]
