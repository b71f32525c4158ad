"""Finite presentations of countable hypergraphs and certified enclosures.

A family generates a chain of nested finite prefixes that exhausts the
presented hypergraph.  Prefix densities are non-increasing and converge
to the hypergraph's density, which gives the upper side of an enclosure;
the lower side conditions on a small core prefix and union-bounds the
residual edge weight, with a per-family tail oracle covering the edges
not yet visible at the current horizon.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import budget
from .density import as_probability, density, iter_bits
from .errors import CapError, DomainError, FormatError
from .hypergraph import Hypergraph, parse_hypergraph

__all__ = [
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
    "default_core_size",
    "enclosure",
    "eval_to_tolerance",
    "chains_agree",
]


class Family:
    """Chain presentation of a countable hypergraph.

    `prefix(n)` returns the n-th member of the chain; members are nested
    induced subhypergraphs whose union exhausts the presented hypergraph
    and whose rank never exceeds `rank`.  `tail_weight(p, n, chosen)`
    upper-bounds the total selection weight sum p^|E \\ S| over edges not
    yet visible at horizon n whose trace on the conditioning core lies
    inside `chosen`; `None` means the sum diverges.  A `stride` of s
    presents the same hypergraph through the subsequence C_s, C_2s, ...
    """

    kind: str = ""

    def __init__(self, *, rank: int, stride: int = 1, has_tail_oracle: bool = True):
        if stride < 1:
            raise DomainError("stride must be a positive integer")
        self.rank = rank
        self.stride = stride
        self.has_tail_oracle = has_tail_oracle

    def prefix(self, n: int) -> Hypergraph:
        if n < 1:
            raise DomainError("prefix index must be at least 1")
        base = n * self.stride
        cap = budget.prefix_vertex_cap()
        projected = self._base_vertex_count(base)
        if projected > cap:
            raise CapError(
                f"prefix {n} needs {projected} vertices, over the prefix cap {cap}"
            )
        return self._base_prefix(base)

    def params(self) -> dict[str, int]:
        """Kind-specific integer parameters, for reports."""
        out: dict[str, int] = {}
        if self.stride != 1:
            out["stride"] = self.stride
        return out

    def _base_vertex_count(self, m: int) -> int:
        raise NotImplementedError

    def _base_prefix(self, m: int) -> Hypergraph:
        raise NotImplementedError

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        raise NotImplementedError


class InfiniteStar(Family):
    """Countably many leaves joined to one center by 2-edges."""

    kind = "infinite_star"
    CENTER = "c"

    def __init__(self, stride: int = 1):
        super().__init__(rank=2, stride=stride)

    def _base_vertex_count(self, m: int) -> int:
        return m + 1

    def _base_prefix(self, m: int) -> Hypergraph:
        leaves = [f"y{i}" for i in range(1, m + 1)]
        return Hypergraph([self.CENTER] + leaves, [{self.CENTER, y} for y in leaves])

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        # unseen edges hit the core exactly in the center: their residual
        # weight is a divergent sum of p per leaf once the center is chosen
        return None if self.CENTER in chosen else Fraction(0)


class InfiniteMatching(Family):
    """Countably many pairwise disjoint k-edges."""

    kind = "infinite_k_matching"

    def __init__(self, k: int, stride: int = 1):
        if k < 1:
            raise DomainError("edge size k must be at least 1")
        super().__init__(rank=k, stride=stride)
        self.k = k

    def params(self) -> dict[str, int]:
        return {"k": self.k, **super().params()}

    def _base_vertex_count(self, m: int) -> int:
        return m * self.k

    def _base_prefix(self, m: int) -> Hypergraph:
        labels = [f"e{i}.{j}" for i in range(1, m + 1) for j in range(1, self.k + 1)]
        edges = [
            {f"e{i}.{j}" for j in range(1, self.k + 1)} for i in range(1, m + 1)
        ]
        return Hypergraph(labels, edges)

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        # every unseen edge avoids the core, so all countably many survive
        # the conditioning: the weight sum diverges for every branch
        return None


class RayPath(Family):
    """One-way infinite path presented by its initial segments."""

    kind = "ray_path"

    def __init__(self, stride: int = 1):
        super().__init__(rank=2, stride=stride)

    def _base_vertex_count(self, m: int) -> int:
        return m

    def _base_prefix(self, m: int) -> Hypergraph:
        labels = [f"v{i}" for i in range(1, m + 1)]
        edges = [{f"v{i}", f"v{i + 1}"} for i in range(1, m)]
        return Hypergraph(labels, edges)

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        # unseen path edges lie wholly beyond the core: divergent as above
        return None


class ConstantFamily(Family):
    """A finite hypergraph presented as an eventually-constant chain."""

    kind = "constant"

    def __init__(self, template: Hypergraph):
        super().__init__(rank=template.rank)
        self.template = template

    def _base_vertex_count(self, m: int) -> int:
        return self.template.n

    def _base_prefix(self, m: int) -> Hypergraph:
        return self.template

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction:
        return Fraction(0)


def _copy_labels(template: Hypergraph, i: int, keep: str | None) -> dict[str, str]:
    return {
        lab: lab if lab == keep else f"{lab}#{i}"
        for lab in template.vertices
    }


class DisjointCopies(Family):
    """Countably many vertex-disjoint copies of a finite template."""

    kind = "disjoint_copies"

    def __init__(self, template: Hypergraph, stride: int = 1):
        if template.n == 0:
            raise DomainError("template needs at least one vertex")
        super().__init__(rank=template.rank, stride=stride)
        self.template = template

    def _base_vertex_count(self, m: int) -> int:
        return m * self.template.n

    def _base_prefix(self, m: int) -> Hypergraph:
        labels: list[str] = []
        edges: list[set[str]] = []
        for i in range(1, m + 1):
            ren = _copy_labels(self.template, i, None)
            labels.extend(ren[lab] for lab in self.template.vertices)
            edges.extend({ren[v] for v in e} for e in self.template.edges)
        return Hypergraph(labels, edges)

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        return Fraction(0) if self.template.edge_count == 0 else None


class PeriodicTemplate(Family):
    """User template repeated countably, glued disjointly or on one vertex.

    Lower bounds need a declared tail series: `tail=(ratio, coeff)`
    asserts that the residual weight of the edges beyond prefix n is at
    most coeff * ratio^n for the probability in use.  Without it the
    family is evaluated upper-only.
    """

    kind = "periodic_template"

    def __init__(
        self,
        template: Hypergraph,
        *,
        glue: str = "disjoint",
        shared: str | None = None,
        tail: tuple[Fraction, Fraction] | None = None,
        stride: int = 1,
    ):
        if template.n == 0:
            raise DomainError("template needs at least one vertex")
        if glue not in ("disjoint", "shared"):
            raise DomainError(f"unknown gluing rule {glue!r}")
        if glue == "shared":
            if shared is None or shared not in template.vertex_set:
                raise DomainError("shared-vertex gluing needs a template vertex label")
        elif shared is not None:
            raise DomainError("a shared label only makes sense with shared-vertex gluing")
        if tail is not None:
            ratio, coeff = tail
            if not 0 < ratio < 1 or coeff < 0:
                raise DomainError("tail declaration needs 0 < ratio < 1 and coeff >= 0")
        super().__init__(rank=template.rank, stride=stride, has_tail_oracle=tail is not None)
        self.template = template
        self.glue = glue
        self.shared = shared
        self.tail = tail

    def _base_vertex_count(self, m: int) -> int:
        if self.glue == "shared":
            return 1 + m * (self.template.n - 1)
        return m * self.template.n

    def _base_prefix(self, m: int) -> Hypergraph:
        keep = self.shared if self.glue == "shared" else None
        labels: list[str] = [keep] if keep is not None else []
        edges: list[set[str]] = []
        for i in range(1, m + 1):
            ren = _copy_labels(self.template, i, keep)
            labels.extend(ren[lab] for lab in self.template.vertices if lab != keep)
            edges.extend({ren[v] for v in e} for e in self.template.edges)
        return Hypergraph(labels, edges)

    def tail_weight(self, p: Fraction, n: int, chosen: frozenset[str]) -> Fraction | None:
        if self.tail is None:
            return None
        ratio, coeff = self.tail
        return coeff * ratio ** (n * self.stride)


# -- enclosures ----------------------------------------------------------


@dataclass(frozen=True)
class Enclosure:
    """Certified rational interval around a family's limit density.

    `upper_only` marks a missing tail oracle (the lower bound is the
    trivial 0); `converged` is set by tolerance-driven evaluation and is
    None for a single-horizon enclosure.
    """

    lower: Fraction
    upper: Fraction
    horizon: int
    upper_only: bool = False
    converged: bool | None = None

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def chain_upper(family: Family, p: Fraction | str, n: int) -> Fraction:
    """Density of the n-th prefix: an upper bound, non-increasing in n."""
    return density(family.prefix(n), as_probability(p))


def default_core_size(family: Family) -> int:
    """Conditioning-core size keeping the 2^|S| branch enumeration cheap."""
    return min(8, family.prefix(1).n + 2)


def _core_prefix(family: Family, horizon: int, core_size: int) -> Hypergraph | None:
    """Largest prefix up to `horizon` with at most `core_size` vertices."""
    best: Hypergraph | None = None
    for m in range(1, horizon + 1):
        candidate = family.prefix(m)
        if candidate.n > core_size:
            break
        best = candidate
    return best


def enclosure(
    family: Family,
    p: Fraction | str,
    horizon: int,
    core_size: int | None = None,
) -> Enclosure:
    """Two-sided enclosure of the family's density at one horizon.

    Upper side: the exact prefix density.  Lower side: condition on each
    subset T of a small core prefix S that contains no edge inside S,
    then lower-bound the conditional density by 1 minus the union-bound
    weight of the residual edges, split into the part visible in the
    current prefix (summed exactly) and the per-family tail bound.
    """
    p = as_probability(p)
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    cn = family.prefix(horizon)
    upper = density(cn, p)
    if core_size is None:
        core_size = default_core_size(family)
    if core_size < 1:
        raise DomainError("core size must be at least 1")
    if not family.has_tail_oracle:
        return Enclosure(Fraction(0), upper, horizon, upper_only=True)
    core = _core_prefix(family, horizon, core_size)
    if core is None:
        return Enclosure(Fraction(0), upper, horizon)
    core_labels = core.vertices
    core_set = frozenset(core_labels)
    inner = [e for e in cn.edges if e <= core_set]
    outer = [(e & core_set, len(e - core_set)) for e in cn.edges if e - core_set]
    s = len(core_labels)
    q = 1 - p
    p_pow = [p**j for j in range(max(s, family.rank) + 1)]
    q_pow = [q**j for j in range(s + 1)]
    lower = Fraction(0)
    for mask in range(1 << s):
        chosen = frozenset(core_labels[i] for i in iter_bits(mask))
        if any(e <= chosen for e in inner):
            continue
        tail = family.tail_weight(p, horizon, chosen)
        if tail is None:
            continue
        visible = sum(
            (p_pow[r] for inside, r in outer if inside <= chosen), Fraction(0)
        )
        margin = 1 - visible - tail
        if margin > 0:
            lower += p_pow[len(chosen)] * q_pow[s - len(chosen)] * margin
    return Enclosure(lower, upper, horizon)


def eval_to_tolerance(
    family: Family,
    p: Fraction | str,
    tol: Fraction | str,
    *,
    core_size: int | None = None,
    time_cap: float | None = None,
) -> Enclosure:
    """Tighten the enclosure over a doubling horizon schedule.

    Stops when the width drops to `tol`; on budget exhaustion (prefix
    vertex cap or wall-clock cap) returns the best enclosure so far with
    `converged=False`.  The lower bound is the running maximum over the
    horizons visited, the upper bound the latest (smallest) one.
    """
    p = as_probability(p)
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    limit = budget.time_cap() if time_cap is None else time_cap
    deadline = time.monotonic() + limit
    upper_only = not family.has_tail_oracle
    best_lower = Fraction(0)
    upper = Fraction(1)
    n = 1
    last = 0
    while True:
        try:
            step = enclosure(family, p, n, core_size)
        except CapError:
            break
        last = n
        best_lower = max(best_lower, step.lower)
        upper = step.upper
        if upper - best_lower <= tol:
            return Enclosure(best_lower, upper, n, upper_only=upper_only, converged=True)
        if time.monotonic() > deadline:
            break
        n *= 2
    if last == 0:
        raise CapError("the family's first prefix already exceeds the vertex budget")
    return Enclosure(best_lower, upper, last, upper_only=upper_only, converged=False)


def chains_agree(
    f: Family,
    g: Family,
    p: Fraction | str,
    tol: Fraction | str,
) -> bool:
    """Whether two presentations' enclosures overlap at tolerance `tol`.

    Chains for the same hypergraph share a limit, so their enclosures
    must intersect; disjoint enclosures certify different limits.
    """
    a = eval_to_tolerance(f, p, tol)
    b = eval_to_tolerance(g, p, tol)
    return max(a.lower, b.lower) <= min(a.upper, b.upper)


# -- family files --------------------------------------------------------


_KINDS = {
    "infinite_star",
    "infinite_k_matching",
    "ray_path",
    "disjoint_copies",
    "periodic_template",
    "constant",
}


def parse_family(text: str) -> Family:
    """Parse the family file format.

    A `family: <kind>` line names one of the built-in kinds, `param:`
    lines carry integer parameters (`k`, `stride`), and the template
    kinds embed a hypergraph block between `begin hypergraph` and
    `end hypergraph` lines.  periodic_template needs a `repeat:` gluing
    rule (`disjoint` or `shared-vertex <label>`) and may declare
    `tail: geometric <ratio> <coeff>` to enable lower bounds.
    """
    kind: str | None = None
    params: dict[str, str] = {}
    repeat: tuple[str, str | None] | None = None
    tail: tuple[Fraction, Fraction] | None = None
    template_lines: list[str] | None = None
    block: list[str] = []
    in_block = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "begin hypergraph":
            if in_block or template_lines is not None:
                raise FormatError(f"line {lineno}: unexpected hypergraph block")
            in_block = True
            block = []
        elif line == "end hypergraph":
            if not in_block:
                raise FormatError(f"line {lineno}: stray 'end hypergraph'")
            in_block = False
            template_lines = block
        elif in_block:
            block.append(line)
        elif line.startswith("family:"):
            if kind is not None:
                raise FormatError(f"line {lineno}: duplicate family line")
            kind = line[len("family:"):].strip()
        elif line.startswith("param:"):
            toks = line[len("param:"):].split()
            if len(toks) != 2:
                raise FormatError(f"line {lineno}: expected 'param: <name> <value>'")
            params[toks[0]] = toks[1]
        elif line.startswith("repeat:"):
            toks = line[len("repeat:"):].split()
            if toks == ["disjoint"]:
                repeat = ("disjoint", None)
            elif len(toks) == 2 and toks[0] == "shared-vertex":
                repeat = ("shared", toks[1])
            else:
                raise FormatError(f"line {lineno}: bad repeat rule")
        elif line.startswith("tail:"):
            toks = line[len("tail:"):].split()
            if len(toks) != 3 or toks[0] != "geometric":
                raise FormatError(
                    f"line {lineno}: expected 'tail: geometric <ratio> <coeff>'"
                )
            try:
                tail = (Fraction(toks[1]), Fraction(toks[2]))
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"line {lineno}: bad tail rationals: {exc}") from None
        else:
            raise FormatError(f"line {lineno}: unrecognized directive {line.split()[0]!r}")
    if in_block:
        raise FormatError("unterminated hypergraph block")
    if kind is None:
        raise FormatError("missing 'family:' line")
    if kind not in _KINDS:
        raise FormatError(f"unknown family kind {kind!r}")

    def int_param(name: str, default: int | None = None) -> int:
        raw = params.pop(name, None)
        if raw is None:
            if default is None:
                raise FormatError(f"family {kind} needs 'param: {name} <int>'")
            return default
        if not raw.lstrip("+").isdigit():
            raise FormatError(f"param {name} must be a positive integer, got {raw!r}")
        return int(raw)

    def template() -> Hypergraph:
        if template_lines is None:
            raise FormatError(f"family {kind} needs an embedded hypergraph block")
        return parse_hypergraph("\n".join(template_lines))

    stride = int_param("stride", 1)
    if kind != "periodic_template":
        if repeat is not None:
            raise FormatError("repeat: only applies to periodic_template")
        if tail is not None:
            raise FormatError("tail: only applies to periodic_template")
    try:
        if kind == "infinite_star":
            family: Family = InfiniteStar(stride)
        elif kind == "infinite_k_matching":
            family = InfiniteMatching(int_param("k"), stride)
        elif kind == "ray_path":
            family = RayPath(stride)
        elif kind == "disjoint_copies":
            family = DisjointCopies(template(), stride)
        elif kind == "constant":
            if stride != 1:
                raise FormatError("constant families take no stride")
            family = ConstantFamily(template())
        else:
            if repeat is None:
                raise FormatError("periodic_template needs a 'repeat:' line")
            glue, shared = repeat
            family = PeriodicTemplate(
                template(), glue=glue, shared=shared, tail=tail, stride=stride
            )
    except DomainError as exc:
        raise FormatError(str(exc)) from None
    closed_form = ("infinite_star", "infinite_k_matching", "ray_path")
    if kind in closed_form and template_lines is not None:
        raise FormatError(f"family {kind} takes no hypergraph block")
    if params:
        raise FormatError(f"unknown params for {kind}: {sorted(params)}")
    return family
