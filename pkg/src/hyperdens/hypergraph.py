"""Finite hypergraph model: validation, file format, structural reductions.

Vertices carry external string labels but are mapped to dense integer
indices at construction; the counting engines work on index bitmasks.
Values are immutable after construction and safe to share between
workers; every operation here is a pure function.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .budget import vertex_cap
from .errors import CapError, DomainError, FormatError

__all__ = ["Hypergraph", "Neighbourhood", "parse_hypergraph"]

VertexSet = frozenset[str]


class Neighbourhood(NamedTuple):
    """Hypergraph induced by conditioning on a vertex subset.

    `base_is_edge` records that the conditioned set is itself an edge:
    its residual would be the empty edge, which is never stored.
    """

    hypergraph: "Hypergraph"
    base_is_edge: bool


class Hypergraph:
    """Immutable finite hypergraph with non-empty, deduplicated edges."""

    __slots__ = ("_labels", "_index", "_edges", "_label_edges", "_masks")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Iterable[str]] = (),
        *,
        rank_bound: int | None = None,
        max_vertices: int | None = None,
    ):
        labels: list[str] = []
        index: dict[str, int] = {}
        for label in vertices:
            if not isinstance(label, str) or not label:
                raise DomainError(f"vertex labels must be non-empty strings, got {label!r}")
            if label in index:
                raise DomainError(f"duplicate vertex label {label!r}")
            index[label] = len(labels)
            labels.append(label)
        cap = vertex_cap() if max_vertices is None else max_vertices
        if len(labels) > cap:
            raise CapError(f"{len(labels)} vertices exceeds the vertex cap {cap}")
        seen: set[frozenset[int]] = set()
        for edge in edges:
            members = frozenset(edge)
            if not members:
                raise DomainError("edges must be non-empty")
            try:
                seen.add(frozenset(index[v] for v in members))
            except KeyError as exc:
                raise DomainError(
                    f"edge {sorted(members)} references undeclared vertex {exc.args[0]!r}"
                ) from None
        self._labels = tuple(labels)
        self._index = index
        self._edges = tuple(sorted(seen, key=lambda e: tuple(sorted(e))))
        self._label_edges: tuple[VertexSet, ...] | None = None
        self._masks: tuple[int, ...] | None = None
        if rank_bound is not None and self.rank > rank_bound:
            raise DomainError(f"rank {self.rank} exceeds the declared bound {rank_bound}")

    # -- basic views ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._labels

    @property
    def vertex_set(self) -> VertexSet:
        return frozenset(self._labels)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self._edges), default=0)

    @property
    def edges(self) -> tuple[VertexSet, ...]:
        """Edges as label sets, in canonical order."""
        if self._label_edges is None:
            self._label_edges = tuple(
                frozenset(self._labels[i] for i in e) for e in self._edges
            )
        return self._label_edges

    def edge_masks(self) -> tuple[int, ...]:
        """Edges as vertex-index bitmasks, in canonical order."""
        if self._masks is None:
            self._masks = tuple(
                sum(1 << i for i in e) for e in self._edges
            )
        return self._masks

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown vertex {label!r}") from None

    def _resolve(self, subset: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index_of(v) for v in subset)

    # -- operations ----------------------------------------------------

    def is_independent(self, subset: Iterable[str]) -> bool:
        """True iff no edge is entirely contained in `subset`."""
        chosen = self._resolve(subset)
        return not any(e <= chosen for e in self._edges)

    def induced(self, subset: Iterable[str]) -> "Hypergraph":
        """Subhypergraph on `subset`: keeps exactly the edges inside it."""
        chosen = self._resolve(subset)
        labels = [lab for i, lab in enumerate(self._labels) if i in chosen]
        kept = [
            frozenset(self._labels[i] for i in e)
            for e in self._edges
            if e <= chosen
        ]
        return Hypergraph(labels, kept)

    def neighbourhood(self, subset: Iterable[str]) -> Neighbourhood:
        """Edges containing `subset`, each with it removed, on the complement."""
        base = self._resolve(subset)
        labels = [lab for i, lab in enumerate(self._labels) if i not in base]
        residual = [
            frozenset(self._labels[i] for i in e - base)
            for e in self._edges
            if base <= e and e != base
        ]
        return Neighbourhood(Hypergraph(labels, residual), base in set(self._edges))

    def antichain_reduction(self) -> "Hypergraph":
        """Drop every edge that strictly contains another edge.

        Independence, and hence every density, is unchanged: a set
        containing the larger edge already contains the smaller one.
        """
        kept = [
            e for e in self._edges
            if not any(other < e for other in self._edges)
        ]
        return Hypergraph(
            self._labels,
            [frozenset(self._labels[i] for i in e) for e in kept],
        )

    def with_edges(self, extra: Iterable[Iterable[str]]) -> "Hypergraph":
        """Same vertices, with `extra` added to the edge family."""
        return Hypergraph(self._labels, list(self.edges) + [frozenset(e) for e in extra])

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self._labels)]
        for e in self._edges:
            lines.append("edge: " + " ".join(self._labels[i] for i in sorted(e)))
        return "\n".join(lines) + "\n"

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._labels, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={self.edge_count}, rank={self.rank})"


def parse_hypergraph(text: str, *, strict: bool = False) -> Hypergraph:
    """Parse the line-oriented hypergraph format.

    `vertices:` lines declare labels, `edge:` lines list edge members and
    `#` starts a comment.  Lenient mode (default) auto-declares vertices
    that appear only in edges; strict mode rejects them.  Duplicate edges
    collapse silently; an empty edge line is a format error.
    """
    declared: list[str] = []
    seen: set[str] = set()
    edge_lines: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            for tok in line[len("vertices:"):].split():
                if tok in seen:
                    raise FormatError(f"line {lineno}: duplicate vertex {tok!r}")
                seen.add(tok)
                declared.append(tok)
        elif line.startswith("edge:"):
            toks = line[len("edge:"):].split()
            if not toks:
                raise FormatError(f"line {lineno}: empty edge")
            edge_lines.append(toks)
        else:
            raise FormatError(f"line {lineno}: unrecognized directive {line.split()[0]!r}")
    labels = list(declared)
    known = set(declared)
    for toks in edge_lines:
        for tok in toks:
            if tok not in known:
                if strict:
                    raise FormatError(
                        f"edge references undeclared vertex {tok!r} (strict mode)"
                    )
                known.add(tok)
                labels.append(tok)
    return Hypergraph(labels, [frozenset(toks) for toks in edge_lines])
