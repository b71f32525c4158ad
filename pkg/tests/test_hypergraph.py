import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_hypergraph
from hyperdens import (
    CapError,
    DomainError,
    FormatError,
    Hypergraph,
    parse_hypergraph,
)


def small_hypergraphs(max_n=7, max_rank=3):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        labels = [f"v{i}" for i in range(n)]
        edges = draw(
            st.lists(
                st.frozensets(
                    st.sampled_from(labels), min_size=1, max_size=min(max_rank, n)
                ),
                max_size=10,
            )
        )
        return Hypergraph(labels, edges)

    return build()


# -- parsing -------------------------------------------------------------


def test_parse_path():
    h = parse_hypergraph("vertices: a b c\nedge: a b\nedge: b c")
    assert h.vertices == ("a", "b", "c")
    assert h.edges == (frozenset("ab"), frozenset("bc"))
    assert h.rank == 2


def test_parse_singleton():
    h = parse_hypergraph("vertices: a\nedge: a")
    assert h.n == 1 and h.edge_count == 1 and h.rank == 1


def test_parse_dedup():
    h = parse_hypergraph("vertices: a b\nedge: a b\nedge: a b")
    assert h.edge_count == 1


def test_parse_comments_and_blanks():
    h = parse_hypergraph("# header\n\nvertices: a b  # trailing\nedge: a b\n")
    assert h.edge_count == 1


def test_parse_lenient_autodeclares():
    h = parse_hypergraph("edge: a b\nedge: b c")
    assert h.vertices == ("a", "b", "c")


def test_parse_strict_rejects_undeclared():
    with pytest.raises(FormatError, match="undeclared"):
        parse_hypergraph("vertices: a\nedge: a b", strict=True)


def test_parse_empty_edge_line():
    with pytest.raises(FormatError, match="empty edge"):
        parse_hypergraph("vertices: a\nedge:")


def test_parse_unknown_directive():
    with pytest.raises(FormatError, match="unrecognized"):
        parse_hypergraph("nodes: a b")


def test_parse_duplicate_vertex():
    with pytest.raises(FormatError, match="duplicate"):
        parse_hypergraph("vertices: a a")


def test_roundtrip():
    text = "vertices: a b c d\nedge: a b\nedge: b c d\n"
    h = parse_hypergraph(text)
    assert parse_hypergraph(h.to_text()) == h
    assert h.to_text() == text


def test_constructor_validation():
    with pytest.raises(DomainError, match="non-empty"):
        Hypergraph("ab", [set()])
    with pytest.raises(DomainError, match="undeclared"):
        Hypergraph("ab", [{"a", "z"}])
    with pytest.raises(DomainError, match="duplicate"):
        Hypergraph(["a", "a"])
    with pytest.raises(DomainError, match="rank"):
        Hypergraph("abc", [{"a", "b", "c"}], rank_bound=2)


def test_vertex_cap(monkeypatch):
    with pytest.raises(CapError, match="cap"):
        Hypergraph([f"v{i}" for i in range(5)], max_vertices=4)
    monkeypatch.setenv("HYPERDENS_VERTEX_CAP", "3")
    with pytest.raises(CapError):
        parse_hypergraph("vertices: a b c d")


# -- induced subhypergraphs ------------------------------------------------


K3 = Hypergraph("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
PATH3 = Hypergraph("abc", [{"a", "b"}, {"b", "c"}])


def test_induced_k3_pair():
    sub = K3.induced({"a", "b"})
    assert sub.vertices == ("a", "b")
    assert sub.edges == (frozenset("ab"),)


def test_induced_identity():
    assert K3.induced(K3.vertices) == K3


def test_induced_drops_split_edges():
    sub = PATH3.induced({"a", "c"})
    assert sub.n == 2 and sub.edge_count == 0


def test_induced_rejects_foreign_vertices():
    with pytest.raises(DomainError):
        K3.induced({"a", "z"})


@given(small_hypergraphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_induced_idempotent(h, data):
    subset = data.draw(st.frozensets(st.sampled_from(list(h.vertices))))
    once = h.induced(subset)
    assert once.induced(subset) == once


# -- neighbourhoods --------------------------------------------------------


def test_neighbourhood_star_center():
    star = Hypergraph(["c", "y1", "y2"], [{"c", "y1"}, {"c", "y2"}])
    nb = star.neighbourhood({"c"})
    assert nb.hypergraph.edges == (frozenset({"y1"}), frozenset({"y2"}))
    assert nb.base_is_edge is False


def test_neighbourhood_inside_triple_edge():
    h = Hypergraph("abc", [{"a", "b", "c"}])
    nb = h.neighbourhood({"a"})
    assert nb.hypergraph.edges == (frozenset({"b", "c"}),)
    # conditioning on a pair inside the 3-edge leaves the third vertex
    nb2 = h.neighbourhood({"a", "b"})
    assert nb2.hypergraph.edges == (frozenset({"c"}),)
    assert nb2.base_is_edge is False


def test_neighbourhood_of_an_edge_sets_flag():
    # {a,b} is itself an edge of the triangle: the empty residual is
    # dropped and reported through the flag
    nb = K3.neighbourhood({"a", "b"})
    assert nb.hypergraph.edge_count == 0
    assert nb.base_is_edge is True


def test_neighbourhood_empty_set_is_identity():
    nb = K3.neighbourhood(set())
    assert nb.hypergraph == K3
    assert nb.base_is_edge is False


# -- antichain reduction ----------------------------------------------------


def test_antichain_superset_removed():
    h = Hypergraph("ab", [{"a"}, {"a", "b"}])
    assert h.antichain_reduction().edges == (frozenset({"a"}),)


def test_antichain_identity_on_antichains():
    assert K3.antichain_reduction() == K3


def test_antichain_mixed():
    h = Hypergraph("abcd", [{"a", "b"}, {"a", "b", "c"}, {"b", "c", "d"}])
    assert set(h.antichain_reduction().edges) == {
        frozenset({"a", "b"}),
        frozenset({"b", "c", "d"}),
    }


def test_antichain_output_has_no_comparable_pair():
    rng = random.Random(7)
    for _ in range(50):
        h = random_hypergraph(rng, max_vertices=12, max_rank=4)
        out = h.antichain_reduction().edges
        assert not any(a < b for a in out for b in out)


# -- independence -----------------------------------------------------------


def test_is_independent_triangle():
    assert K3.is_independent({"a"})
    assert not K3.is_independent({"a", "b"})


def test_proper_subset_of_edge_is_independent():
    h = Hypergraph("abc", [{"a", "b", "c"}])
    assert h.is_independent({"a", "b"})


@given(small_hypergraphs(), st.data())
@settings(max_examples=80, deadline=None)
def test_antichain_reduction_preserves_independence(h, data):
    subset = data.draw(st.frozensets(st.sampled_from(list(h.vertices))))
    assert h.is_independent(subset) == h.antichain_reduction().is_independent(subset)


def test_with_edges():
    bigger = PATH3.with_edges([{"a", "c"}])
    assert bigger.edge_count == 3
    assert bigger.vertices == PATH3.vertices
