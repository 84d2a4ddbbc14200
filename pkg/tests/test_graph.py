import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from forcelab.graph import (GRAPH_COUNTS, Graph, Graph6Error, GraphSizeError, canonical_form,
                            census, complete_graph, contains_induced, cycle_graph,
                            disjoint_union, empty_graph, enumerate_graphs, find_induced,
                            grid_graph, is_isomorphic, matching_graph, parse_graph6, path_graph,
                            random_tree, read_graph6_file, star_graph, to_graph6,
                            write_graph6_file)

from oracles import brute_induced, decode_graph6, edge_set, perm_isomorphic


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


# -- graph6 -----------------------------------------------------------------

def test_graph6_examples():
    g = parse_graph6("D?{")
    n, edges = decode_graph6("D?{")
    assert g.n == n == 5 and edge_set(g) == edges
    assert to_graph6(g) == "D?{"
    one = parse_graph6("@")
    assert one.n == 1 and one.num_edges() == 0
    assert parse_graph6("C~") == complete_graph(4)
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(Graph(0)) == "?"
    p4 = path_graph(4)
    assert parse_graph6(to_graph6(p4)) == p4
    assert to_graph6(parse_graph6(to_graph6(p4))) == to_graph6(p4)


def test_graph6_header_and_long_form():
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)
    # 4-byte length header for n = 3
    assert parse_graph6("~??Bw") == complete_graph(3)


@pytest.mark.parametrize("bad, where", [
    ("", "byte 0"),
    ("C~~", "byte 2"),       # first surplus byte
    ("C", "byte 1"),         # missing data
    ("B ", "byte 1"),        # out of range byte
    ("Bx", "byte 1"),        # K3 uses 3 bits; low padding bits must be zero
])
def test_graph6_errors_name_offset(bad, where):
    with pytest.raises(Graph6Error, match=where):
        parse_graph6(bad)


def test_graph6_size_limit():
    with pytest.raises(GraphSizeError):
        to_graph6(empty_graph(63))


def test_graph6_round_trip_census():
    for g in census(6):
        assert parse_graph6(to_graph6(g)) == g


@given(graphs(8))
def test_graph6_round_trip_labelled(g):
    s = to_graph6(g)
    assert parse_graph6(s) == g
    n, edges = decode_graph6(s)
    assert n == g.n and edges == edge_set(g)


def test_graph6_file_io(tmp_path):
    p = tmp_path / "g.g6"
    write_graph6_file(p, [path_graph(3), cycle_graph(4)], header=["two graphs"])
    assert list(read_graph6_file(p)) == [path_graph(3), cycle_graph(4)]
    p.write_text("Bw\nC!\n# comment\n\nC~\n")
    with pytest.raises(Graph6Error, match=":2:"):
        list(read_graph6_file(p))
    errs = []
    got = list(read_graph6_file(p, strict=False, errors=errs))
    assert got == [complete_graph(3), complete_graph(4)]
    assert [e[0] for e in errs] == [2]


# -- constructors ---------------------------------------------------------------

def test_constructors():
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert cycle_graph(4).num_edges() == 4
    assert star_graph(3).degree(0) == 3
    assert grid_graph(2, 3).num_edges() == 7
    assert matching_graph(2) == disjoint_union(complete_graph(2), complete_graph(2))
    t = random_tree(30, random.Random(5))
    assert t.num_edges() == 29 and t.is_connected()
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])


def test_induced_and_delete():
    c = cycle_graph(5)
    h, old = c.induced([0, 1, 2])
    assert h == path_graph(3) and old == (0, 1, 2)
    h, old = c.delete(1 << 0)
    assert h.n == 4 and old == (1, 2, 3, 4) and h == path_graph(4)


# -- canonical forms ------------------------------------------------------------

def test_canonical_examples():
    a = Graph(3, [(0, 1), (1, 2)])
    b = Graph(3, [(1, 0), (0, 2)])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(a) != canonical_form(complete_graph(3))


def test_canonical_eleven_classes_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    keys = set()
    for mask in range(1 << 6):
        keys.add(canonical_form(Graph(4, [e for i, e in enumerate(pairs) if mask >> i & 1])))
    assert len(keys) == 11


def test_canonical_agrees_with_permutation_oracle():
    reps = census(5)
    rng = random.Random(1)
    labelled = []
    for g in reps:
        perm = list(range(g.n))
        rng.shuffle(perm)
        labelled.append(g.relabel(perm))
    for g, h in itertools.product(reps, labelled):
        if g.n != h.n or g.num_edges() != h.num_edges():
            assert canonical_form(g) != canonical_form(h)
            continue
        same = perm_isomorphic(g.n, edge_set(g), h.n, edge_set(h))
        assert (canonical_form(g) == canonical_form(h)) == same


@settings(max_examples=60)
@given(graphs(7), st.randoms(use_true_random=False))
def test_canonical_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
    assert is_isomorphic(g, g.relabel(perm))


def test_canonical_size_limit():
    with pytest.raises(GraphSizeError):
        canonical_form(empty_graph(11))


# -- induced containment --------------------------------------------------------

def test_contains_induced_examples():
    assert contains_induced(complete_graph(2), path_graph(3))
    # {0,1},{2,3} is not an induced 2K2 in P4: the edge 1-2 joins them
    assert find_induced(matching_graph(2), path_graph(4)) is None
    assert not brute_induced(matching_graph(2), path_graph(4))
    phi = find_induced(matching_graph(2), path_graph(5))
    assert phi is not None and sorted(phi) == [0, 1, 3, 4]
    assert not contains_induced(complete_graph(3), cycle_graph(4))
    assert not contains_induced(path_graph(5), path_graph(4))


def test_contains_induced_matches_brute_force():
    small, big = census(4), census(6)
    for h in small:
        for g in big:
            if h.n > g.n:
                continue
            phi = find_induced(h, g)
            assert (phi is not None) == brute_induced(h, g)
            if phi is not None:
                sub, _ = g.induced(phi)
                assert edge_set(sub) == edge_set(h) or all(
                    g.has_edge(phi[a], phi[b]) == h.has_edge(a, b)
                    for a, b in itertools.combinations(range(h.n), 2))


# -- census ---------------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 8))
def test_census_counts(n):
    graphs_n = list(enumerate_graphs(n))
    assert len(graphs_n) == GRAPH_COUNTS[n]
    assert len({canonical_form(g) for g in graphs_n}) == len(graphs_n)


def test_census_matches_networkx_atlas():
    atlas = {}
    for a in nx.graph_atlas_g():
        idx = {v: i for i, v in enumerate(a.nodes())}
        g = Graph(a.number_of_nodes(), [(idx[u], idx[v]) for u, v in a.edges()])
        atlas.setdefault(g.n, set()).add(canonical_form(g))
    for n in range(0, 8):
        assert {canonical_form(g) for g in enumerate_graphs(n)} == atlas[n]


def test_census_catalog(tmp_path, monkeypatch):
    write_graph6_file(tmp_path / "graph4.g6", enumerate_graphs(4))
    monkeypatch.setenv("FORCELAB_CENSUS_DIR", str(tmp_path))
    assert len(list(enumerate_graphs(4, "catalog", expected_count=11))) == 11
    with pytest.raises(ValueError, match="mismatch"):
        list(enumerate_graphs(4, "catalog", expected_count=12))
    with pytest.raises(FileNotFoundError):
        list(enumerate_graphs(5, "catalog"))
    assert len(list(enumerate_graphs(4, tmp_path / "graph4.g6"))) == 11


def test_internal_census_limit():
    with pytest.raises(GraphSizeError):
        list(enumerate_graphs(9))
