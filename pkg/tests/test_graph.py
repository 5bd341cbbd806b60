import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from reference import to_nx
from spectral_gauge.errors import GraphParseError
from spectral_gauge.graph import (Graph, GeneralizedAdjacency, adjacency_matrix, complement,
                                  complete, cycle, edgeless, erdos_renyi, find_automorphism,
                                  generate, is_vertex_transitive, kneser, parse_graph, path,
                                  petersen, random_generalized_adjacency, relabel, render_graph,
                                  star, circulant, disjoint_union)


def test_parse_path():
    g = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n")
    assert g == path(3)


def test_parse_cycle():
    text = "p edge 5 5\n" + "".join(f"e {i + 1} {(i + 1) % 5 + 1}\n" for i in range(5))
    assert parse_graph(text) == cycle(5)


def test_parse_edge_list_bytes():
    assert parse_graph(b"3\n0 1\n1 2\n", "edge-list") == path(3)


@pytest.mark.parametrize("text, where", [
    ("p edge 2 1\ne 1 1\n", "self-loop"),
    ("e 1 2\n", "before header"),
    ("p edge 2 1\ne 1 3\n", "out of range"),
    ("p edge x 1\n", "integer"),
    ("p edge 2 1\nq 1 2\n", "unknown line"),
])
def test_parse_errors(text, where):
    with pytest.raises(GraphParseError, match=where):
        parse_graph(text)


def test_parse_error_reports_line():
    with pytest.raises(GraphParseError) as exc:
        parse_graph("c comment\np edge 3 1\ne 2 2\n")
    assert exc.value.line == 3


def test_duplicate_edges_collapse():
    g = parse_graph("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n")
    assert g.m == 2


def test_complement_examples():
    assert complement(complete(5)) == edgeless(5)
    assert complement(complement(petersen())) == petersen()
    assert nx.is_isomorphic(to_nx(complement(cycle(5))), to_nx(cycle(5)))


def test_generators():
    assert cycle(5).m == 5
    p = petersen()
    assert (p.n, p.m) == (10, 15)
    assert set(p.degrees()) == {3}
    assert erdos_renyi(8, 0.5, 1) == erdos_renyi(8, 0.5, 1)
    assert nx.is_isomorphic(to_nx(kneser(5, 2)), to_nx(p))
    assert star(3).m == 3 and sorted(star(3).degrees()) == [1, 1, 1, 3]
    assert circulant(8, [1, 3]).m == 16
    assert disjoint_union(complete(3), complete(2)).m == 4


@pytest.mark.parametrize("spec, nm", [("cycle:7", (7, 7)), ("kneser:5:2", (10, 15)),
                                      ("circulant:8:1,3", (8, 16)), ("erdos_renyi:9:0.4:7", None)])
def test_generate_specs(spec, nm):
    g = generate(spec)
    if nm:
        assert (g.n, g.m) == nm
    assert generate(spec) == g


@pytest.mark.parametrize("spec", ["bogus", "cycle", "cycle:x", "kneser:5"])
def test_generate_rejects(spec):
    with pytest.raises(ValueError):
        generate(spec)


def test_adjacency_examples():
    assert np.array_equal(adjacency_matrix(complete(2)).matrix, [[0, 1], [1, 0]])
    assert not np.any(adjacency_matrix(edgeless(3)).matrix)
    row = adjacency_matrix(cycle(5)).matrix[0]
    assert np.array_equal(row, [0, 1, 0, 0, 1])


def test_generalized_adjacency_validation():
    g = path(3)
    with pytest.raises(ValueError):
        GeneralizedAdjacency(g, np.ones((3, 3)) - np.eye(3))  # entry on the non-edge
    with pytest.raises(ValueError):
        GeneralizedAdjacency(g, np.eye(3))
    with pytest.raises(ValueError):
        GeneralizedAdjacency(g, np.array([[0, 1, 0], [2, 0, 0], [0, 0, 0.0]]))


def test_random_adjacency():
    assert not np.any(random_generalized_adjacency(edgeless(4), seed=1).matrix)
    g = erdos_renyi(9, 0.5, 2)
    a = random_generalized_adjacency(g, nonneg=True, seed=5)
    assert np.all(a.matrix >= 0)
    assert np.array_equal(a.matrix, random_generalized_adjacency(g, True, 5).matrix)


def test_relabel_examples():
    c = cycle(5)
    assert relabel(c, range(5)) == c
    assert relabel(c, [1, 2, 3, 4, 0]) == c
    assert relabel(path(3), [2, 1, 0]) == path(3)
    with pytest.raises(ValueError):
        relabel(c, [0, 0, 1, 2, 3])


@pytest.mark.parametrize("g, expected", [
    (cycle(5), True), (cycle(7), True), (petersen(), True), (complete(4), True),
    (edgeless(3), True), (kneser(6, 2), True), (disjoint_union(cycle(4), cycle(4)), True),
    (path(4), False), (star(3), False), (disjoint_union(cycle(3), cycle(4)), False),
])
def test_vertex_transitivity(g, expected):
    assert is_vertex_transitive(g) is expected


def test_automorphism_is_valid():
    g = petersen()
    phi = find_automorphism(g, 0, 7)
    assert phi[0] == 7
    assert relabel(g, phi) == g


graphs = st.builds(lambda n, p, s: erdos_renyi(n, p, s), st.integers(1, 12),
                   st.floats(0.0, 1.0), st.integers(0, 10 ** 6))


@given(graphs, st.randoms(use_true_random=False))
def test_relabel_preserves_degrees(g, r):
    sigma = list(range(g.n))
    r.shuffle(sigma)
    h = relabel(g, sigma)
    assert h.m == g.m
    assert sorted(h.degrees()) == sorted(g.degrees())


@given(graphs, st.sampled_from(["dimacs", "edge-list"]))
def test_render_parse_roundtrip(g, fmt):
    assert parse_graph(render_graph(g, fmt), fmt) == g


@given(graphs, st.integers(0, 1000), st.booleans())
def test_nonzero_matrix_has_negative_eigenvalue(g, seed, nonneg):
    a = random_generalized_adjacency(g, nonneg, seed).matrix
    if np.any(a):
        vals = np.linalg.eigvalsh(a)
        assert vals[0] < -1e-12 * max(1.0, vals[-1])
