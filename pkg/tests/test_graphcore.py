"""Graph container, validation, BFS machinery, images, isomorphism check."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import diameter_oracle, floyd_warshall, image_graph_oracle
from polycert.graphcore import (LabeledGraph, bfs_distances, bfs_eccentricity,
                                check_sub_gisof, diameter, edge_list,
                                graph_image, graph_violation, is_connected,
                                is_regular, validate_graph)


def path_graph(k):
    adj = [[] for _ in range(k)]
    for i in range(k - 1):
        adj[i].append(i + 1)
        adj[i + 1].insert(0, i)
    return LabeledGraph(adj, list(range(k)))


def octahedron():
    """Vertices 0..5 labelled by coordinates; i and i+3 are antipodal."""
    labels = [(-1, 0, 0), (0, -1, 0), (0, 0, -1), (0, 0, 1), (0, 1, 0),
              (1, 0, 0)]
    anti = {0: 5, 5: 0, 1: 4, 4: 1, 2: 3, 3: 2}
    adj = [sorted(j for j in range(6) if j != i and j != anti[i])
           for i in range(6)]
    return LabeledGraph(adj, labels)


def test_validate_good():
    assert validate_graph(path_graph(4))
    assert validate_graph(octahedron())
    assert validate_graph(LabeledGraph([], []))
    assert validate_graph(LabeledGraph([[]], ["a"]))


@pytest.mark.parametrize("adj,labels,frag", [
    ([[]], [], "label count"),
    ([[], []], ["b", "a"], "not strictly increasing"),
    ([[], []], ["a", "a"], "not strictly increasing"),
    ([[0]], ["a"], "self loop"),
    ([[1], []], ["a", "b"], "mirror"),
    ([[2], []], ["a", "b"], "out of range"),
    ([[1, 1], [0, 0]], ["a", "b"], "neighbour list not strictly increasing"),
])
def test_validate_violations(adj, labels, frag):
    G = LabeledGraph(adj, labels)
    assert not validate_graph(G)
    assert frag in graph_violation(G)


def test_index_of():
    G = octahedron()
    assert G.index_of((0, 0, 1)) == 3
    assert G.index_of((9, 9, 9)) == -1


def test_edge_list_and_counts():
    G = path_graph(3)
    assert edge_list(G.adj) == [(0, 1), (1, 2)]
    assert G.vertex_count() == 3
    assert G.edge_count() == 2


def test_bfs_basics():
    G = path_graph(4)
    assert bfs_distances(G.adj, 0) == [0, 1, 2, 3]
    assert bfs_eccentricity(G.adj, 1) == 2
    assert diameter(G.adj) == 3
    with pytest.raises(ValueError):
        bfs_distances(G.adj, 7)


def test_disconnected_raises():
    adj = [[1], [0], []]
    assert bfs_distances(adj, 0) == [0, 1, -1]
    with pytest.raises(ValueError):
        bfs_eccentricity(adj, 0)
    with pytest.raises(ValueError):
        diameter(adj)
    assert not is_connected(adj)
    assert not is_connected([])  # empty graph counts as not connected
    with pytest.raises(ValueError):
        diameter([])


def test_regular_connected():
    G = octahedron()
    assert is_regular(G.adj, 4)
    assert not is_regular(G.adj, 3)
    assert is_connected(G.adj)
    assert diameter(G.adj) == 2 == diameter_oracle(G.adj)


def test_graph_image_identity_and_collapse():
    G = octahedron()
    H = graph_image(G, lambda l: l)
    assert H.adj == G.adj and H.labels == G.labels
    # everything to one point: a single vertex, no edges (loops dropped)
    H1 = graph_image(G, lambda l: 0)
    assert H1.adj == [[]] and H1.labels == [0]


def test_graph_image_antipodal_quotient():
    G = octahedron()
    H = graph_image(G, lambda l: tuple(abs(x) for x in l))
    assert H.labels == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert H.adj == [[1, 2], [0, 2], [0, 1]]  # the triangle
    labels, edges = image_graph_oracle(G.labels, G.adj,
                                       lambda l: tuple(abs(x) for x in l))
    assert labels == H.labels
    assert edges == set(edge_list(H.adj))


def test_check_sub_gisof_identity_and_failures():
    H = octahedron()
    assert check_sub_gisof(H, H)
    # empty candidate
    assert not check_sub_gisof(LabeledGraph([], []), H)
    # missing label
    G = LabeledGraph([[]], [(9, 9, 9)])
    assert not check_sub_gisof(G, H)
    # proper subgraph: neighbourhood equality fails
    G2 = LabeledGraph([[1], [0]], [H.labels[0], H.labels[1]])
    assert not check_sub_gisof(G2, H)
    # H disconnected
    H2 = LabeledGraph([[1], [0], []], ["a", "b", "c"])
    G3 = LabeledGraph([[1], [0]], ["a", "b"])
    assert not check_sub_gisof(G3, H2)


def test_check_sub_gisof_detects_dropped_edge():
    H = octahedron()
    G = LabeledGraph([list(nb) for nb in H.adj], list(H.labels))
    G.adj[0].remove(1)
    G.adj[1].remove(0)
    assert not check_sub_gisof(G, H)


@st.composite
def connected_graphs(draw):
    k = draw(st.integers(min_value=1, max_value=8))
    adj = [set() for _ in range(k)]
    for v in range(1, k):  # random spanning tree
        u = draw(st.integers(min_value=0, max_value=v - 1))
        adj[u].add(v)
        adj[v].add(u)
    extra = draw(st.lists(
        st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)), max_size=6))
    for a, b in extra:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return LabeledGraph([sorted(s) for s in adj], list(range(k)))


@given(connected_graphs())
@settings(max_examples=50)
def test_sub_gisof_on_random_connected(G):
    assert validate_graph(G)
    assert is_connected(G.adj)
    assert check_sub_gisof(G, G)
    # BFS eccentricity from 0 agrees with the all-pairs oracle row
    d = floyd_warshall(G.adj)[0]
    assert bfs_eccentricity(G.adj, 0) == max(d)
