"""Plain graph machinery shared by the enumerator and the checker.

Graphs are adjacency arrays: vertex i has the sorted list adj[i] of its
neighbours.  A LabeledGraph pairs the adjacency with a sorted array of
distinct labels, so vertex identity is positional and label lookup is a
binary search.  Everything here is deliberately free of polytope code.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field


@dataclass
class LabeledGraph:
    """Adjacency lists plus strictly increasing per-vertex labels."""

    adj: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def vertex_count(self) -> int:
        return len(self.adj)

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def index_of(self, label):
        """Position of a label, or -1 when absent (binary search)."""
        k = bisect_left(self.labels, label)
        if k < len(self.labels) and self.labels[k] == label:
            return k
        return -1


def graph_violation(G: LabeledGraph):
    """None when G is well formed, else a short reason string."""
    V = len(G.adj)
    if len(G.labels) != V:
        return f"label count {len(G.labels)} != vertex count {V}"
    for i in range(1, V):
        if not G.labels[i - 1] < G.labels[i]:
            return f"labels not strictly increasing at position {i}"
    for i, nb in enumerate(G.adj):
        last = -1
        for j in nb:
            if not isinstance(j, int) or j < 0 or j >= V:
                return f"vertex {i}: neighbour {j!r} out of range"
            if j == i:
                return f"vertex {i}: self loop"
            if j <= last:
                return f"vertex {i}: neighbour list not strictly increasing"
            last = j
    for i, nb in enumerate(G.adj):
        for j in nb:
            # symmetry; neighbour lists are sorted so binary search works
            k = bisect_left(G.adj[j], i)
            if k == len(G.adj[j]) or G.adj[j][k] != i:
                return f"edge {i}-{j} missing its mirror"
    return None


def validate_graph(G: LabeledGraph) -> bool:
    return graph_violation(G) is None


def edge_list(adj) -> list:
    """Sorted list of edges as pairs (i, j) with i < j."""
    return [(i, j) for i, nb in enumerate(adj) for j in nb if i < j]


def bfs_distances(adj, src: int) -> list:
    """Hop distances from src; unreachable vertices get -1."""
    if src < 0 or src >= len(adj):
        raise ValueError(f"source {src} out of range")
    dist = [-1] * len(adj)
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def bfs_eccentricity(adj, src: int) -> int:
    """Largest hop distance from src; raises if any vertex is unreachable."""
    dist = bfs_distances(adj, src)
    ecc = 0
    for d in dist:
        if d < 0:
            raise ValueError("graph is not connected")
        if d > ecc:
            ecc = d
    return ecc


def diameter(adj) -> int:
    """Exact diameter by BFS from every vertex; raises when not connected."""
    if not adj:
        raise ValueError("diameter of empty graph")
    return max(bfs_eccentricity(adj, v) for v in range(len(adj)))


def is_regular(adj, k: int) -> bool:
    return all(len(nb) == k for nb in adj)


def is_connected(adj) -> bool:
    """Single BFS cover test; the empty graph counts as not connected."""
    if not adj:
        return False
    return all(d >= 0 for d in bfs_distances(adj, 0))


def graph_image(G: LabeledGraph, f) -> LabeledGraph:
    """Image of G under a label map f: labels are f(old label), deduplicated
    and sorted; edges are induced, with collapsed edges dropped."""
    mapped = [f(lbl) for lbl in G.labels]
    new_labels = sorted(set(mapped))
    pos = {lbl: k for k, lbl in enumerate(new_labels)}
    where = [pos[lbl] for lbl in mapped]
    nbsets = [set() for _ in new_labels]
    for i, nb in enumerate(G.adj):
        a = where[i]
        for j in nb:
            b = where[j]
            if a != b:
                nbsets[a].add(b)
    return LabeledGraph([sorted(s) for s in nbsets], new_labels)


def check_sub_gisof(G: LabeledGraph, H: LabeledGraph) -> bool:
    """Subgraph-with-full-neighbourhoods test.

    True iff G is nonempty, every label of G occurs in H, the mapped
    neighbourhood of each G-vertex equals the H-neighbourhood of its image
    exactly, and H is connected.  Together these force the embedding to be
    onto, i.e. G and H are isomorphic as labelled graphs.
    """
    if len(G.adj) == 0:
        return False
    where = []
    for lbl in G.labels:
        k = H.index_of(lbl)
        if k < 0:
            return False
        where.append(k)
    for i, nb in enumerate(G.adj):
        image = sorted(where[j] for j in nb)
        if image != list(H.adj[where[i]]):
            return False
    return is_connected(H.adj)
