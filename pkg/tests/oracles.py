"""Brute-force reference implementations.

Everything here deliberately avoids the production algorithms: feasible
bases come from exhaustive subset scans instead of pivoting, shortest
paths from Floyd-Warshall instead of BFS, image graphs from plain set
algebra.  Slow and obvious, by design.
"""

import itertools

from polycert.exactnum import Rat
from polycert.polytope import (basic_point, is_lex_feasible, pert_basic_point,
                               perturb)


def classic_feasible_point(P, x) -> bool:
    for i in range(P.m):
        v = sum((a * b for a, b in zip(P.A[i], x)), Rat(0))
        if v < P.b[i]:
            return False
    return True


def all_feasible_bases(P):
    """Every n-subset with nonsingular submatrix and feasible basic point."""
    out = []
    for I in itertools.combinations(range(P.m), P.n):
        x = basic_point(P, I)
        if x is not None and classic_feasible_point(P, x):
            out.append(I)
    return out


def all_lex_feasible_bases(P):
    """Exhaustive scan for lex-feasible bases.

    Classic feasibility is checked first purely as a shortcut: any
    lex-feasible basis is feasible, so the filter drops nothing.
    """
    B = perturb(P)
    out = []
    for I in itertools.combinations(range(P.m), P.n):
        x = basic_point(P, I)
        if x is None or not classic_feasible_point(P, x):
            continue
        X = pert_basic_point(P, B, I)
        if X is not None and is_lex_feasible(P, B, I, X):
            out.append(I)
    return out


def lex_edges_from_bases(bases):
    """Edges of the lex graph, from the basis list alone: two bases are
    adjacent iff they share all but one row.  Grouping by dropped row keeps
    this near-linear."""
    groups = {}
    for I in bases:
        for k in range(len(I)):
            groups.setdefault(I[:k] + I[k + 1:], []).append(I)
    edges = set()
    for members in groups.values():
        for I, J in itertools.combinations(members, 2):
            edges.add((I, J) if I < J else (J, I))
    return sorted(edges)


def entering_scan(P, B, I, leave):
    """All lex-feasible bases reachable from I by swapping out `leave`."""
    rest = set(I) - {leave}
    found = []
    for j in range(P.m):
        if j in I:
            continue
        J = tuple(sorted(rest | {j}))
        X = pert_basic_point(P, B, J)
        if X is not None and is_lex_feasible(P, B, J, X):
            found.append(J)
    return found


def floyd_warshall(adj):
    """All-pairs hop distances; None marks unreachable pairs."""
    V = len(adj)
    INF = V + 1
    d = [[0 if i == j else INF for j in range(V)] for i in range(V)]
    for i, nb in enumerate(adj):
        for j in nb:
            d[i][j] = 1
    for k in range(V):
        dk = d[k]
        for i in range(V):
            di = d[i]
            ik = di[k]
            if ik >= INF:
                continue
            for j in range(V):
                alt = ik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return [[None if x >= INF else x for x in row] for row in d]


def diameter_oracle(adj):
    d = floyd_warshall(adj)
    best = 0
    for row in d:
        for x in row:
            if x is None:
                raise ValueError("graph is not connected")
            best = max(best, x)
    return best


def image_graph_oracle(labels, adj, f):
    """Image graph by set algebra: returns (sorted labels, edge set)."""
    new_labels = sorted({f(l) for l in labels})
    pos = {l: k for k, l in enumerate(new_labels)}
    edges = set()
    for i, nb in enumerate(adj):
        for j in nb:
            a, b = pos[f(labels[i])], pos[f(labels[j])]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return new_labels, edges
