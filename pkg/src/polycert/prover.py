"""Certificate construction (the untrusted side).

Everything here may be arbitrarily clever or arbitrarily buggy; the
verifier re-derives each claim from scratch.  The centre piece is the
breadth-first enumeration of the lex graph: vertices are the
lexicographically feasible bases, and from each basis every one of its n
rows leaves in turn, the entering row being fixed by the lexicographic
ratio rule.  Perturbation makes that entering row unique, so the graph is
n-regular and the walk needs no anti-cycling care.
"""

from __future__ import annotations

from .exactnum import Rat, mat_inverse, solve_exact, transpose
from .graphcore import LabeledGraph, bfs_eccentricity
from .polytope import (Basis, HPolytope, check_basis, is_lex_feasible,
                       pert_basic_point, perturb, row_submatrix)
from .verifier import (BoundednessWitness, CertificateBundle, DimensionWitness,
                       MorphismWitness)


class EnumerationError(Exception):
    """Enumeration cannot proceed: bad start, ratio tie, unbounded ray,
    or a witness that provably cannot exist."""


def _colex_subsets(m: int, n: int):
    """Size-n subsets of range(m) in colexicographic order."""
    if n == 0:
        yield ()
        return
    for top in range(n - 1, m):
        for rest in _colex_subsets(top, n - 1):
            yield rest + (top,)


def find_initial_basis(P: HPolytope, B, hint=None) -> Basis:
    """A lex-feasible basis to start from.

    With a hint, the hint is validated and returned (a wrong hint is an
    error, not a fallback).  Without one, n-subsets are scanned in
    colexicographic order until a lex-feasible basis turns up.
    """
    if hint is not None:
        I = check_basis(hint, P.m, P.n)
        X = pert_basic_point(P, B, I)
        if X is None:
            raise EnumerationError(f"hint basis {I}: submatrix is singular")
        if not is_lex_feasible(P, B, I, X):
            raise EnumerationError(f"hint basis {I} is not lex-feasible")
        return I
    for I in _colex_subsets(P.m, P.n):
        X = pert_basic_point(P, B, I)
        if X is not None and is_lex_feasible(P, B, I, X):
            return I
    raise EnumerationError("no feasible basis found; empty polytope?")


def _ratio_cmp(su, nu, sv, nv) -> int:
    """Compare su/nu with sv/nv lexicographically; -1, 0 or 1.

    The rows are sparse sorted (column, value) lists with no stored zeros
    and nu, nv > 0, so cross-multiplying avoids any division.
    """
    iu = iv = 0
    lu, lv = len(su), len(sv)
    while iu < lu or iv < lv:
        cu = su[iu][0] if iu < lu else -1
        cv = sv[iv][0] if iv < lv else -1
        if cv < 0 or (cu >= 0 and cu < cv):
            return -1 if su[iu][1] < 0 else 1
        if cu < 0 or cv < cu:
            return 1 if sv[iv][1] < 0 else -1
        lhs = su[iu][1] * nv
        rhs = sv[iv][1] * nu
        if lhs != rhs:
            return -1 if lhs < rhs else 1
        iu += 1
        iv += 1
    return 0


def _pivot_targets(P: HPolytope, B, I, X):
    """For each leaving position r, the entering row chosen by the
    lexicographic ratio rule.  Returns a list of n row indices.

    Works entirely from the stored point X: the edge direction for leaving
    row I[r] is -X[:, 1+I[r]], so the slack decrease rates are read off the
    products A X on the support columns.
    """
    m, n = P.m, P.n
    A = P.A
    sup = [0] + [1 + i for i in I]
    xcols = [[X[j][c] for j in range(n)] for c in sup]
    inbase = set(I)
    prod = {}
    slack = {}
    for i in range(m):
        if i in inbase:
            continue
        Arow = A[i]
        row = [sum((Arow[j] * col[j] for j in range(n)), Rat(0))
               for col in xcols]
        prod[i] = row
        # sparse slack row: support entries minus rhs, plus the +1 at 1+i
        s = []
        v0 = row[0] - B[i][0]
        if v0:
            s.append((0, v0))
        placed = False
        for k in range(n):
            c = sup[1 + k]
            if not placed and 1 + i < c:
                s.append((1 + i, Rat(1)))
                placed = True
            if row[1 + k]:
                s.append((c, row[1 + k]))
        if not placed:
            s.append((1 + i, Rat(1)))
        slack[i] = s
    targets = []
    for r in range(n):
        best = None
        best_s = best_n = None
        tie = False
        for i, row in prod.items():
            na = row[1 + r]
            if na <= 0:
                continue  # not a blocking row for this direction
            if best is None:
                best, best_s, best_n = i, slack[i], na
                continue
            c = _ratio_cmp(slack[i], na, best_s, best_n)
            if c < 0:
                best, best_s, best_n = i, slack[i], na
                tie = False
            elif c == 0:
                tie = True
        if best is None:
            raise EnumerationError(
                f"basis {I}: leaving row {I[r]} gives an unbounded ray; "
                "input is not a bounded polytope?")
        if tie:
            raise EnumerationError(
                f"basis {I}: ratio tie while leaving row {I[r]}; "
                "perturbation nondegeneracy violated")
        targets.append(best)
    return targets


def pivot_step(P: HPolytope, B, I, leave: int, X=None) -> Basis:
    """The neighbouring basis reached by letting row `leave` (an element
    of I) exit, per the lexicographic ratio rule."""
    I = check_basis(I, P.m, P.n)
    if leave not in I:
        raise ValueError(f"leaving row {leave} is not in the basis")
    if X is None:
        X = pert_basic_point(P, B, I)
        if X is None:
            raise EnumerationError(f"basis {I}: submatrix is singular")
    r = I.index(leave)
    j = _pivot_targets(P, B, I, X)[r]
    return tuple(sorted(set(I) - {leave} | {j}))


def pivot_step_brute(P: HPolytope, B, I, leave: int) -> Basis:
    """Reference pivot: try every replacement row and keep the one giving
    a lex-feasible basis.  Exactly one must exist."""
    I = check_basis(I, P.m, P.n)
    if leave not in I:
        raise ValueError(f"leaving row {leave} is not in the basis")
    rest = set(I) - {leave}
    found = []
    for j in range(P.m):
        if j in I:
            continue
        J = tuple(sorted(rest | {j}))
        X = pert_basic_point(P, B, J)
        if X is not None and is_lex_feasible(P, B, J, X):
            found.append(J)
    if len(found) != 1:
        raise EnumerationError(
            f"basis {I}, leaving row {leave}: {len(found)} lex-feasible "
            "replacements, expected exactly 1")
    return found[0]


def basis_neighbors(P: HPolytope, B, I, method: str = "ratio"):
    """All n neighbours of a lex-feasible basis, sorted.

    method="ratio" is the production path; method="brute" retries every
    replacement row per leaving index and must agree (kept as the slow
    reference for equivalence tests).
    """
    I = check_basis(I, P.m, P.n)
    if method == "ratio":
        X = pert_basic_point(P, B, I)
        if X is None:
            raise EnumerationError(f"basis {I}: submatrix is singular")
        targets = _pivot_targets(P, B, I, X)
        out = [tuple(sorted(set(I) - {I[r]} | {targets[r]}))
               for r in range(P.n)]
    elif method == "brute":
        out = [pivot_step_brute(P, B, I, leave) for leave in I]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(out)


def enumerate_lex_graph(P: HPolytope, B, I0) -> LabeledGraph:
    """Breadth-first closure of the pivot relation from a lex-feasible
    start.  Labels are (basis, perturbed point) pairs, sorted by basis."""
    I0 = check_basis(I0, P.m, P.n)
    X0 = pert_basic_point(P, B, I0)
    if X0 is None or not is_lex_feasible(P, B, I0, X0):
        raise EnumerationError(f"starting basis {I0} is not lex-feasible")
    disc = {I0: X0}
    nbrs = {}
    queue = [I0]
    qk = 0
    while qk < len(queue):
        I = queue[qk]
        qk += 1
        X = disc[I]
        targets = _pivot_targets(P, B, I, X)
        out = []
        for r in range(P.n):
            J = tuple(sorted(set(I) - {I[r]} | {targets[r]}))
            out.append(J)
            if J not in disc:
                XJ = pert_basic_point(P, B, J)
                if XJ is None or not is_lex_feasible(P, B, J, XJ):
                    raise EnumerationError(
                        f"pivot from {I} reached infeasible basis {J}")
                disc[J] = XJ
                queue.append(J)
        nbrs[I] = out
    order = sorted(disc)
    pos = {I: k for k, I in enumerate(order)}
    labels = [(I, tuple(tuple(row) for row in disc[I])) for I in order]
    adj = [sorted(pos[J] for J in nbrs[I]) for I in order]
    return LabeledGraph(adj, labels)


def quotient_to_vertex_graph(Glex: LabeledGraph):
    """Collapse bases with equal unperturbed points.

    Returns the vertex graph (labels are the points, as coordinate tuples)
    plus the morphism data the verifier re-checks: per-basis images, one
    preimage per vertex, one lex preimage per vertex edge.
    """
    if not Glex.labels:
        raise EnumerationError("empty lex graph has no vertex quotient")
    points = [tuple(row[0] for row in X) for _, X in Glex.labels]
    vlabels = sorted(set(points))
    pos = {p: k for k, p in enumerate(vlabels)}
    morph = [pos[p] for p in points]
    morph_inv = [-1] * len(vlabels)
    for i in range(len(morph) - 1, -1, -1):
        morph_inv[morph[i]] = i
    nbsets = [set() for _ in vlabels]
    edge_inv_map = {}
    for i, nb in enumerate(Glex.adj):
        a = morph[i]
        for j in nb:
            if j <= i:
                continue
            b = morph[j]
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            nbsets[key[0]].add(key[1])
            nbsets[key[1]].add(key[0])
            if key not in edge_inv_map:
                edge_inv_map[key] = (i, j) if a < b else (j, i)
    vadj = [sorted(s) for s in nbsets]
    edge_inv = [edge_inv_map[(a, b)]
                for a, nb in enumerate(vadj) for b in nb if a < b]
    return (LabeledGraph(vadj, vlabels),
            MorphismWitness(morph, morph_inv, edge_inv))


def make_dimension_witness(Gvert: LabeledGraph, n: int) -> DimensionWitness:
    """Pick n vertices affinely independent from vertex 0 (greedy rank
    growth) and store the exact inverse of the difference matrix."""
    labels = Gvert.labels
    if not labels:
        raise EnumerationError("empty vertex graph")
    v0 = labels[0]
    echelon = []  # rows with recorded pivot columns
    chosen = []
    for k in range(1, len(labels)):
        d = [labels[k][j] - v0[j] for j in range(n)]
        for pc, row in echelon:
            if d[pc]:
                f = d[pc] / row[pc]
                d = [a - f * b for a, b in zip(d, row)]
        pc = next((j for j in range(n) if d[j]), -1)
        if pc < 0:
            continue
        echelon.append((pc, d))
        chosen.append(k)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise EnumerationError(
            f"only {len(chosen) + 1} affinely independent vertices; "
            "polytope is not full-dimensional")
    M = [[labels[c][j] - v0[j] for c in chosen] for j in range(n)]
    inv = mat_inverse(M)
    if inv is None:  # cannot happen after rank selection; belt and braces
        raise EnumerationError("difference matrix unexpectedly singular")
    return DimensionWitness(0, chosen, inv)


def _dual_row_from_graph(P, lexgraph, i, s):
    """Scan stored bases for y >= 0 with y^T A = s e_i, support inside one
    basis.  The multipliers are read straight off the stored point: for a
    basis I with point X, row i of -X[:, 1+I] is the candidate.

    The lex-optimal basis for objective s x_i qualifies, so a scan over
    all lex-feasible bases must succeed on bounded input.
    """
    for I, X in lexgraph.labels:
        vals = [-s * X[i][1 + ik] for ik in I]
        if all(v >= 0 for v in vals):
            y = [Rat(0)] * P.m
            for k, ik in enumerate(I):
                y[ik] = Rat(vals[k])
            return y
    return None


def _dual_row_by_scan(P, i, s):
    """Fallback without a lex graph: scan n-subsets in colex order for a
    nonnegative solution of A_J^T y = s e_i."""
    rhs = [[Rat(0)] for _ in range(P.n)]
    rhs[i][0] = Rat(s)
    for J in _colex_subsets(P.m, P.n):
        sol = solve_exact(transpose(row_submatrix(P.A, J)), rhs)
        if sol is None:
            continue
        if all(row[0] >= 0 for row in sol):
            y = [Rat(0)] * P.m
            for k, jk in enumerate(J):
                y[jk] = sol[k][0]
            return y
    return None


def make_boundedness_witness(P: HPolytope, lexgraph=None) -> BoundednessWitness:
    """One nonnegative combination per coordinate and sign, plus the box
    bound K = 1 + max |y^T b|.  With a lex graph at hand the rows come from
    stored basis inverses; otherwise from a subset scan."""
    combos = []
    for i in range(P.n):
        for s in (1, -1):
            if lexgraph is not None:
                y = _dual_row_from_graph(P, lexgraph, i, s)
            else:
                y = _dual_row_by_scan(P, i, s)
            if y is None:
                raise EnumerationError(
                    f"no nonnegative combination yields {s:+d}*e_{i}; "
                    "unbounded polyhedron?")
            combos.append((i, s, y))
    K = Rat(1) + max(abs(sum((a * b for a, b in zip(y, P.b)), Rat(0)))
                     for _, _, y in combos)
    return BoundednessWitness(combos, K)


def pick_diameter_start(Gvert: LabeledGraph) -> int:
    """Vertex of maximal eccentricity (smallest index wins ties), so the
    certified lower bound equals the exact diameter."""
    if not Gvert.adj:
        raise EnumerationError("empty vertex graph")
    best, arg = -1, 0
    for v in range(len(Gvert.adj)):
        e = bfs_eccentricity(Gvert.adj, v)
        if e > best:
            best, arg = e, v
    return arg


def build_certificates(P: HPolytope, basis_hint=None,
                       start=None) -> CertificateBundle:
    """Full pipeline: initial basis, lex graph, vertex quotient, dimension
    and boundedness witnesses, start vertex."""
    B = perturb(P)
    I0 = find_initial_basis(P, B, basis_hint)
    Glex = enumerate_lex_graph(P, B, I0)
    Gvert, mw = quotient_to_vertex_graph(Glex)
    dim = make_dimension_witness(Gvert, P.n)
    bnd = make_boundedness_witness(P, Glex)
    if start is None:
        start = pick_diameter_start(Gvert)
    elif not (isinstance(start, int) and 0 <= start < len(Gvert.adj)):
        raise ValueError(f"start vertex {start!r} out of range")
    return CertificateBundle(P, Glex, Gvert, mw, dim, bnd, start)
