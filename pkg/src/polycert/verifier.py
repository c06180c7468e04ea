"""Independent re-checking of certificate bundles.

This is the trusted side of the toolkit.  It owns the certificate schema
(the witness records and the bundle) and re-derives every claim from the
polytope data alone: the enumerator is never imported here, so a bug there
cannot leak into a check.  Stages run in a fixed order and the first
failure wins:

    WellFormed -> EnumAlgo -> ImgGraph -> Bounded -> DimFull -> Diameter

and on top of those, the Hirsch audit compares the certified diameter
lower bound against facets - dimension.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum

from .exactnum import Rat, vec_mat_mul
from .graphcore import (LabeledGraph, bfs_eccentricity, edge_list,
                        graph_violation)
from .polytope import HPolytope, perturb


class Stage(str, Enum):
    WELL_FORMED = "WellFormed"
    ENUM_ALGO = "EnumAlgo"
    IMG_GRAPH = "ImgGraph"
    BOUNDED = "Bounded"
    DIM_FULL = "DimFull"
    DIAMETER = "Diameter"
    HIRSCH = "Hirsch"

    def __str__(self):
        return self.value


# stages re-run by certify, in order; the audit itself comes after
CHECK_STAGES = (Stage.WELL_FORMED, Stage.ENUM_ALGO, Stage.IMG_GRAPH,
                Stage.BOUNDED, Stage.DIM_FULL, Stage.DIAMETER)


@dataclass
class MorphismWitness:
    """Data certifying that the vertex graph is the image of the lex graph
    under 'forget the perturbation': per-lex-vertex targets, one preimage
    per vertex, and one lex preimage per vertex-graph edge."""

    morph: list
    morph_inv: list
    edge_inv: list


@dataclass
class DimensionWitness:
    """n vertices v^1..v^n plus an origin v^0 and the exact inverse of the
    difference matrix [v^1 - v^0 | ... | v^n - v^0]."""

    origin: int
    map_lbl: list
    inv_lbl: list


@dataclass
class BoundednessWitness:
    """Nonnegative row combinations y with y^T A = s e_i for every
    coordinate i and sign s, plus a common box bound K."""

    combos: list
    K: Rat = field(default_factory=lambda: Rat(0))


@dataclass
class CertificateBundle:
    polytope: HPolytope
    lexgraph: LabeledGraph
    vertgraph: LabeledGraph
    morphism: MorphismWitness
    dimension: DimensionWitness
    boundedness: BoundednessWitness
    start: int


@dataclass
class Verdict:
    passed: bool
    stage: Stage
    detail: str
    numbers: dict


@dataclass
class StageResult:
    stage: Stage
    passed: bool
    detail: str
    seconds: float


# ---------------------------------------------------------------- WellFormed

def _well_formed_reason(C: CertificateBundle):
    P = C.polytope
    m, n = P.m, P.n
    r = graph_violation(C.lexgraph)
    if r is not None:
        return f"lex graph: {r}"
    r = graph_violation(C.vertgraph)
    if r is not None:
        return f"vertex graph: {r}"
    for u, lbl in enumerate(C.lexgraph.labels):
        if not (isinstance(lbl, tuple) and len(lbl) == 2):
            return f"lex label {u}: not a (basis, point) pair"
        I, X = lbl
        last = -1
        for i in I:
            if not isinstance(i, int) or i < 0 or i >= m:
                return f"lex label {u}: basis index {i!r} out of range"
            if i <= last:
                return f"lex label {u}: basis not strictly increasing"
            last = i
        if len(X) != n or any(len(row) != 1 + m for row in X):
            return f"lex label {u}: point is not {n} x {1 + m}"
    for v, lbl in enumerate(C.vertgraph.labels):
        if len(lbl) != n:
            return f"vertex label {v}: length {len(lbl)}, expected {n}"
    LV = len(C.lexgraph.adj)
    VV = len(C.vertgraph.adj)
    w = C.morphism
    if len(w.morph) != LV:
        return f"morph has {len(w.morph)} entries, expected {LV}"
    for i, v in enumerate(w.morph):
        if not isinstance(v, int) or v < 0 or v >= VV:
            return f"morph[{i}] = {v!r} out of range"
    if len(w.morph_inv) != VV:
        return f"morph_inv has {len(w.morph_inv)} entries, expected {VV}"
    for v, i in enumerate(w.morph_inv):
        if not isinstance(i, int) or i < 0 or i >= LV:
            return f"morph_inv[{v}] = {i!r} out of range"
    vedges = edge_list(C.vertgraph.adj)
    if len(w.edge_inv) != len(vedges):
        return (f"edge_inv has {len(w.edge_inv)} entries, expected "
                f"{len(vedges)} (one per vertex-graph edge)")
    for k, pair in enumerate(w.edge_inv):
        if len(pair) != 2:
            return f"edge_inv[{k}]: not a pair"
        for i in pair:
            if not isinstance(i, int) or i < 0 or i >= LV:
                return f"edge_inv[{k}]: index {i!r} out of range"
    d = C.dimension
    if not isinstance(d.origin, int) or not 0 <= d.origin < VV:
        return f"dimension origin {d.origin!r} out of range"
    if len(d.map_lbl) != n:
        return f"dimension witness has {len(d.map_lbl)} vertices, expected {n}"
    for k in d.map_lbl:
        if not isinstance(k, int) or k < 0 or k >= VV:
            return f"dimension witness index {k!r} out of range"
    if len(d.inv_lbl) != n or any(len(row) != n for row in d.inv_lbl):
        return "dimension witness matrix is not n x n"
    bw = C.boundedness
    if len(bw.combos) != 2 * n:
        return f"boundedness witness has {len(bw.combos)} rows, expected {2 * n}"
    seen = set()
    for k, combo in enumerate(bw.combos):
        if len(combo) != 3:
            return f"boundedness combo {k}: not an (i, s, y) triple"
        i, s, y = combo
        if not isinstance(i, int) or i < 0 or i >= n:
            return f"boundedness combo {k}: coordinate {i!r} out of range"
        if s not in (1, -1):
            return f"boundedness combo {k}: sign {s!r}"
        if (i, s) in seen:
            return f"boundedness combo {k}: duplicate target ({i}, {s:+d})"
        seen.add((i, s))
        if len(y) != m:
            return f"boundedness combo {k}: y has length {len(y)}, expected {m}"
    if not isinstance(C.start, int) or not 0 <= C.start < VV:
        return f"start vertex {C.start!r} out of range"
    return None


def verify_well_formed(C: CertificateBundle) -> bool:
    return _well_formed_reason(C) is None


# ------------------------------------------------------------------ EnumAlgo

def _check_lex_vertex(A, B, adj, labels, u, m, n):
    """The five per-vertex checks; returns a reason or None."""
    I, X = labels[u]
    if len(I) != n:
        return f"vertex {u}: basis has {len(I)} rows, expected {n}"
    # support columns of the stored point (verified, never assumed)
    sup = set()
    for j in range(n):
        row = X[j]
        for c in range(1 + m):
            if row[c]:
                sup.add(c)
    # A_I X = B_I on every column where either side can be nonzero
    for i in I:
        Arow = A[i]
        Brow = B[i]
        for c in sorted(sup | {0, 1 + i}):
            v = sum((Arow[j] * X[j][c] for j in range(n)), Rat(0))
            if v != Brow[c]:
                return f"vertex {u}: A_I X differs from rhs at row {i}, column {c}"
    # lexicographic feasibility of every row
    for i in range(m):
        Arow = A[i]
        Brow = B[i]
        for c in range(1 + m):
            v = (sum((Arow[j] * X[j][c] for j in range(n)), Rat(0))
                 if c in sup else 0)
            t = Brow[c]
            if v != t:
                if v < t:
                    return f"vertex {u}: row {i} lexicographically infeasible"
                break
    if len(adj[u]) != n:
        return f"vertex {u}: degree {len(adj[u])}, expected {n}"
    for w in adj[u]:
        J = labels[w][0]
        if len(set(I) & set(J)) != n - 1:
            return f"vertex {u}: neighbour {w} does not share n-1 basis rows"
    return None


def _enum_algo_reason(P: HPolytope, B, G: LabeledGraph, threads: int = 1):
    m, n = P.m, P.n
    V = len(G.adj)
    if V == 0:
        return "lex graph is empty"
    A = P.A
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        def run(chunk):
            for u in chunk:
                r = _check_lex_vertex(A, B, G.adj, G.labels, u, m, n)
                if r is not None:
                    return r
            return None

        step = max(1, (V + threads - 1) // threads)
        chunks = [range(k, min(k + step, V)) for k in range(0, V, step)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for r in ex.map(run, chunks):
                if r is not None:
                    return r
        return None
    for u in range(V):
        r = _check_lex_vertex(A, B, G.adj, G.labels, u, m, n)
        if r is not None:
            return r
    return None


def enum_algo(P: HPolytope, B, G: LabeledGraph, threads: int = 1) -> bool:
    """Re-check the enumerated lex graph: basis size, A_I X = rhs_I,
    lex feasibility of all rows, n-regularity, and the n-1 shared rows
    condition on every edge."""
    return _enum_algo_reason(P, B, G, threads) is None


# ------------------------------------------------------------------ ImgGraph

def _img_reason(Glex: LabeledGraph, Gvert: LabeledGraph, w: MorphismWitness):
    n_lex = len(Glex.adj)
    if n_lex == 0 or len(Gvert.adj) == 0:
        return "empty graph"
    targets = []
    for i, (I, X) in enumerate(Glex.labels):
        vlbl = tuple(row[0] for row in X)
        if vlbl != Gvert.labels[w.morph[i]]:
            return (f"lex vertex {i}: point does not match the label of "
                    f"vertex {w.morph[i]}")
        targets.append(w.morph[i])
    for v, i in enumerate(w.morph_inv):
        if targets[i] != v:
            return f"morph_inv[{v}] maps to lex vertex {i} with image {targets[i]}"
    for i, nb in enumerate(Glex.adj):
        a = targets[i]
        for j in nb:
            if j <= i:
                continue
            b = targets[j]
            if a == b:
                continue  # edge collapsed by the quotient
            lo, hi = (a, b) if a < b else (b, a)
            k = bisect_left(Gvert.adj[lo], hi)
            if k == len(Gvert.adj[lo]) or Gvert.adj[lo][k] != hi:
                return f"lex edge {i}-{j} maps to missing edge {lo}-{hi}"
    vedges = edge_list(Gvert.adj)
    for k, (a, b) in enumerate(vedges):
        i, j = w.edge_inv[k]
        pos = bisect_left(Glex.adj[i], j)
        if pos == len(Glex.adj[i]) or Glex.adj[i][pos] != j:
            return f"edge_inv for {a}-{b} names the non-edge {i}-{j}"
        if targets[i] != a or targets[j] != b:
            return f"edge_inv for {a}-{b} maps to {targets[i]}-{targets[j]}"
    return None


def img_lex_graph(Glex: LabeledGraph, Gvert: LabeledGraph,
                  w: MorphismWitness) -> bool:
    """Check that forgetting the perturbation maps the lex graph onto the
    vertex graph: labels match through morph, morph_inv hits every vertex,
    lex edges map to vertex edges or collapse, and every vertex edge has
    the lex preimage recorded in edge_inv."""
    return _img_reason(Glex, Gvert, w) is None


# ------------------------------------------------------------------- Bounded

def _bounded_reason(P: HPolytope, w: BoundednessWitness):
    m, n = P.m, P.n
    if w.K < 0:
        return f"negative box bound K = {w.K}"
    for k, (i, s, y) in enumerate(w.combos):
        for yi in y:
            if yi < 0:
                return f"combo {k} (target {s:+d}*e_{i}): negative multiplier"
        row = vec_mat_mul(y, P.A)
        for j in range(n):
            want = s if j == i else 0
            if row[j] != want:
                return (f"combo {k}: y^T A is not {s:+d}*e_{i} "
                        f"(coordinate {j} is {row[j]})")
        val = sum((a * b for a, b in zip(y, P.b)), Rat(0))
        if not val >= -w.K:
            return (f"combo {k}: bound fails, y^T b = {val} < -K = {-w.K}")
    return None


def bounded_Po_test(P: HPolytope, w: BoundednessWitness) -> bool:
    """Each combo proves s*x_i = y^T A x >= y^T b >= -K on the polytope,
    so all coordinates lie in [-K, K] and the polytope is bounded."""
    return _bounded_reason(P, w) is None


# ------------------------------------------------------------------- DimFull

def _dim_reason(Gvert: LabeledGraph, n: int, w: DimensionWitness):
    labels = Gvert.labels
    v0 = labels[w.origin]
    # columns are v^k - v^0; the witness matrix must invert this exactly
    for r in range(n):
        invrow = w.inv_lbl[r]
        for c in range(n):
            vk = labels[w.map_lbl[c]]
            v = sum((invrow[j] * (vk[j] - v0[j]) for j in range(n)), Rat(0))
            if v != (1 if r == c else 0):
                return (f"inverse check fails at entry ({r}, {c}); "
                        "difference matrix is not invertible as claimed")
    return None


def dim_full_test(Gvert: LabeledGraph, n: int, w: DimensionWitness) -> bool:
    """n+1 affinely independent vertices force dimension n; independence is
    certified by an exact inverse of the difference matrix."""
    return _dim_reason(Gvert, n, w) is None


# ------------------------------------------------------------------ Diameter

def diameter_lower_bound(C: CertificateBundle) -> int:
    """Eccentricity of the chosen start vertex in the certified vertex
    graph; raises ValueError when the graph is not connected."""
    return bfs_eccentricity(C.vertgraph.adj, C.start)


def exact_diameter(C: CertificateBundle) -> int:
    """All-sources BFS diameter of the certified vertex graph."""
    from .graphcore import diameter
    return diameter(C.vertgraph.adj)


# ------------------------------------------------------------------- drivers

def _numbers(C: CertificateBundle, dlb=None) -> dict:
    return {
        "m": C.polytope.m,
        "n": C.polytope.n,
        "vertices": len(C.vertgraph.adj),
        "edges": C.vertgraph.edge_count(),
        "diameter_lb": dlb,
    }


def certify_stages(C: CertificateBundle, threads: int = 1):
    """Run the six verification stages in order, stopping at the first
    failure.  Returns a list of StageResult."""
    results = []

    def run(stage, fn):
        t0 = time.perf_counter()
        reason = fn()
        dt = time.perf_counter() - t0
        results.append(StageResult(stage, reason is None, reason or "", dt))
        return reason is None

    if not run(Stage.WELL_FORMED, lambda: _well_formed_reason(C)):
        return results
    B = perturb(C.polytope)
    if not run(Stage.ENUM_ALGO,
               lambda: _enum_algo_reason(C.polytope, B, C.lexgraph, threads)):
        return results
    if not run(Stage.IMG_GRAPH,
               lambda: _img_reason(C.lexgraph, C.vertgraph, C.morphism)):
        return results
    if not run(Stage.BOUNDED, lambda: _bounded_reason(C.polytope, C.boundedness)):
        return results
    if not run(Stage.DIM_FULL,
               lambda: _dim_reason(C.vertgraph, C.polytope.n, C.dimension)):
        return results

    def diam_reason():
        try:
            diameter_lower_bound(C)
        except ValueError as e:
            return str(e)
        return None

    run(Stage.DIAMETER, diam_reason)
    return results


def hirsch_audit(C: CertificateBundle, threads: int = 1) -> Verdict:
    """Full pipeline: certify, then compare the diameter lower bound with
    the Hirsch quantity m - n.  The verdict passes exactly when the bound
    is beaten; a clean certificate of a Hirsch-obeying polytope reports
    stage Hirsch with passed=False and a 'holds' detail."""
    results = certify_stages(C, threads)
    last = results[-1]
    if not last.passed:
        return Verdict(False, last.stage, last.detail, _numbers(C))
    d = diameter_lower_bound(C)
    bound = C.polytope.m - C.polytope.n
    nums = _numbers(C, d)
    if d > bound:
        return Verdict(True, Stage.HIRSCH,
                       f"VIOLATED: diameter >= {d} > {bound} = m - n", nums)
    return Verdict(False, Stage.HIRSCH,
                   f"Hirsch holds here: diameter >= {d} <= {bound} = m - n",
                   nums)
