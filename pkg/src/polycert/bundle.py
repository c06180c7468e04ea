"""Certificate bundles on disk: one directory, plain text files.

    polytope.poly   the inequality system (m n header, rows of A | b)
    g_lex.txt       lex graph adjacency
    lbl_lex.txt     lex labels: basis row indices + perturbed point
    g_vert.txt      vertex graph adjacency
    lbl_vert.txt    vertex labels: one point per line
    morph.txt       lex vertex -> vertex-graph vertex
    morph_inv.txt   vertex-graph vertex -> lex preimage
    edge_inv.txt    per vertex-graph edge: its lex preimage edge
    dim.txt         dimension witness
    bounded.txt     boundedness witness
    start.txt       BFS start vertex
    manifest.txt    key=value summary, cross-checked at load

Counts always come first so every reader knows how much to expect.  A
missing file and a malformed file are different failures: the former is a
MissingBundleFileError (the certificate is incomplete), the latter a
BundleFormatError naming file and line.  Files may be gzip-compressed
(same name plus .gz); the readers handle that transparently.
"""

from __future__ import annotations

import gzip
import os

from .exactnum import rat_from_str
from .graphcore import LabeledGraph
from .polytope import format_poly, parse_poly, PolyFormatError
from .verifier import (BoundednessWitness, CertificateBundle, DimensionWitness,
                       MorphismWitness)

FILES = ("polytope.poly", "g_lex.txt", "lbl_lex.txt", "g_vert.txt",
         "lbl_vert.txt", "morph.txt", "morph_inv.txt", "edge_inv.txt",
         "dim.txt", "bounded.txt", "start.txt", "manifest.txt")

MANIFEST_FORMAT = "polycert-bundle-1"


class BundleError(Exception):
    pass


class MissingBundleFileError(BundleError):
    """A bundle file (plain or .gz) is absent."""


class BundleFormatError(BundleError):
    """A bundle file exists but cannot be parsed; message has file:line."""


def _read_text(dirpath, name) -> str:
    path = os.path.join(dirpath, name)
    if os.path.exists(path):
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    if os.path.exists(path + ".gz"):
        with gzip.open(path + ".gz", "rt", encoding="ascii") as fh:
            return fh.read()
    raise MissingBundleFileError(f"bundle file {name} not found in {dirpath}")


class _Lines:
    """Line cursor with file-position error reporting."""

    def __init__(self, name, text):
        self.name = name
        self.lines = text.splitlines()
        self.k = 0

    def fail(self, msg):
        raise BundleFormatError(f"{self.name}:{self.k}: {msg}")

    def next(self):
        while self.k < len(self.lines):
            ln = self.lines[self.k]
            self.k += 1
            if ln.strip():
                return ln
        self.k += 1
        self.fail("unexpected end of file")

    def ints(self, count=None):
        toks = self.next().split()
        if count is not None and len(toks) != count:
            self.fail(f"expected {count} integers, found {len(toks)}")
        try:
            return [int(t) for t in toks]
        except ValueError:
            self.fail("not an integer")

    def rats(self, count):
        toks = self.next().split()
        if len(toks) != count:
            self.fail(f"expected {count} rationals, found {len(toks)}")
        try:
            return [rat_from_str(t) for t in toks]
        except ValueError as e:
            self.fail(str(e))

    def done(self):
        while self.k < len(self.lines):
            if self.lines[self.k].strip():
                self.fail("trailing data")
            self.k += 1


def _write(dirpath, name, text):
    with open(os.path.join(dirpath, name), "w", encoding="ascii") as fh:
        fh.write(text)


def _format_adj(adj) -> str:
    out = [str(len(adj))]
    for nb in adj:
        out.append(" ".join([str(len(nb))] + [str(j) for j in nb]))
    return "\n".join(out) + "\n"


def _parse_adj(cur: _Lines):
    (V,) = cur.ints(1)
    if V < 0:
        cur.fail("negative vertex count")
    adj = []
    for _ in range(V):
        row = cur.ints()
        if not row or row[0] != len(row) - 1:
            cur.fail("degree does not match neighbour count")
        adj.append(row[1:])
    cur.done()
    return adj


def write_bundle(C: CertificateBundle, dirpath) -> None:
    os.makedirs(dirpath, exist_ok=True)
    P = C.polytope
    m, n = P.m, P.n
    _write(dirpath, "polytope.poly", format_poly(P))
    _write(dirpath, "g_lex.txt", _format_adj(C.lexgraph.adj))
    out = [f"{len(C.lexgraph.labels)} {n} {m}"]
    for I, X in C.lexgraph.labels:
        out.append(" ".join(str(i) for i in I))
        for row in X:
            out.append(" ".join(str(x) for x in row))
    _write(dirpath, "lbl_lex.txt", "\n".join(out) + "\n")
    _write(dirpath, "g_vert.txt", _format_adj(C.vertgraph.adj))
    out = [f"{len(C.vertgraph.labels)} {n}"]
    for v in C.vertgraph.labels:
        out.append(" ".join(str(x) for x in v))
    _write(dirpath, "lbl_vert.txt", "\n".join(out) + "\n")
    w = C.morphism
    _write(dirpath, "morph.txt",
           "\n".join([str(len(w.morph))] + [str(v) for v in w.morph]) + "\n")
    _write(dirpath, "morph_inv.txt",
           "\n".join([str(len(w.morph_inv))]
                     + [str(i) for i in w.morph_inv]) + "\n")
    _write(dirpath, "edge_inv.txt",
           "\n".join([str(len(w.edge_inv))]
                     + [f"{i} {j}" for i, j in w.edge_inv]) + "\n")
    d = C.dimension
    out = [str(n), str(d.origin), " ".join(str(k) for k in d.map_lbl)]
    for row in d.inv_lbl:
        out.append(" ".join(str(x) for x in row))
    _write(dirpath, "dim.txt", "\n".join(out) + "\n")
    bw = C.boundedness
    out = [f"{n} {m}"]
    for i, s, y in bw.combos:
        out.append(f"{i} {s}")
        out.append(" ".join(str(v) for v in y))
    out.append(str(bw.K))
    _write(dirpath, "bounded.txt", "\n".join(out) + "\n")
    _write(dirpath, "start.txt", f"{C.start}\n")
    manifest = {
        "format": MANIFEST_FORMAT,
        "m": m,
        "n": n,
        "lex_vertices": len(C.lexgraph.adj),
        "lex_edges": C.lexgraph.edge_count(),
        "vert_vertices": len(C.vertgraph.adj),
        "vert_edges": C.vertgraph.edge_count(),
    }
    _write(dirpath, "manifest.txt",
           "".join(f"{k}={v}\n" for k, v in manifest.items()))


def load_bundle(dirpath) -> CertificateBundle:
    """Read a bundle directory back; manifest counts are cross-checked
    against the actual file contents."""
    try:
        P = parse_poly(_read_text(dirpath, "polytope.poly"))
    except PolyFormatError as e:
        raise BundleFormatError(f"polytope.poly: {e}") from None
    m, n = P.m, P.n

    cur = _Lines("g_lex.txt", _read_text(dirpath, "g_lex.txt"))
    lex_adj = _parse_adj(cur)

    cur = _Lines("lbl_lex.txt", _read_text(dirpath, "lbl_lex.txt"))
    V, ln, lm = cur.ints(3)
    if (ln, lm) != (n, m):
        cur.fail(f"label sizes ({ln}, {lm}) do not match polytope ({n}, {m})")
    lex_labels = []
    for _ in range(V):
        I = tuple(cur.ints())
        X = tuple(tuple(cur.rats(1 + m)) for _ in range(n))
        lex_labels.append((I, X))
    cur.done()

    cur = _Lines("g_vert.txt", _read_text(dirpath, "g_vert.txt"))
    vert_adj = _parse_adj(cur)

    cur = _Lines("lbl_vert.txt", _read_text(dirpath, "lbl_vert.txt"))
    W, wn = cur.ints(2)
    if wn != n:
        cur.fail(f"vertex labels have length {wn}, expected {n}")
    vert_labels = [tuple(cur.rats(n)) for _ in range(W)]
    cur.done()

    cur = _Lines("morph.txt", _read_text(dirpath, "morph.txt"))
    (c,) = cur.ints(1)
    morph = [cur.ints(1)[0] for _ in range(c)]
    cur.done()

    cur = _Lines("morph_inv.txt", _read_text(dirpath, "morph_inv.txt"))
    (c,) = cur.ints(1)
    morph_inv = [cur.ints(1)[0] for _ in range(c)]
    cur.done()

    cur = _Lines("edge_inv.txt", _read_text(dirpath, "edge_inv.txt"))
    (c,) = cur.ints(1)
    edge_inv = [tuple(cur.ints(2)) for _ in range(c)]
    cur.done()

    cur = _Lines("dim.txt", _read_text(dirpath, "dim.txt"))
    (dn,) = cur.ints(1)
    if dn != n:
        cur.fail(f"dimension witness for n = {dn}, expected {n}")
    (origin,) = cur.ints(1)
    map_lbl = cur.ints(n)
    inv_lbl = [cur.rats(n) for _ in range(n)]
    cur.done()
    dim = DimensionWitness(origin, map_lbl, inv_lbl)

    cur = _Lines("bounded.txt", _read_text(dirpath, "bounded.txt"))
    bn, bm = cur.ints(2)
    if (bn, bm) != (n, m):
        cur.fail(f"boundedness sizes ({bn}, {bm}) do not match ({n}, {m})")
    combos = []
    for _ in range(2 * n):
        i, s = cur.ints(2)
        y = cur.rats(m)
        combos.append((i, s, y))
    K = cur.rats(1)[0]
    cur.done()
    bnd = BoundednessWitness(combos, K)

    cur = _Lines("start.txt", _read_text(dirpath, "start.txt"))
    (start,) = cur.ints(1)
    cur.done()

    manifest = {}
    for lno, ln_ in enumerate(
            _read_text(dirpath, "manifest.txt").splitlines(), start=1):
        if not ln_.strip():
            continue
        if "=" not in ln_:
            raise BundleFormatError(f"manifest.txt:{lno}: expected key=value")
        k, _, v = ln_.partition("=")
        manifest[k.strip()] = v.strip()
    if manifest.get("format") != MANIFEST_FORMAT:
        raise BundleFormatError(
            f"manifest.txt: format {manifest.get('format')!r}, "
            f"expected {MANIFEST_FORMAT!r}")

    C = CertificateBundle(P, LabeledGraph(lex_adj, lex_labels),
                          LabeledGraph(vert_adj, vert_labels),
                          MorphismWitness(morph, morph_inv, edge_inv),
                          dim, bnd, start)
    counts = {
        "m": m,
        "n": n,
        "lex_vertices": len(lex_adj),
        "lex_edges": sum(len(nb) for nb in lex_adj) // 2,
        "vert_vertices": len(vert_adj),
        "vert_edges": sum(len(nb) for nb in vert_adj) // 2,
    }
    for key, val in counts.items():
        got = manifest.get(key)
        if got is None:
            raise BundleFormatError(f"manifest.txt: missing key {key}")
        if got != str(val):
            raise BundleFormatError(
                f"manifest.txt: {key}={got} but files contain {val}")
    return C
