"""Inequality-description polytopes and the symbolic perturbation layer.

A polytope is the solution set of A x >= b with rational A (m x n) and b
(length m).  Degeneracy is handled by replacing b with the matrix
[b | -Id_m]: row i then reads b_i - eps^(i+1) for an infinitesimal eps,
and comparisons against it become lexicographic on rows of length 1 + m.

A basis is a sorted tuple of n row indices whose submatrix A_I is
nonsingular.  Its perturbed basic point is the n x (1+m) matrix X with
A_I X = [b | -Id]_I; column 0 is the ordinary basic point.
"""

from __future__ import annotations

from .exactnum import (Rat, RatMatrix, RatVector, matrix, solve_exact,
                       vector, zeros)

Basis = tuple


class PolyFormatError(ValueError):
    """Raised for malformed polytope text (message carries a line number)."""


class HPolytope:
    """System A x >= b, immutable after construction by convention."""

    __slots__ = ("A", "b", "m", "n")

    def __init__(self, A, b):
        self.A: RatMatrix = matrix(A)
        self.b: RatVector = vector(b)
        self.m = len(self.A)
        if self.m == 0:
            raise ValueError("polytope needs at least one inequality")
        self.n = len(self.A[0])
        if self.n == 0:
            raise ValueError("polytope needs at least one variable")
        if len(self.b) != self.m:
            raise ValueError("b length does not match row count of A")

    def __eq__(self, other):
        return (isinstance(other, HPolytope)
                and self.A == other.A and self.b == other.b)

    def __repr__(self):
        return f"HPolytope(m={self.m}, n={self.n})"


def check_basis(I, m: int, n: int) -> Basis:
    """Validate a candidate basis index tuple; returns it as a tuple."""
    I = tuple(I)
    if len(I) != n:
        raise ValueError(f"basis has {len(I)} indices, expected {n}")
    for k, i in enumerate(I):
        if not isinstance(i, int) or i < 0 or i >= m:
            raise ValueError(f"basis index {i!r} out of range 0..{m - 1}")
        if k > 0 and I[k - 1] >= i:
            raise ValueError("basis indices must be strictly increasing")
    return I


def row_submatrix(M: RatMatrix, I) -> RatMatrix:
    return [list(M[i]) for i in I]


def perturb(P: HPolytope) -> RatMatrix:
    """Perturbed right-hand side [b | -Id], an m x (1+m) matrix."""
    B = zeros(P.m, 1 + P.m)
    neg = Rat(-1)
    for i in range(P.m):
        B[i][0] = P.b[i]
        B[i][1 + i] = neg
    return B


def basic_point(P: HPolytope, I):
    """Solve A_I x = b_I; returns the point or None if A_I is singular."""
    I = check_basis(I, P.m, P.n)
    sol = solve_exact(row_submatrix(P.A, I), [[P.b[i]] for i in I])
    if sol is None:
        return None
    return [row[0] for row in sol]


def pert_basic_point(P: HPolytope, B: RatMatrix, I):
    """Solve A_I X = B_I for the full perturbed right-hand side B.

    Returns the n x (1+m) matrix X, or None if A_I is singular.  Only the
    columns where B_I is nonzero are actually solved; the rest of X is
    identically zero.
    """
    I = check_basis(I, P.m, P.n)
    sub = row_submatrix(B, I)
    width = len(sub[0])
    nz = [c for c in range(width) if any(row[c] for row in sub)]
    sol = solve_exact(row_submatrix(P.A, I), [[row[c] for c in nz] for row in sub])
    if sol is None:
        return None
    X = zeros(P.n, width)
    for j in range(P.n):
        Xrow = X[j]
        srow = sol[j]
        for k, c in enumerate(nz):
            Xrow[c] = srow[k]
    return X


def is_lex_feasible(P: HPolytope, B: RatMatrix, I, X) -> bool:
    """Row-wise lexicographic feasibility A X >=lex B at the point X.

    I is only sanity-checked; the test itself reads nothing but A, B, X,
    so a corrupted X fails honestly.  Columns where X vanishes are skipped
    in the products (their contribution is zero either way).
    """
    check_basis(I, P.m, P.n)
    m, n = P.m, P.n
    width = len(B[0])
    sup = set()
    for j in range(n):
        Xrow = X[j]
        for c in range(width):
            if Xrow[c]:
                sup.add(c)
    A = P.A
    for i in range(m):
        Arow = A[i]
        Brow = B[i]
        for c in range(width):
            if c in sup:
                v = sum((Arow[j] * X[j][c] for j in range(n)), Rat(0))
            else:
                v = 0
            t = Brow[c]
            if v != t:
                if v < t:
                    return False
                break  # row strictly greater, move on
    return True


def bases_adjacent(I, J) -> bool:
    """True when the bases share all but one index."""
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError("bases of different sizes")
    return len(set(I) & set(J)) == len(I) - 1


def nonsingularity_witness(P: HPolytope, I, X) -> bool:
    """Check A_I Y = -Id where Y is X restricted to columns 1+i, i in I.

    A valid perturbed basic point carries its own proof that A_I is
    invertible; this replays the product without any solving.
    """
    I = check_basis(I, P.m, P.n)
    n = P.n
    Y = [[X[j][1 + i] for i in I] for j in range(n)]
    for r, i in enumerate(I):
        Arow = P.A[i]
        for c in range(n):
            v = sum((Arow[j] * Y[j][c] for j in range(n)), Rat(0))
            if v != (-1 if r == c else 0):
                return False
    return True


def parse_poly(text: str) -> HPolytope:
    """Parse the plain text format: header 'm n', then m rows of n+1
    rationals (the row of A followed by the entry of b)."""
    from .exactnum import rat_from_str

    lines = text.splitlines()
    rows = [(k + 1, ln) for k, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise PolyFormatError("line 1: empty polytope file")
    lno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise PolyFormatError(f"line {lno}: header must be 'm n'")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise PolyFormatError(f"line {lno}: header must be two integers") from None
    if m < 1 or n < 1:
        raise PolyFormatError(f"line {lno}: need m >= 1 and n >= 1")
    if len(rows) - 1 != m:
        raise PolyFormatError(f"line {lno}: expected {m} data rows, "
                              f"found {len(rows) - 1}")
    A, b = [], []
    for lno, ln in rows[1:]:
        toks = ln.split()
        if len(toks) != n + 1:
            raise PolyFormatError(f"line {lno}: expected {n + 1} entries, "
                                  f"found {len(toks)}")
        try:
            vals = [rat_from_str(t) for t in toks]
        except ValueError as e:
            raise PolyFormatError(f"line {lno}: {e}") from None
        A.append(vals[:n])
        b.append(vals[n])
    return HPolytope(A, b)


def format_poly(P: HPolytope) -> str:
    out = [f"{P.m} {P.n}"]
    for i in range(P.m):
        out.append(" ".join(str(x) for x in P.A[i]) + f" {P.b[i]}")
    return "\n".join(out) + "\n"


def load_poly(path) -> HPolytope:
    with open(path, "r", encoding="ascii") as fh:
        return parse_poly(fh.read())


def save_poly(P: HPolytope, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_poly(P))
