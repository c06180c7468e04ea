"""Exact rational scalars, dense vectors/matrices, and the lexicographic
row order used by the perturbation machinery.

Every number is an arbitrary-precision rational in canonical reduced form
(positive denominator, coprime numerator), so equality is structural and
all arithmetic is exact.  gmpy2's mpq is used when available; the stdlib
Fraction is a drop-in fallback with identical semantics.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

RatVector = list
RatMatrix = list

# return values of lex_compare / compare helpers
LESS, EQUAL, GREATER = -1, 0, 1

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def rat_normalize(num: int, den: int = 1) -> Rat:
    """Rational num/den in canonical form (sign on the numerator)."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Rat(num, den)


def rat_from_str(text: str) -> Rat:
    """Parse 'p' or 'p/q' with optional leading sign and unsigned q > 0."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Rat(int(p), int(q))
    return Rat(int(text))


def rat_to_str(x) -> str:
    """Canonical text form: 'p' for integers, 'p/q' otherwise."""
    return str(x)


def vector(entries) -> RatVector:
    """Coerce a sequence of numbers to a rational vector."""
    return [Rat(e) for e in entries]


def matrix(rows) -> RatMatrix:
    """Coerce rows to a rational matrix; rows must have equal length."""
    out = [vector(r) for r in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows in matrix")
    return out


def mat_shape(M: RatMatrix) -> tuple:
    return (len(M), len(M[0]) if M else 0)


def zeros(p: int, q: int) -> RatMatrix:
    z = Rat(0)
    return [[z] * q for _ in range(p)]


def identity(n: int) -> RatMatrix:
    M = zeros(n, n)
    one = Rat(1)
    for i in range(n):
        M[i][i] = one
    return M


def transpose(M: RatMatrix) -> RatMatrix:
    return [list(col) for col in zip(*M)] if M else []


def dot(u: RatVector, v: RatVector):
    if len(u) != len(v):
        raise ValueError("dot of vectors with different lengths")
    return sum((a * b for a, b in zip(u, v)), Rat(0))


def lex_compare(u: RatVector, v: RatVector) -> int:
    """First differing entry decides: -1 (less), 0 (equal), 1 (greater)."""
    if len(u) != len(v):
        raise ValueError("lex_compare of vectors with different lengths")
    for a, b in zip(u, v):
        if a != b:
            return LESS if a < b else GREATER
    return EQUAL


def lex_ge(u: RatVector, v: RatVector) -> bool:
    return lex_compare(u, v) >= 0


def mat_mul(M: RatMatrix, N: RatMatrix) -> RatMatrix:
    p, q = mat_shape(M)
    q2, r = mat_shape(N)
    if q != q2:
        raise ValueError(f"cannot multiply {p}x{q} by {q2}x{r}")
    cols = list(zip(*N))
    return [[sum((a * b for a, b in zip(row, col)), Rat(0)) for col in cols]
            for row in M]


def mat_vec_mul(M: RatMatrix, v: RatVector) -> RatVector:
    return [dot(row, v) for row in M]


def vec_mat_mul(v: RatVector, M: RatMatrix) -> RatVector:
    p, q = mat_shape(M)
    if len(v) != p:
        raise ValueError("vector/matrix size mismatch")
    out = [Rat(0)] * q
    for x, row in zip(v, M):
        if x:
            for j in range(q):
                out[j] += x * row[j]
    return out


def solve_exact(M: RatMatrix, B: RatMatrix, pivot: str = "first"):
    """Solve M X = B exactly for square M; returns X or None if singular.

    Gauss-Jordan elimination over the rationals.  `pivot` picks which
    nonzero row becomes the pivot in each column: "first" (lowest row) or
    "last" (highest row).  The answer is pivot-independent; the knob exists
    so tests can check exactly that.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("solve_exact needs a square matrix")
    if len(B) != n:
        raise ValueError("right-hand side has wrong row count")
    if pivot not in ("first", "last"):
        raise ValueError(f"unknown pivot strategy {pivot!r}")
    w = len(B[0]) if B else 0
    if any(len(row) != w for row in B):
        raise ValueError("ragged right-hand side")

    # augmented working copy
    aug = [list(M[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        rows = range(col, n) if pivot == "first" else range(n - 1, col - 1, -1)
        piv = next((r for r in rows if aug[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / Rat(prow[col])
        for j in range(col, n + w):
            prow[j] = prow[j] * inv
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                arow = aug[r]
                for j in range(col, n + w):
                    arow[j] -= f * prow[j]
    return [row[n:] for row in aug]


def mat_inverse(M: RatMatrix):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("mat_inverse needs a square matrix")
    return solve_exact(M, identity(n))
