"""Instance generators and readers.

Three built-in families, all full-dimensional and bounded:

* cube n      -- the cube [-1, 1]^n, 2n facets, nondegenerate.
* cross n     -- the cross polytope sum |x_i| <= 1, 2^n facets, heavily
                 degenerate at every vertex.
* cyclic n p  -- polar dual of the cyclic polytope C(n, p) centred at its
                 vertex centroid; simple, with the maximal vertex count
                 for given (n, p).

Each family ships an analytic starting basis so enumeration never has to
hunt for one.  External instances arrive as lrs-style .ine files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactnum import Rat
from .polytope import Basis, HPolytope


@dataclass(frozen=True)
class InstanceSpec:
    """Name of a built-in instance: family plus its size parameters."""

    family: str
    n: int
    p: int = 0


def gen_cube(n: int) -> HPolytope:
    """[-1, 1]^n as x_i >= -1 (row 2i) and -x_i >= -1 (row 2i+1)."""
    if n < 1:
        raise ValueError("cube needs n >= 1")
    A, b = [], []
    for i in range(n):
        lo = [Rat(0)] * n
        lo[i] = Rat(1)
        hi = [Rat(0)] * n
        hi[i] = Rat(-1)
        A.extend([lo, hi])
        b.extend([Rat(-1), Rat(-1)])
    return HPolytope(A, b)


def cube_basis(n: int) -> Basis:
    """All the lower-bound rows; tight at the vertex (-1, ..., -1)."""
    return tuple(2 * i for i in range(n))


def gen_cross(n: int) -> HPolytope:
    """Cross polytope: row k has entry -1 in coordinate j when bit j of k
    is set, +1 otherwise; every right-hand side is -1."""
    if n < 1:
        raise ValueError("cross needs n >= 1")
    if n > 20:
        raise ValueError("cross with n > 20 would need more than 2^20 rows")
    A = [[Rat(-1) if (k >> j) & 1 else Rat(1) for j in range(n)]
         for k in range(2 ** n)]
    b = [Rat(-1)] * (2 ** n)
    return HPolytope(A, b)


def cross_basis(n: int) -> Basis:
    """Rows {0} and {2^j}: the all-plus row and its single-sign-flip rows.

    These n rows are tight exactly at the vertex -e_{n-1} and the choice is
    lexicographically feasible, so it can seed the enumeration directly.
    """
    if n == 1:
        return (0,)
    return tuple(sorted({0} | {2 ** j for j in range(n - 1)}))


def gen_cyclic_polar(n: int, p: int) -> HPolytope:
    """Polar of the cyclic polytope with p moment-curve points t = 1..p.

    With c_i = (t_i, t_i^2, ..., t_i^n) and cbar their mean, the rows are
    cbar - c_i with right-hand side -1, i.e. the polar of C(n, p) - cbar.
    The result is a simple polytope whose vertices biject with the facets
    of C(n, p), hence meet the upper-bound count exactly.
    """
    if n < 2:
        raise ValueError("cyclic polar needs n >= 2")
    if p <= n:
        raise ValueError("cyclic polar needs p > n")
    cs = [[Rat(t) ** (j + 1) for j in range(n)] for t in range(1, p + 1)]
    cbar = [sum((c[j] for c in cs), Rat(0)) / p for j in range(n)]
    A = [[cbar[j] - c[j] for j in range(n)] for c in cs]
    b = [Rat(-1)] * p
    return HPolytope(A, b)


def cyclic_polar_basis(n: int) -> Basis:
    """Rows 0..n-1: one contiguous moment-curve block, a facet of C(n, p)
    by Gale evenness, hence a vertex of the polar."""
    return tuple(range(n))


def cyclic_polar_vertex_count(n: int, p: int) -> int:
    """Upper-bound vertex count, attained by the cyclic polar:
    C(p - ceil(n/2), floor(n/2)) + C(p - 1 - ceil((n-1)/2), floor((n-1)/2))."""
    h = n // 2
    if n % 2 == 0:
        return math.comb(p - h, h) + math.comb(p - 1 - h, h - 1)
    return math.comb(p - h - 1, h) + math.comb(p - 1 - h, h)


def build(spec: InstanceSpec):
    """Instantiate a built-in family; returns (polytope, starting basis)."""
    if spec.family == "cube":
        return gen_cube(spec.n), cube_basis(spec.n)
    if spec.family == "cross":
        return gen_cross(spec.n), cross_basis(spec.n)
    if spec.family == "cyclic":
        return gen_cyclic_polar(spec.n, spec.p), cyclic_polar_basis(spec.n)
    raise ValueError(f"unknown instance family {spec.family!r}")


class IneFormatError(ValueError):
    """Raised for .ine input this reader cannot represent."""


def parse_ine(text: str) -> HPolytope:
    """Read an lrs/cdd H-representation:

        H-representation
        begin
        m  n+1  rational
        b'_i  a'_{i1} ... a'_{in}     (meaning b'_i + <a'_i, x> >= 0)
        end

    Rows convert to <a'_i, x> >= -b'_i.  V-representations and linearity
    (equation) rows are rejected rather than silently mangled.
    """
    from .exactnum import rat_from_str

    lines = text.splitlines()
    k = 0
    seen_v = False
    while k < len(lines):
        t = lines[k].strip()
        low = t.lower()
        if low == "begin":
            break
        if low.startswith("v-representation"):
            seen_v = True
        if low.startswith("linearity"):
            raise IneFormatError(f"line {k + 1}: linearity rows not supported")
        k += 1
    else:
        raise IneFormatError("no 'begin' line found")
    if seen_v:
        raise IneFormatError("V-representation input; need an H-representation")
    k += 1
    if k >= len(lines):
        raise IneFormatError("missing size line after 'begin'")
    parts = lines[k].split()
    if len(parts) < 2:
        raise IneFormatError(f"line {k + 1}: expected 'm n+1 numbertype'")
    try:
        m, d = int(parts[0]), int(parts[1])
    except ValueError:
        raise IneFormatError(f"line {k + 1}: bad sizes") from None
    if m < 1 or d < 2:
        raise IneFormatError(f"line {k + 1}: need m >= 1 and dimension >= 1")
    n = d - 1
    A, b = [], []
    k += 1
    while k < len(lines) and len(A) < m:
        t = lines[k].strip()
        k += 1
        if not t or t.startswith("*"):
            continue
        if t.lower() == "end":
            break
        toks = t.split()
        if len(toks) != d:
            raise IneFormatError(f"line {k}: expected {d} entries, "
                                 f"found {len(toks)}")
        try:
            vals = [rat_from_str(x) for x in toks]
        except ValueError as e:
            raise IneFormatError(f"line {k}: {e}") from None
        A.append(vals[1:])
        b.append(-vals[0])
    if len(A) != m:
        raise IneFormatError(f"expected {m} rows before 'end', found {len(A)}")
    return HPolytope(A, b)


def load_ine(path) -> HPolytope:
    with open(path, "r", encoding="ascii") as fh:
        return parse_ine(fh.read())
