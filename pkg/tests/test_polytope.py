"""Polytope container, perturbation, basic points, lex feasibility."""

import pytest

from oracles import all_feasible_bases, all_lex_feasible_bases
from polycert.exactnum import Rat, identity, mat_mul
from polycert.instances import gen_cross, gen_cube
from polycert.polytope import (HPolytope, PolyFormatError, bases_adjacent,
                               basic_point, check_basis, format_poly,
                               is_lex_feasible, nonsingularity_witness,
                               parse_poly, pert_basic_point, perturb,
                               row_submatrix)


def test_construction_validates():
    P = HPolytope([[1, 0], [0, 1]], [-1, -1])
    assert (P.m, P.n) == (2, 2)
    with pytest.raises(ValueError):
        HPolytope([[1, 0], [0, 1]], [-1])
    with pytest.raises(ValueError):
        HPolytope([], [])
    with pytest.raises(ValueError):
        HPolytope([[1], [1, 2]], [0, 0])


def test_check_basis():
    assert check_basis((0, 2), 4, 2) == (0, 2)
    with pytest.raises(ValueError):
        check_basis((2, 0), 4, 2)  # not increasing
    with pytest.raises(ValueError):
        check_basis((0, 0), 4, 2)  # repeated
    with pytest.raises(ValueError):
        check_basis((0, 4), 4, 2)  # out of range
    with pytest.raises(ValueError):
        check_basis((0,), 4, 2)  # wrong size


def test_perturb_shape_and_content():
    P = gen_cube(2)
    B = perturb(P)
    assert len(B) == 4 and all(len(row) == 5 for row in B)
    for i in range(4):
        assert B[i][0] == P.b[i]
        for j in range(4):
            assert B[i][1 + j] == (-1 if i == j else 0)


def test_basic_point_cube():
    P = gen_cube(2)
    # lower-bound rows: the (-1, -1) corner
    assert basic_point(P, (0, 2)) == [Rat(-1), Rat(-1)]
    # x0 >= -1 and -x0 >= -1 are parallel: singular
    assert basic_point(P, (0, 1)) is None


def test_basic_point_cross_degenerate_vertex():
    P = gen_cross(3)
    assert basic_point(P, (1, 2, 3)) == [Rat(0), Rat(0), Rat(-1)]


def test_pert_basic_point_cube2():
    P = gen_cube(2)
    B = perturb(P)
    X = pert_basic_point(P, B, (0, 2))
    # rows 0 and 2 are the identity on (x0, x1); the point inherits the
    # rhs rows of the perturbation directly
    assert X[0] == B[0]
    assert X[1] == B[2]
    # multiply back: A_I X = B_I
    A_I = row_submatrix(P.A, (0, 2))
    assert mat_mul(A_I, X) == [B[0], B[2]]
    assert pert_basic_point(P, B, (0, 1)) is None


def test_pert_point_column_zero_is_basic_point():
    for P in (gen_cube(3), gen_cross(3)):
        B = perturb(P)
        for I in all_lex_feasible_bases(P):
            X = pert_basic_point(P, B, I)
            assert [row[0] for row in X] == basic_point(P, I)
            # support stays inside {0} union {1+i : i in I}
            allowed = {0} | {1 + i for i in I}
            for row in X:
                for c, v in enumerate(row):
                    assert v == 0 or c in allowed


def test_is_lex_feasible_cube():
    P = gen_cube(2)
    B = perturb(P)
    I = (0, 2)
    X = pert_basic_point(P, B, I)
    assert is_lex_feasible(P, B, I, X)
    # push the point outside the box: row 0 goes lex-negative
    Xbad = [list(r) for r in X]
    Xbad[0][0] -= 1
    assert not is_lex_feasible(P, B, I, Xbad)
    # a tie on column 0 is broken by the eps columns
    J = (0, 3)
    XJ = pert_basic_point(P, B, J)
    assert is_lex_feasible(P, B, J, XJ)


def test_cross3_degenerate_vertex_split():
    """The vertex (0,0,-1) lies on four of the eight facets.  All four
    bases one can pick from those rows are feasible, but the perturbation
    keeps exactly two of them."""
    P = gen_cross(3)
    B = perturb(P)
    z = [Rat(0), Rat(0), Rat(-1)]
    feas_at_z = [I for I in all_feasible_bases(P) if basic_point(P, I) == z]
    assert feas_at_z == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    lex_at_z = [I for I in feas_at_z
                if is_lex_feasible(P, B, I, pert_basic_point(P, B, I))]
    assert lex_at_z == [(0, 1, 2), (1, 2, 3)]


def test_cross3_totals_against_oracle():
    P = gen_cross(3)
    assert len(all_feasible_bases(P)) == 24
    assert len(all_lex_feasible_bases(P)) == 12


def test_lex_feasible_points_are_distinct():
    """Perturbed points of distinct lex-feasible bases never coincide."""
    P = gen_cross(3)
    B = perturb(P)
    seen = set()
    for I in all_lex_feasible_bases(P):
        X = pert_basic_point(P, B, I)
        key = tuple(tuple(r) for r in X)
        assert key not in seen
        seen.add(key)


def test_bases_adjacent():
    assert bases_adjacent((0, 1, 2), (0, 1, 3))
    assert not bases_adjacent((0, 1, 2), (0, 3, 4))
    assert not bases_adjacent((0, 1, 2), (0, 1, 2))
    with pytest.raises(ValueError):
        bases_adjacent((0, 1), (0, 1, 2))


def test_nonsingularity_witness():
    P = gen_cube(3)
    B = perturb(P)
    I = (0, 2, 4)
    X = pert_basic_point(P, B, I)
    assert nonsingularity_witness(P, I, X)
    Xbad = [list(r) for r in X]
    Xbad[1][1 + 2] += Rat(1, 7)  # touch a basis column
    assert not nonsingularity_witness(P, I, Xbad)


def test_poly_roundtrip():
    P = HPolytope([[1, Rat(-2, 3)], [0, 5]], [Rat(1, 2), -7])
    Q = parse_poly(format_poly(P))
    assert Q == P


@pytest.mark.parametrize("text,frag", [
    ("", "empty"),
    ("2\n1 0 0\n0 1 0\n", "header"),
    ("2 2\n1 0 0\n", "2 data rows"),
    ("1 2\n1 0\n", "3 entries"),
    ("1 1\nx 0\n", "malformed rational"),
    ("0 2\n", "m >= 1"),
])
def test_poly_parse_errors(text, frag):
    with pytest.raises(PolyFormatError) as e:
        parse_poly(text)
    assert frag in str(e.value)
