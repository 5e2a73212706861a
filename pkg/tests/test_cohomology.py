from math import comb

import pytest

from fatpoints.cohomology import (
    NumericalCharacter,
    bound_checks,
    character_split_check,
    character_to_h1,
    cohomology,
    conditions_matrix,
    hilbert_profile,
    is_connected,
    numerical_character,
    s_min,
    tau_max,
)
from fatpoints.constructions import grid_complete_intersection
from fatpoints.errors import EmptyScheme, GapAbsent, PreconditionViolated
from fatpoints.exactfield import FieldSpec, field_create, matrix_rank
from fatpoints.geometry import CurveForm, double_scheme, make_scheme, proj_point, simple_scheme

from helpers import brute_force_character, sympy_h1

FP = field_create()
QQ = field_create(FieldSpec.rational())


def pts(coords, F=FP):
    return [proj_point(c, F) for c in coords]


CONIC = CurveForm.from_dict({(1, 0, 1): 1, (0, 2, 0): -1}, FP)
CONIC9 = pts([(u * u, u, 1) for u in range(1, 10)])
COLLINEAR4 = pts([(i, 0, 1) for i in range(4)])
TRIANGLE = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
GENERAL5 = [(1, 2, 3), (-2, 5, 1), (4, -1, 2), (3, 3, -5), (7, 1, 1)]


def test_double_point_matrix_shape():
    Z = double_scheme(pts([(1, 2, 3)]), FP)
    M = conditions_matrix(Z, 2)
    assert M.shape == (3, 6) and matrix_rank(M) == 3


def test_collinear_points_in_degree_one():
    Z = simple_scheme(pts([(0, 0, 1), (1, 0, 1), (2, 0, 1)]), FP)
    assert matrix_rank(conditions_matrix(Z, 1)) == 2
    assert cohomology(Z, 1)[1] == 1


def test_five_general_double_points_quartics():
    # the doubled conic through five points is a quartic singular at all of them
    Z = double_scheme(pts(GENERAL5), FP)
    assert matrix_rank(conditions_matrix(Z, 4)) == 14
    assert cohomology(Z, 4) == (1, 1)
    assert sympy_h1([("double", p, None) for p in GENERAL5], 4) == 1


def test_four_general_double_points_quartics():
    Z = double_scheme(pts(GENERAL5[:4]), FP)
    assert matrix_rank(conditions_matrix(Z, 4)) == 12
    assert sympy_h1([("double", p, None) for p in GENERAL5[:4]], 4) == 0


def test_empty_scheme_cohomology():
    assert cohomology(make_scheme([], FP), 2) == (6, 0)


def test_grid_2x2_has_h1_in_degree_one():
    W, _, _ = grid_complete_intersection(2, 2, FP)
    assert cohomology(simple_scheme(W, FP), 1)[1] == 1


def test_single_point_tau():
    Z = simple_scheme(pts([(1, 2, 3)]), FP)
    assert tau_max(Z) == -1
    assert s_min(Z) == 1


def test_collinear_four_against_oracle():
    Z = simple_scheme(COLLINEAR4, FP)
    comps = [("simple", (i, 0, 1), None) for i in range(4)]
    oracle = [sympy_h1(comps, t) for t in range(5)]
    assert oracle == [3, 2, 1, 0, 0]
    assert [cohomology(Z, t)[1] for t in range(5)] == oracle
    assert s_min(Z) == 1 and tau_max(Z) == 2


def test_conic_double_scheme_s_and_tau():
    Z = double_scheme(CONIC9, FP)
    assert s_min(Z) == 4 and tau_max(Z) == 8


def test_s_min_of_empty_scheme():
    with pytest.raises(EmptyScheme):
        s_min(make_scheme([], FP))
    with pytest.raises(EmptyScheme):
        hilbert_profile(make_scheme([], FP))


def test_tau_of_empty_scheme_is_flagged():
    with pytest.warns(UserWarning):
        assert tau_max(make_scheme([], FP)) == -1


def test_conic_profile():
    P = hilbert_profile(simple_scheme(CONIC9, FP))
    assert P.h1 == (8, 6, 4, 2, 0)
    assert P.tau == 3 and P.s == 2


def test_single_point_profile():
    P = hilbert_profile(simple_scheme(pts([(5, 1, 1)]), FP))
    assert P.H[0] == 1 and P.h1[0] == 0


def test_triangle_profile_against_oracle():
    P = hilbert_profile(simple_scheme(pts(TRIANGLE), FP))
    assert P.h1 == (2, 0)
    assert P.tau == 0
    assert [sympy_h1([("simple", p, None) for p in TRIANGLE], t) for t in range(2)] == [2, 0]


def test_profile_invariants_hold():
    for Z in (double_scheme(CONIC9, FP), simple_scheme(COLLINEAR4, FP)):
        P = hilbert_profile(Z)
        assert all(x >= 0 for x in P.delta)
        assert all(a >= b for a, b in zip(P.h1, P.h1[1:]))
        assert P.h1[-1] == 0 and P.h1[P.tau] > 0
        assert all(P.delta[t] == t + 1 for t in range(P.s))


@pytest.mark.parametrize(
    "S, double, expected",
    [(CONIC9, False, (5, 5)), (CONIC9, True, (10, 9, 7, 7)), (pts(TRIANGLE), False, (2, 2))],
    ids=["conic9", "conic9-doubled", "triangle"],
)
def test_characters(S, double, expected):
    Z = (double_scheme if double else simple_scheme)(S, FP)
    ch = numerical_character(Z)
    assert ch.entries == expected
    P = hilbert_profile(Z)
    h1_seq = list(P.h1) + [0] * 3
    assert brute_force_character(h1_seq, P.s, P.tau) == [expected]


def test_character_to_h1_examples():
    assert character_to_h1((2, 2), 0) == 2
    assert character_to_h1((10, 9, 7, 7), 8) == 1
    for ch in [(5, 5), (10, 9, 7, 7), (4, 3, 2)]:
        for t in range(ch[0] - 1, ch[0] + 4):
            assert character_to_h1(ch, t) == 0


def test_connectedness():
    assert is_connected((5, 5))
    assert not is_connected((10, 9, 7, 7))
    assert is_connected(tuple(range(12, 5, -1)))
    assert NumericalCharacter((10, 9, 7, 7)).connected is False


def test_split_on_the_conic():
    Z = double_scheme(CONIC9, FP)
    r = character_split_check(Z, CONIC, 2)
    assert r["restricted"] == [10, 9] and r["residual"] == [5, 5]
    assert r["ok"]


def _line_heavy():
    # eight points on x1 = 0 plus two more; character (8, 3)
    S = pts([(i, 0, 1) for i in range(8)] + [(0, 1, 1), (1, 2, 1)])
    return simple_scheme(S, FP)


def test_split_against_the_right_and_wrong_line():
    Z = _line_heavy()
    assert numerical_character(Z).entries == (8, 3)
    line = CurveForm.from_dict({(0, 1, 0): 1}, FP)
    good = character_split_check(Z, line, 1)
    assert good["ok"] and good["residual"] == [2]
    wrong = CurveForm.from_dict({(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): 1}, FP)  # through (0,1,1), (1,2,1)
    bad = character_split_check(Z, wrong, 1)
    assert not bad["ok"]
    assert bad["restricted"] != bad["predicted_restricted"]


def test_split_needs_a_gap():
    W, _, _ = grid_complete_intersection(3, 4, FP)
    with pytest.raises(GapAbsent):
        character_split_check(simple_scheme(W, FP), CONIC, 2)


def test_split_curve_degree_must_match():
    with pytest.raises(PreconditionViolated):
        character_split_check(double_scheme(CONIC9, FP), CurveForm.from_dict({(1, 0, 0): 1}, FP), 2)


@pytest.mark.parametrize(
    "S, expected",
    [(pts(TRIANGLE), (2, 3, 0, 3, 3)), (CONIC9, (2, 9, 3, 3, 9)), (pts([(1, 1, 1)]), (1, 1, -1, 1, 1))],
    ids=["triangle", "conic9", "point"],
)
def test_bound_checks(S, expected):
    r = bound_checks(simple_scheme(S, FP))
    assert (r["s"], r["z"], r["tau"], r["lower"], r["upper"]) == expected
    assert r["ok"]


@pytest.mark.parametrize("a, b", [(a, b) for b in range(1, 7) for a in range(1, b + 1)])
def test_complete_intersection_character(a, b):
    W, _, _ = grid_complete_intersection(a, b, FP)
    ch = numerical_character(simple_scheme(W, FP))
    assert ch.entries == tuple(a + b - 1 - i for i in range(a))


def test_curve_section_closed_form():
    # forms of degree d on a smooth conic: h0(O_C(d)) = t(2d+3-t)/2 with t = 2, realised by 2d+1 conic points
    for d in range(1, 7):
        S = pts([(u * u, u, 1) for u in range(1, 2 * d + 2)])
        Z = simple_scheme(S, FP)
        assert cohomology(Z, d)[1] == 0
        assert comb(d + 2, 2) - cohomology(Z, d)[0] == 2 * (2 * d + 3 - 2) // 2


def test_rational_and_prime_agree_on_conic_example():
    S_q = pts([(u * u, u, 1) for u in range(1, 10)], QQ)
    assert numerical_character(double_scheme(S_q, QQ)).entries == (10, 9, 7, 7)
