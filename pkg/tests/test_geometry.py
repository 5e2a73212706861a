import random
from math import factorial

import pytest
import sympy as sp

from fatpoints.errors import CharacteristicTooSmall, DuplicatePoints, FatPointsError, SingularAtSupport
from fatpoints.exactfield import FieldSpec, field_create
from fatpoints.geometry import (
    CurveForm,
    component_rows,
    curvilinear,
    derivative_row,
    double,
    double_scheme,
    eval_row,
    make_scheme,
    monomial_basis,
    proj_point,
    residual_scheme,
    restrict_to_curve,
    simple,
    simple_scheme,
    span_dimension,
)

from helpers import X, random_points, random_scheme, sympy_monomials

FP = field_create()
QQ = field_create(FieldSpec.rational())
F7 = field_create(FieldSpec.prime(7))


def pt(*c, F=FP):
    return proj_point(c, F)


def conic(F=FP):
    # x0*x2 - x1^2
    return CurveForm.from_dict({(1, 0, 1): 1, (0, 2, 0): -1}, F)


def conic_pt(u, F=FP):
    return pt(u * u, u, 1, F=F)


def test_linear_basis():
    assert monomial_basis(2, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.mark.parametrize("d", [0, 1, 4, 30])
def test_basis_length_matches_enumeration(d):
    # independent count: lattice points i + j <= d
    count = sum(1 for i in range(d + 1) for j in range(d + 1) if i + j <= d)
    basis = monomial_basis(2, d)
    assert len(basis) == count
    assert len(set(basis)) == len(basis)
    assert all(sum(e) == d for e in basis)


def test_basis_lengths():
    assert len(monomial_basis(2, 4)) == 15
    assert len(monomial_basis(2, 30)) == 496
    assert len(monomial_basis(3, 2)) == factorial(5) // (factorial(3) * factorial(2))


def test_basis_rejects_negative_degree():
    with pytest.raises(FatPointsError):
        monomial_basis(2, -1)


def test_point_normalisation():
    assert pt(2, 4, 2).coords == (1, 2, 1)
    assert pt(3, 0, 0).coords == (1, 0, 0)
    assert proj_point((1, 2, 4), QQ).coords[0] == sp.Rational(1, 4)
    with pytest.raises(FatPointsError):
        pt(0, 0, 0)


def test_eval_rows():
    row = eval_row(pt(0, 0, 1), 2, FP)
    basis = monomial_basis(2, 2)
    assert row == [1 if e == (0, 0, 2) else 0 for e in basis]
    assert eval_row(pt(1, 1, 1), 1, FP) == [1, 1, 1]
    assert eval_row(pt(2, 3, 1, F=F7), 1, F7) == [2, 3, 1]


def test_derivative_row_linear():
    assert derivative_row(pt(0, 0, 1), pt(1, 0, 0), 1, FP) == [1, 0, 0]


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_euler_relation(d):
    rng = random.Random(d)
    for p in random_points(rng, FP, 5):
        assert derivative_row(p, p, d, FP) == [FP.mul(d, x) for x in eval_row(p, d, FP)]


@pytest.mark.parametrize(
    "p, v, d",
    [((1, 2, 1), (0, 1, 0), 2), ((3, -1, 2), (1, 1, 0), 3), ((0, 5, 1), (2, 0, 7), 4)],
)
def test_derivative_row_against_symbolic_differentiation(p, v, d):
    expected = [sum(vk * sp.diff(m, xk) for vk, xk in zip(v, X)).subs(dict(zip(X, p))) for m in sympy_monomials(d)]
    assert [sp.Poly(m, *X).monoms()[0] for m in sympy_monomials(d)] == list(monomial_basis(2, d))
    got = derivative_row(p, v, d, QQ)
    assert got == [sp.Rational(x) for x in expected]


def test_derivative_needs_large_characteristic():
    with pytest.raises(CharacteristicTooSmall):
        derivative_row(pt(1, 1, 1, F=F7), pt(1, 0, 0, F=F7), 7, F7)


def test_component_row_counts():
    p = pt(0, 0, 1)
    assert len(component_rows(simple(p), 3, FP)) == 1
    rng = random.Random(0)
    q = random_points(rng, FP, 1)[0]
    rows = component_rows(double(q), 3, FP)
    assert len(rows) == 3 and FP.rank(rows) == 3
    # rank oracle over QQ on an integer point
    qz = (3, -2, 5)
    rows_q = component_rows(double(proj_point(qz, QQ)), 3, QQ)
    sym = [[sp.diff(m, xk).subs(dict(zip(X, qz))) for m in sympy_monomials(3)] for xk in X]
    assert sp.Matrix(sym).rank() == 3 == QQ.rank(rows_q)


def test_curvilinear_representative_invariance():
    rng = random.Random(11)
    for trial in range(100):
        p, v = random_points(rng, FP, 2)
        d = rng.randint(1, 6)
        lam = FP.random(rng)
        w = proj_point([FP.add(a, FP.mul(lam, b)) for a, b in zip(v.coords, p.coords)], FP)
        A = component_rows(curvilinear(p, v, FP), d, FP)
        B = component_rows(curvilinear(p, w, FP), d, FP)
        assert FP.rank(A) == FP.rank(B) == FP.rank(A + B) == 2


def test_curvilinear_rejects_point_as_direction():
    p = pt(1, 2, 3)
    with pytest.raises(FatPointsError):
        curvilinear(p, pt(2, 4, 6), FP)


@pytest.mark.parametrize("k", [0, 1, 5])
def test_double_scheme_degree(k):
    S = random_points(random.Random(k), FP, k)
    assert double_scheme(S, FP).degree == 3 * k


def test_duplicate_points():
    p = pt(1, 2, 3)
    with pytest.raises(DuplicatePoints):
        double_scheme([p, pt(2, 4, 6)], FP)


def test_restrict_double_to_conic():
    S = [conic_pt(u) for u in range(1, 10)]
    Z = restrict_to_curve(double_scheme(S, FP), conic())
    assert Z.degree == 18
    assert all(c.kind == "curvilinear" for c in Z.components)


def test_residual_of_2S_by_conic_is_S():
    S = [conic_pt(u) for u in range(1, 10)]
    assert residual_scheme(double_scheme(S, FP), conic()) == simple_scheme(S, FP)


def test_restriction_off_curve_is_empty():
    S = [pt(1, 1, 2), pt(1, 2, 1)]  # neither on x0*x2 = x1^2
    assert restrict_to_curve(double_scheme(S, FP), conic()).degree == 0


def test_residual_of_simple_point_on_curve():
    Z = simple_scheme([conic_pt(3)], FP)
    assert residual_scheme(Z, conic()).degree == 0


def test_node_is_singular():
    nodal = CurveForm.from_dict({(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1}, FP)  # y^2 z = x^3 + x^2 z
    Z = double_scheme([pt(0, 0, 1)], FP)
    assert nodal.contains_point(pt(0, 0, 1))
    with pytest.raises(SingularAtSupport):
        restrict_to_curve(Z, nodal)
    with pytest.raises(SingularAtSupport):
        residual_scheme(Z, nodal)


def test_curvilinear_tangency_rules():
    C = conic()
    p = conic_pt(2)
    tangent = curvilinear(p, C.tangent_direction(p), FP)
    transverse = curvilinear(p, pt(1, 0, 0), FP)
    Z = make_scheme([tangent], FP)
    assert restrict_to_curve(Z, C) == Z and residual_scheme(Z, C).degree == 0
    Z = make_scheme([transverse], FP)
    assert restrict_to_curve(Z, C).degree == 1 and residual_scheme(Z, C).degree == 1


def test_degree_additivity_on_random_schemes():
    rng = random.Random(5)
    C = conic()
    for _ in range(10):
        Z = random_scheme(rng, FP, max_points=5)
        on = [conic_pt(FP.random(rng)) for _ in range(rng.randint(1, 3))]
        comps = list(Z.components)
        for q in on:
            if all(c.point != q for c in comps):
                comps.append(rng.choice([simple(q), double(q), curvilinear(q, C.tangent_direction(q), FP)]))
        Z = make_scheme(comps, FP)
        assert restrict_to_curve(Z, C).degree + residual_scheme(Z, C).degree == Z.degree


def test_span_dimension():
    assert span_dimension([pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)], FP) == 2
    assert span_dimension([pt(1, 0, 1), pt(2, 0, 1), pt(3, 0, 1)], FP) == 1
    assert span_dimension([], FP) == -1


def test_curve_form_validation():
    with pytest.raises(FatPointsError):
        CurveForm(2, (0,) * 6, FP)
    with pytest.raises(FatPointsError):
        CurveForm(2, (1,) * 5, FP)
    L = CurveForm.from_dict({(1, 0, 0): 1}, FP)
    assert (L * L).degree == 2 and (L ** 3).as_dict() == {(3, 0, 0): 1}
