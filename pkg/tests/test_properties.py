"""Algebraic invariants over seeded random schemes (100 derandomized examples each)."""

import random
from math import comb

from hypothesis import given, settings, strategies as st

from fatpoints.cohomology import (
    bound_checks,
    character_to_h1,
    cohomology,
    hilbert_profile,
    numerical_character,
    s_min,
    tau_max,
)
from fatpoints.constructions import conic_point
from fatpoints.exactfield import field_create
from fatpoints.geometry import component_rows, curvilinear, double_scheme, proj_point, simple_scheme

from helpers import random_points, random_scheme, random_subscheme

FP = field_create()
SEEDS = st.integers(0, 2**32 - 1)
PROPERTY = settings(max_examples=100, derandomize=True, deadline=None)


def structured_points(rng, k):
    """Mix of general points, points on one line and points on the standard conic."""
    line = (FP.random(rng), FP.random(rng), 1)
    pts = []
    while len(pts) < k:
        r = rng.random()
        if r < 0.4:
            p = random_points(rng, FP, 1)[0]
        elif r < 0.7:
            # the line x1 = line[1] * x2
            lam = FP.random(rng)
            p = proj_point((FP.add(line[0], lam), line[1], 1), FP)
        else:
            p = conic_point(FP.random(rng), FP)
        if p not in pts:
            pts.append(p)
    return pts


@PROPERTY
@given(SEEDS, st.integers(0, 7))
def test_euler_identity(seed, d):
    Z = random_scheme(random.Random(seed), FP, max_points=6)
    h0, h1 = cohomology(Z, d)
    assert h0 >= 0 and h1 >= 0
    assert h0 - h1 == comb(d + 2, 2) - Z.degree


@PROPERTY
@given(SEEDS, st.integers(1, 7))
def test_monotone_in_subscheme(seed, d):
    rng = random.Random(seed)
    Z = random_scheme(rng, FP, max_points=6)
    W = random_subscheme(rng, Z)
    assert Z.contains(W)
    h0Z, h1Z = cohomology(Z, d)
    h0W, h1W = cohomology(W, d)
    assert h0Z <= h0W and h1W <= h1Z


@PROPERTY
@given(SEEDS)
def test_monotone_in_degree(seed):
    Z = random_scheme(random.Random(seed), FP, max_points=6)
    vals = [cohomology(Z, d) for d in range(1, 9)]
    assert all(a[0] <= b[0] for a, b in zip(vals, vals[1:]))
    assert all(a[1] >= b[1] for a, b in zip(vals, vals[1:]))


@PROPERTY
@given(SEEDS)
def test_character_round_trip(seed):
    Z = random_scheme(random.Random(seed), FP, max_points=6)
    ch = numerical_character(Z)
    P = hilbert_profile(Z)
    for t in range(P.tau + 3):
        assert character_to_h1(ch, t) == cohomology(Z, t)[1]


@PROPERTY
@given(SEEDS)
def test_character_sum_and_first_entry(seed):
    Z = random_scheme(random.Random(seed), FP, max_points=6)
    ch = numerical_character(Z)
    s = s_min(Z)
    assert len(ch) == s
    assert sum(ch) == Z.degree + comb(s, 2)
    assert ch[0] == tau_max(Z) + 2
    assert ch[-1] >= s


@PROPERTY
@given(SEEDS)
def test_degree_bounds(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        Z = random_scheme(rng, FP, max_points=6)
    else:
        Z = simple_scheme(structured_points(rng, rng.randint(1, 9)), FP)
    r = bound_checks(Z)
    assert r["lower"] <= r["z"] <= r["upper"]


@PROPERTY
@given(SEEDS, st.integers(1, 9))
def test_double_scheme_degree_chain(seed, k):
    S = structured_points(random.Random(seed), k)
    sS = s_min(simple_scheme(S, FP))
    s2S = s_min(double_scheme(S, FP))
    assert sS < s2S <= 2 * sS


@PROPERTY
@given(SEEDS, st.integers(1, 8))
def test_curvilinear_rows_invariant_under_euler_shift(seed, d):
    rng = random.Random(seed)
    p, v = random_points(rng, FP, 2)
    lam = FP.random(rng)
    w = proj_point([FP.add(a, FP.mul(lam, b)) for a, b in zip(v.coords, p.coords)], FP)
    A = component_rows(curvilinear(p, v, FP), d, FP)
    B = component_rows(curvilinear(p, w, FP), d, FP)
    assert FP.rank(A) == FP.rank(B) == FP.rank(A + B)
