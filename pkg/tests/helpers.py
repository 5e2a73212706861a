"""Independent oracles and random generators shared by the tests.

The sympy oracles build condition matrices by symbolic differentiation and
take ranks over QQ, sharing no code with the package's row builders or rank
kernels.
"""

from itertools import product

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from fatpoints.exactfield import field_create
from fatpoints.geometry import (
    curvilinear,
    double,
    make_scheme,
    proj_point,
    simple,
)

X = sp.symbols("x0 x1 x2")


def sympy_monomials(d):
    """Degree-``d`` monomials, lex-descending on exponents."""
    return [X[0] ** i * X[1] ** j * X[2] ** (d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def sympy_condition_rows(components, d):
    """``components``: list of (kind, point, direction) with integer coordinates."""
    mons = sympy_monomials(d)
    rows = []
    for kind, p, v in components:
        sub = dict(zip(X, p))
        if kind == "simple":
            rows.append([m.subs(sub) for m in mons])
        elif kind == "curvilinear":
            rows.append([m.subs(sub) for m in mons])
            rows.append([sum(vk * sp.diff(m, xk) for vk, xk in zip(v, X)).subs(sub) for m in mons])
        else:
            for xk in X:
                rows.append([sp.diff(m, xk).subs(sub) for m in mons])
    return rows


def sympy_h1(components, d):
    deg = sum({"simple": 1, "curvilinear": 2, "double": 3}[k] for k, _, _ in components)
    if d < 0:
        return deg
    if d == 0:
        return deg - (1 if components else 0)
    rows = sympy_condition_rows(components, d)
    return deg - (sympy_rank(rows) if rows else 0)


def sympy_rank(rows):
    return DomainMatrix.from_Matrix(sp.Matrix(rows)).convert_to(QQ).rank()


def brute_force_character(h1_seq, s, tau):
    """All characters (n_0 >= ... >= n_{s-1} >= s) reproducing ``h1_seq[t]`` for t >= 0."""
    found = []
    for entries in product(range(s, tau + 3), repeat=s):
        if any(a < b for a, b in zip(entries, entries[1:])):
            continue
        ok = all(
            sum(max(n - t - 1, 0) - max(i - t - 1, 0) for i, n in enumerate(entries)) == h
            for t, h in enumerate(h1_seq)
        )
        if ok:
            found.append(entries)
    return found


def random_points(rng, F, k, bound=None):
    pts = []
    while len(pts) < k:
        if bound is None:
            c = (F.random(rng), F.random(rng), 1)
        else:
            c = (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(1, bound))
        p = proj_point(c, F)
        if p not in pts:
            pts.append(p)
    return pts


def random_scheme(rng, F, max_points=5, bound=None):
    k = rng.randint(1, max_points)
    pts = random_points(rng, F, k, bound)
    comps = []
    for p in pts:
        kind = rng.choice(("simple", "curvilinear", "double"))
        if kind == "simple":
            comps.append(simple(p))
        elif kind == "double":
            comps.append(double(p))
        else:
            while True:
                v = random_points(rng, F, 1, bound)[0]
                try:
                    comps.append(curvilinear(p, v, F))
                    break
                except ValueError:
                    continue
    return make_scheme(comps, F)


def random_subscheme(rng, Z):
    """Drop or shorten components at random; the result is contained in ``Z``."""
    F = Z.field
    comps = []
    for c in Z.components:
        r = rng.random()
        if r < 0.25:
            continue
        if r < 0.5 and c.kind != "simple":
            if c.kind == "double" and rng.random() < 0.5:
                v = random_points(rng, F, 1)[0]
                try:
                    comps.append(curvilinear(c.point, v, F))
                    continue
                except ValueError:
                    pass
            comps.append(simple(c.point))
            continue
        comps.append(c)
    return make_scheme(comps, F)


PRIME = field_create()
