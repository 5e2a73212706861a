"""Points, forms and zero-dimensional schemes in P^n.

A scheme is a list of components with distinct support points.  Each
component is a simple point (degree 1), a curvilinear jet ``(p, v)`` (degree
2: value plus the derivative along ``v``), or a full double point (degree
n+1: all first partial derivatives).  A component contributes one linear
condition per unit of degree on forms of a given degree; stacking those rows
gives the conditions matrix whose rank is the Hilbert function.

Restriction to and residual with respect to a curve are computed
componentwise, which is exact for these component kinds at points where the
curve is smooth.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import CharacteristicTooSmall, DuplicatePoints, FatPointsError, SingularAtSupport
from .exactfield import Field

SIMPLE = "simple"
CURVILINEAR = "curvilinear"
DOUBLE = "double"
KINDS = (SIMPLE, CURVILINEAR, DOUBLE)


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of degree ``d`` in ``n+1`` variables, lex-descending."""
    if n < 1 or d < 0:
        raise FatPointsError("monomial_basis needs n >= 1 and d >= 0")

    def rec(nvars, deg):
        if nvars == 1:
            yield (deg,)
            return
        for e in range(deg, -1, -1):
            for rest in rec(nvars - 1, deg - e):
                yield (e,) + rest

    return tuple(rec(n + 1, d))


def num_monomials(n: int, d: int) -> int:
    return comb(n + d, n) if d >= 0 else 0


@dataclass(frozen=True)
class ProjPoint:
    """Canonical representative: last nonzero coordinate equal to 1."""

    coords: tuple

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def proj_point(coords: Iterable, F: Field) -> ProjPoint:
    c = [F(x) for x in coords]
    nz = [i for i, x in enumerate(c) if not F.is_zero(x)]
    if not nz:
        raise FatPointsError("the zero vector is not a projective point")
    s = F.inv(c[nz[-1]])
    return ProjPoint(tuple(F.mul(x, s) for x in c))


def proportional(u: Sequence, v: Sequence, F: Field) -> bool:
    """True when ``u`` and ``v`` are the same projective class (both nonzero)."""
    for i, j in combinations(range(len(u)), 2):
        if not F.is_zero(F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]))):
            return False
    return True


def _powers(x, d: int, F: Field) -> list:
    out = [F.one]
    for _ in range(d):
        out.append(F.mul(out[-1], x))
    return out


def eval_row(p: ProjPoint | Sequence, d: int, F: Field) -> list:
    """Values at ``p`` of the degree-``d`` monomials, in basis order."""
    n = len(p) - 1
    pw = [_powers(x, d, F) for x in p]
    row = []
    for e in monomial_basis(n, d):
        v = F.one
        for k, ek in enumerate(e):
            if ek:
                v = F.mul(v, pw[k][ek])
        row.append(v)
    return row


def _check_char(d: int, F: Field):
    if F.characteristic and d >= F.characteristic:
        raise CharacteristicTooSmall(f"degree {d} needs characteristic 0 or > {d}")


def partial_rows(p: ProjPoint | Sequence, d: int, F: Field) -> list[list]:
    """Row k evaluates the partial derivative in ``x_k`` at ``p``."""
    _check_char(d, F)
    n = len(p) - 1
    if d == 0:
        return [[F.zero] for _ in range(n + 1)]
    pw = [_powers(x, d, F) for x in p]
    rows = [[] for _ in range(n + 1)]
    for e in monomial_basis(n, d):
        for k in range(n + 1):
            ek = e[k]
            if ek == 0:
                rows[k].append(F.zero)
                continue
            v = F(ek)
            for j, ej in enumerate(e):
                exp = ej - 1 if j == k else ej
                if exp:
                    v = F.mul(v, pw[j][exp])
            rows[k].append(v)
    return rows


def derivative_row(p: ProjPoint | Sequence, v: ProjPoint | Sequence, d: int, F: Field) -> list:
    """Row whose dot product with a coefficient vector is the derivative along ``v`` at ``p``."""
    rows = partial_rows(p, d, F)
    out = [F.zero] * len(rows[0])
    for k, vk in enumerate(v):
        if F.is_zero(vk):
            continue
        out = [F.add(a, F.mul(vk, b)) for a, b in zip(out, rows[k])]
    return out


@dataclass(frozen=True)
class CurveForm:
    """A nonzero form of degree ``degree`` in the monomial basis order."""

    degree: int
    coefficients: tuple
    field: Field = dc_field(compare=False)
    n: int = 2

    def __post_init__(self):
        if self.degree < 1:
            raise FatPointsError("curve degree must be >= 1")
        if len(self.coefficients) != num_monomials(self.n, self.degree):
            raise FatPointsError("coefficient vector has the wrong length")
        if all(self.field.is_zero(c) for c in self.coefficients):
            raise FatPointsError("the zero form is not a curve")

    @classmethod
    def from_dict(cls, terms: dict, F: Field, n: int = 2) -> "CurveForm":
        degrees = {sum(e) for e in terms}
        if len(degrees) != 1:
            raise FatPointsError("terms are not homogeneous")
        (d,) = degrees
        basis = monomial_basis(n, d)
        coeffs = tuple(F(terms.get(e, 0)) for e in basis)
        return cls(d, coeffs, F, n)

    def as_dict(self) -> dict:
        basis = monomial_basis(self.n, self.degree)
        return {e: c for e, c in zip(basis, self.coefficients) if not self.field.is_zero(c)}

    def __mul__(self, other: "CurveForm") -> "CurveForm":
        F = self.field
        out: dict = {}
        for e1, c1 in self.as_dict().items():
            for e2, c2 in other.as_dict().items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return CurveForm.from_dict(out, F, self.n)

    def __pow__(self, k: int) -> "CurveForm":
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def evaluate(self, p) -> object:
        F = self.field
        row = eval_row(p, self.degree, F)
        return _dot(row, self.coefficients, F)

    def gradient(self, p) -> list:
        F = self.field
        return [_dot(r, self.coefficients, F) for r in partial_rows(p, self.degree, F)]

    def contains_point(self, p) -> bool:
        return self.field.is_zero(self.evaluate(p))

    def is_smooth_at(self, p) -> bool:
        return any(not self.field.is_zero(g) for g in self.gradient(p))

    def tangent_direction(self, p: ProjPoint) -> ProjPoint:
        """A point of the tangent line at ``p`` other than ``p`` itself."""
        F = self.field
        g = self.gradient(p)
        if all(F.is_zero(x) for x in g):
            raise SingularAtSupport(f"curve is singular at {p.coords}")
        return kernel_direction(g, p, F)


def kernel_direction(g: Sequence, p: ProjPoint, F: Field) -> ProjPoint:
    """A vector in ``ker g`` not proportional to ``p`` (``p`` itself lies in ``ker g``)."""
    m = len(g)
    for i, j in combinations(range(m), 2):
        v = [F.zero] * m
        v[i] = g[j]
        v[j] = F.neg(g[i])
        if all(F.is_zero(x) for x in v):
            continue
        if not proportional(v, p.coords, F):
            return proj_point(v, F)
    raise FatPointsError("kernel of the gradient is one-dimensional")


def _dot(a, b, F: Field):
    s = F.zero
    for x, y in zip(a, b):
        if not F.is_zero(x) and not F.is_zero(y):
            s = F.add(s, F.mul(x, y))
    return s


@dataclass(frozen=True)
class SchemeComponent:
    kind: str
    point: ProjPoint
    direction: ProjPoint | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FatPointsError(f"unknown component kind {self.kind!r}")
        if (self.kind == CURVILINEAR) != (self.direction is not None):
            raise FatPointsError("direction is required exactly for curvilinear components")

    def degree(self) -> int:
        if self.kind == SIMPLE:
            return 1
        if self.kind == CURVILINEAR:
            return 2
        return self.point.n + 1


def simple(p: ProjPoint) -> SchemeComponent:
    return SchemeComponent(SIMPLE, p)


def double(p: ProjPoint) -> SchemeComponent:
    return SchemeComponent(DOUBLE, p)


def curvilinear(p: ProjPoint, v: ProjPoint, F: Field) -> SchemeComponent:
    if proportional(p.coords, v.coords, F):
        raise FatPointsError("curvilinear direction equals the point")
    return SchemeComponent(CURVILINEAR, p, v)


def component_rows(c: SchemeComponent, d: int, F: Field) -> list[list]:
    """Linear conditions imposed by ``c`` on forms of degree ``d`` (one per unit of degree)."""
    if c.kind == SIMPLE:
        return [eval_row(c.point, d, F)]
    if c.kind == CURVILINEAR:
        return [eval_row(c.point, d, F), derivative_row(c.point, c.direction, d, F)]
    if d == 0:
        # Euler's relation is unavailable in degree 0: constants only see the value
        return [eval_row(c.point, 0, F)] + [[F.zero] for _ in range(c.point.n)]
    return partial_rows(c.point, d, F)


def component_contains(big: SchemeComponent, small: SchemeComponent, F: Field) -> bool:
    """Whether ``small`` is a subscheme of ``big`` (same support assumed)."""
    if big.point != small.point:
        return False
    if small.kind == SIMPLE or big.kind == DOUBLE:
        return True
    if big.kind == SIMPLE:
        return False
    if small.kind == DOUBLE:
        return False
    # two jets at p agree iff p, v, v' span a plane
    return _rank3(big.point, big.direction, small.direction, F) == 2


def _rank3(p, v, w, F) -> int:
    return F.rank([list(p), list(v), list(w)])


@dataclass(frozen=True)
class ZeroDimScheme:
    components: tuple
    field: Field = dc_field(compare=False)
    n: int = 2

    def __post_init__(self):
        pts = [c.point for c in self.components]
        if len(set(pts)) != len(pts):
            raise DuplicatePoints("scheme components must have distinct supports")

    @property
    def degree(self) -> int:
        return sum(c.degree() for c in self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def support(self) -> list[ProjPoint]:
        return [c.point for c in self.components]

    def component_at(self, p: ProjPoint) -> SchemeComponent | None:
        for c in self.components:
            if c.point == p:
                return c
        return None

    def replace(self, i: int, comp: SchemeComponent | None) -> "ZeroDimScheme":
        comps = list(self.components)
        if comp is None:
            del comps[i]
        else:
            comps[i] = comp
        return ZeroDimScheme(tuple(comps), self.field, self.n)

    def contains(self, other: "ZeroDimScheme") -> bool:
        for c in other.components:
            big = self.component_at(c.point)
            if big is None or not component_contains(big, c, self.field):
                return False
        return True

    def __repr__(self):
        kinds = {k: sum(c.kind == k for c in self.components) for k in KINDS}
        return f"ZeroDimScheme(deg={self.degree}, {kinds})"


def make_scheme(components: Iterable[SchemeComponent], F: Field, n: int = 2) -> ZeroDimScheme:
    return ZeroDimScheme(tuple(components), F, n)


def _check_distinct(S: Sequence[ProjPoint]):
    if len(set(S)) != len(S):
        raise DuplicatePoints("points must be pairwise distinct")


def double_scheme(S: Sequence[ProjPoint], F: Field, n: int | None = None) -> ZeroDimScheme:
    _check_distinct(S)
    if n is None:
        n = S[0].n if S else 2
    return ZeroDimScheme(tuple(double(p) for p in S), F, n)


def simple_scheme(S: Sequence[ProjPoint], F: Field, n: int | None = None) -> ZeroDimScheme:
    _check_distinct(S)
    if n is None:
        n = S[0].n if S else 2
    return ZeroDimScheme(tuple(simple(p) for p in S), F, n)


def _is_tangent(C: CurveForm, c: SchemeComponent) -> bool:
    g = C.gradient(c.point)
    return C.field.is_zero(_dot(g, c.direction.coords, C.field))


def _on_curve_smooth(C: CurveForm, p: ProjPoint) -> bool:
    if not C.contains_point(p):
        return False
    if not C.is_smooth_at(p):
        raise SingularAtSupport(f"curve is singular at support point {p.coords}")
    return True


def restrict_to_curve(Z: ZeroDimScheme, C: CurveForm) -> ZeroDimScheme:
    """The scheme ``Z ∩ C`` for ``C`` smooth at every support point it contains."""
    F = Z.field
    if Z.n != 2:
        raise FatPointsError("restriction is implemented for plane curves only")
    out = []
    for c in Z.components:
        if not _on_curve_smooth(C, c.point):
            continue
        if c.kind == SIMPLE:
            out.append(c)
        elif c.kind == CURVILINEAR:
            out.append(c if _is_tangent(C, c) else simple(c.point))
        else:
            out.append(curvilinear(c.point, C.tangent_direction(c.point), F))
    return ZeroDimScheme(tuple(out), F, Z.n)


def residual_scheme(Z: ZeroDimScheme, C: CurveForm) -> ZeroDimScheme:
    """``Res_C(Z)``, so that ``deg Z = deg(Z ∩ C) + deg Res_C(Z)``."""
    F = Z.field
    out = []
    for c in Z.components:
        if not _on_curve_smooth(C, c.point):
            out.append(c)
        elif c.kind == SIMPLE:
            continue
        elif c.kind == CURVILINEAR:
            if not _is_tangent(C, c):
                out.append(simple(c.point))
        else:
            out.append(simple(c.point))
    return ZeroDimScheme(tuple(out), F, Z.n)


def span_dimension(S: Sequence[ProjPoint], F: Field) -> int:
    """Projective dimension of the linear span of ``S`` (-1 for the empty set)."""
    if not S:
        return -1
    return F.rank([list(p.coords) for p in S]) - 1
