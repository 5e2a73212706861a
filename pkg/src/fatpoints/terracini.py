"""Terracini membership, critical schemes and the numerical-character dichotomy.

A point set ``S`` in P^n is Terracini in degree ``d`` when ``2S`` has both
``h0(I_2S(d)) > 0`` and ``h1(I_2S(d)) > 0`` and ``S`` spans P^n.  It is
minimally Terracini when in addition every proper subset ``A`` has
``h1(I_2A(d)) = 0``; by monotonicity of ``h1`` under inclusion only the
subsets of size ``|S| - 1`` need testing.

A ``d``-critical scheme for ``S`` is a subscheme of ``2S`` whose components
have degree at most 2, with ``h1 > 0`` in degree ``d`` and ``h1 = 0`` for
every proper subscheme.  The search here is greedy over a finite pool of jet
directions; existence is guaranteed in general but a finite pool can miss.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .cohomology import (
    conditions_rows,
    cohomology,
    h1,
    numerical_character,
    s_min,
    tau_max,
)
from .errors import (
    CriticalSearchFailed,
    CurveDoesNotContainZ,
    FatPointsError,
    PreconditionViolated,
    SingularAtSupport,
)
from .exactfield import Field, nullspace
from .geometry import (
    CURVILINEAR,
    DOUBLE,
    SIMPLE,
    CurveForm,
    ProjPoint,
    ZeroDimScheme,
    curvilinear,
    double_scheme,
    num_monomials,
    proj_point,
    proportional,
    restrict_to_curve,
    simple,
    simple_scheme,
    span_dimension,
)


@dataclass
class TerraciniVerdict:
    h0: int
    h1: int
    spans: bool
    terracini: bool
    minimal: bool | None = None
    # indices i such that S minus S[i] still has h1(I_2A(d)) > 0
    witnesses: list = dc_field(default_factory=list)
    npoints: int = 0
    degree: int = 0

    def to_json(self) -> dict:
        return {
            "points": self.npoints,
            "degree": self.degree,
            "h0": self.h0,
            "h1": self.h1,
            "spans": self.spans,
            "terracini": self.terracini,
            "minimal": self.minimal,
            "witnesses": list(self.witnesses),
        }


def is_terracini(S: list[ProjPoint], d: int, F: Field) -> TerraciniVerdict:
    if d < 1:
        raise PreconditionViolated("degree must be >= 1")
    Z = double_scheme(S, F)
    h0_, h1_ = cohomology(Z, d) if S else (num_monomials(2, d), 0)
    n = S[0].n if S else 2
    spans = span_dimension(S, F) == n
    return TerraciniVerdict(
        h0=h0_, h1=h1_, spans=spans, terracini=h0_ > 0 and h1_ > 0 and spans,
        npoints=len(S), degree=d,
    )


def is_minimally_terracini(S: list[ProjPoint], d: int, F: Field, stop_at_first: bool = False) -> TerraciniVerdict:
    """Terracini verdict plus minimality over all co-size-1 subsets.

    ``stop_at_first`` ends the subset scan at the first failing subset, which
    is what probes want; the verdict is the same either way.
    """
    v = is_terracini(S, d, F)
    if not v.terracini:
        v.minimal = False
        return v
    Z = double_scheme(S, F)
    rows = conditions_rows(Z, d)
    block = S[0].n + 1
    for i in range(len(S)):
        sub = rows[: i * block] + rows[(i + 1) * block:]
        rank = F.rank(sub) if sub else 0
        if len(sub) - rank > 0:
            v.witnesses.append(i)
            if stop_at_first:
                break
    v.minimal = not v.witnesses
    return v


@dataclass(frozen=True)
class CriticalScheme:
    scheme: ZeroDimScheme
    points: tuple
    d: int

    @property
    def field(self):
        return self.scheme.field


def curves_through(S: list[ProjPoint], k: int, F: Field) -> list[CurveForm]:
    """A basis of ``|I_S(k)|``."""
    Z = simple_scheme(S, F)
    rows = conditions_rows(Z, k)
    n = S[0].n if S else 2
    basis = nullspace(rows, num_monomials(n, k), F)
    return [CurveForm(k, tuple(v), F, n) for v in basis]


def low_degree_curves(S: list[ProjPoint], F: Field) -> list[CurveForm]:
    """Bases of ``|I_S(k)|`` for ``s(S) <= k <= s(2S)``, lowest degree first."""
    s_lo = s_min(simple_scheme(S, F))
    s_hi = s_min(double_scheme(S, F))
    out = []
    for k in range(s_lo, s_hi + 1):
        out.extend(curves_through(S, k, F))
    return out


def direction_pool(p: ProjPoint, curves: list[CurveForm], F: Field, pool_size: int, rng: random.Random) -> list[ProjPoint]:
    """Candidate jet directions at ``p``: tangents of ``curves`` first, then random ones."""
    pool: list[ProjPoint] = []
    for C in curves:
        if len(pool) >= pool_size:
            break
        if not C.is_smooth_at(p):
            continue
        v = C.tangent_direction(p)
        if not any(proportional(_jet_key(p, v, F), _jet_key(p, w, F), F) for w in pool):
            pool.append(v)
    while len(pool) < pool_size:
        v = proj_point([F.random(rng) for _ in p.coords], F)
        if not proportional(v.coords, p.coords, F):
            pool.append(v)
    return pool


def _jet_key(p: ProjPoint, v: ProjPoint, F: Field) -> list:
    # the jet only depends on v modulo p; the 2x2 minors of (p, v) identify it
    c = p.coords
    w = v.coords
    n = len(c)
    return [F.sub(F.mul(c[i], w[j]), F.mul(c[j], w[i])) for i in range(n) for j in range(i + 1, n)]


def find_critical_scheme(S: list[ProjPoint], d: int, F: Field, pool_size: int = 8, seed: int = 0) -> CriticalScheme:
    """Greedy reduction of ``2S`` to a ``d``-critical scheme."""
    if not is_terracini(S, d, F).terracini:
        raise PreconditionViolated("S is not Terracini in this degree")
    rng = random.Random(seed)
    Z = double_scheme(S, F)
    curves = low_degree_curves(S, F)
    pools: dict[int, list[ProjPoint]] = {}
    changed = True
    while changed:
        changed = False
        for idx, p in enumerate(S):
            i = next((j for j, c in enumerate(Z.components) if c.point == p), None)
            if i is None:
                continue
            c = Z.components[i]
            if c.kind == DOUBLE:
                if idx not in pools:
                    pools[idx] = direction_pool(p, curves, F, pool_size, rng)
                for v in pools[idx]:
                    cand = Z.replace(i, curvilinear(p, v, F))
                    if h1(cand, d) > 0:
                        Z, c, changed = cand, cand.components[i], True
                        break
            if c.kind == CURVILINEAR:
                cand = Z.replace(i, simple(p))
                if h1(cand, d) > 0:
                    Z, c, changed = cand, cand.components[i], True
            if c.kind == SIMPLE:
                cand = Z.replace(i, None)
                if h1(cand, d) > 0:
                    Z, changed = cand, True
    if any(c.kind == DOUBLE for c in Z.components):
        bad = [c.point.coords for c in Z.components if c.kind == DOUBLE]
        raise CriticalSearchFailed(f"no pool direction keeps h1 > 0 at {len(bad)} point(s); enlarge pool_size or change seed")
    cs = CriticalScheme(Z, tuple(S), d)
    if not _is_critical(Z, d):
        raise CriticalSearchFailed("greedy fixpoint is not critical")
    return cs


def reductions(Z: ZeroDimScheme):
    """Every maximal proper subscheme: drop one simple point or shorten one jet."""
    for i, c in enumerate(Z.components):
        if c.kind == SIMPLE:
            yield Z.replace(i, None)
        elif c.kind == CURVILINEAR:
            yield Z.replace(i, simple(c.point))
        else:
            raise FatPointsError("critical schemes have components of degree <= 2")


def _is_critical(Z: ZeroDimScheme, d: int) -> bool:
    if h1(Z, d) <= 0:
        return False
    return all(h1(W, d) == 0 for W in reductions(Z))


def verify_critical_properties(cs: CriticalScheme) -> dict:
    Z, d, F = cs.scheme, cs.d, cs.field
    S = list(cs.points)
    shape_ok = all(c.kind != DOUBLE for c in Z.components)
    twoS = double_scheme(S, F)
    checks = {
        "components_degree_le_2": shape_ok,
        "contained_in_2S": twoS.contains(Z),
        "support_is_S": set(Z.support) == set(S),
    }
    h1d = h1(Z, d) if Z.components else 0
    checks["h1_equals_1"] = h1d == 1
    checks["minimal"] = shape_ok and h1d > 0 and all(h1(W, d) == 0 for W in reductions(Z))
    out = {"degree": Z.degree, "d": d, "h1": h1d}
    if Z.components and h1d > 0:
        tau = tau_max(Z)
        ch = numerical_character(Z)
        sS, sZ, s2S = s_min(simple_scheme(S, F)), s_min(Z), s_min(twoS)
        checks["tau_equals_d"] = tau == d
        checks["n0_equals_d_plus_2"] = ch[0] == d + 2
        checks["n0_gt_n1"] = len(ch) < 2 or ch[0] > ch[1]
        checks["character_connected"] = ch.connected
        checks["s_chain"] = sS <= sZ <= s2S
        out.update(tau=tau, character=list(ch), s_S=sS, s_Z=sZ, s_2S=s2S)
    else:
        for k in ("tau_equals_d", "n0_equals_d_plus_2", "n0_gt_n1", "character_connected", "s_chain"):
            checks[k] = False
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return out


def curve_contains(C: CurveForm, Z: ZeroDimScheme) -> bool:
    F = Z.field
    for row in conditions_rows(Z, C.degree):
        acc = F.zero
        for a, b in zip(row, C.coefficients):
            acc = F.add(acc, F.mul(a, b))
        if not F.is_zero(acc):
            return False
    return True


def build_W_on_curve(cs: CriticalScheme, C: CurveForm) -> ZeroDimScheme:
    """Thicken every point of ``S`` to the jet along ``C``; the result contains ``Z``."""
    Z, F = cs.scheme, cs.field
    if not curve_contains(C, Z):
        raise CurveDoesNotContainZ("the curve does not contain the critical scheme")
    comps = []
    for p in cs.points:
        if not C.contains_point(p):
            raise CurveDoesNotContainZ(f"support point {p.coords} is not on the curve")
        if not C.is_smooth_at(p):
            raise SingularAtSupport(f"curve is singular at {p.coords}")
        comps.append(curvilinear(p, C.tangent_direction(p), F))
    W = ZeroDimScheme(tuple(comps), F, Z.n)
    if not W.contains(Z):
        raise CurveDoesNotContainZ("a jet of Z is transverse to the curve")
    return W


def verify_W(cs: CriticalScheme, W: ZeroDimScheme, C: CurveForm | None = None) -> dict:
    Z, d = cs.scheme, cs.d
    sZ = s_min(Z)
    tau = tau_max(W)
    sW = s_min(W)
    ch = numerical_character(W)
    checks = {
        "Z_subset_W": W.contains(Z),
        "every_component_degree_2": all(c.kind == CURVILINEAR for c in W.components),
        "tau_W_equals_d": tau == d,
        "s_W_equals_s_Z": sW == sZ,
        "character_connected": ch.connected,
    }
    if C is not None:
        checks["curve_degree_is_s_Z"] = C.degree == sZ
    return {
        "degree": W.degree, "tau": tau, "s_W": sW, "s_Z": sZ, "character": list(ch),
        "checks": checks, "ok": all(checks.values()),
    }


def lemma_z03_check(W: ZeroDimScheme, a: int, curves: list[CurveForm] = ()) -> dict:
    """Hypotheses and branch of the ``s = a`` / ``s < a`` dichotomy for ``W``.

    Hypotheses, with ``d = τ(W)``, ``s = s(W)``, ``w = deg W``:
    ``2s <= d+3``, connected character, ``a^2 <= w`` and ``a d >= a^2 - 3a + w``.
    Branch (i) reports only the numerical conclusion ``w = s(d+3-s)``.
    Branch (ii) looks for a curve of degree ``m < a`` with ``τ(W ∩ D) = d``;
    not finding one is reported, not treated as a refutation.
    """
    F = W.field
    d = tau_max(W)
    s = s_min(W)
    w = W.degree
    ch = numerical_character(W)
    hyp = {
        "a_s_le_half_d_plus_3": 2 * s <= d + 3,
        "b_connected": ch.connected,
        "c_a_squared_le_w": a * a <= w,
        "d_tau_ge_a_minus_3_plus_w_over_a": Fraction(d) >= a - 3 + Fraction(w, a),
    }
    out = {"a": a, "d": d, "s": s, "w": w, "character": list(ch), "hypotheses": hyp}
    if not all(hyp.values()):
        out["branch"] = None
        return out
    if s == a:
        out["branch"] = "i"
        out["w_equals_s_d_plus_3_minus_s"] = w == s * (d + 3 - s)
    elif s < a:
        out["branch"] = "ii"
        found = None
        cands = list(curves)
        for m in range(1, a):
            cands += curves_through_scheme(W, m)
            cands += curves_through(W.support, m, F)
        for D in cands:
            if D.degree >= a:
                continue
            try:
                inter = restrict_to_curve(W, D)
            except SingularAtSupport:
                continue
            if inter.components and tau_max(inter) == d:
                found = D
                break
        out["curve_found"] = found is not None
        out["curve_degree"] = found.degree if found is not None else None
        out["curve"] = [F.format(x) for x in found.coefficients] if found is not None else None
    else:
        out["branch"] = "s_gt_a"
    return out


def curves_through_scheme(Z: ZeroDimScheme, k: int) -> list[CurveForm]:
    """A basis of ``|I_Z(k)|``."""
    rows = conditions_rows(Z, k)
    basis = nullspace(rows, num_monomials(Z.n, k), Z.field)
    return [CurveForm(k, tuple(v), Z.field, Z.n) for v in basis]
