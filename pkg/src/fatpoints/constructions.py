"""Witness configurations, gap-theorem arithmetic and emptiness probes.

Witnesses for non-empty minimal Terracini loci are complete intersections:
``S = C ∩ B`` with ``deg C = t`` and ``deg B = (d+3-t)/2``, so that
``Z = C ∩ 2S`` is the complete intersection of ``C`` and ``B^2`` and is
critical in degree ``d``.  Two realizations are provided: the grid, where
``C`` and ``B`` are unions of lines, and a smooth conic cut by a random form.
Every conclusion is checked by rank computation on the constructed points.

Probes sample point sets of a given size and run the minimality test.  They
produce evidence only; a zero count proves nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil, comb, isqrt

from .cohomology import (
    h1,
    hilbert_profile,
    numerical_character,
    s_min,
    tau_max,
)
from .errors import (
    DegenerateParameters,
    DuplicateParameters,
    InsufficientRationalPoints,
    PreconditionViolated,
)
from .exactfield import Field, PrimeField, nullspace
from .geometry import (
    CurveForm,
    ProjPoint,
    double_scheme,
    num_monomials,
    proj_point,
    proportional,
    restrict_to_curve,
    simple_scheme,
)
from .cohomology import conditions_rows
from .terracini import is_minimally_terracini, reductions

GRID_STEP = 2


def f_of(t, d) -> Fraction:
    return Fraction(t * (d + 3 - t), 2)


def g_of(t, d) -> Fraction:
    return Fraction(t * (2 * d + 5 - t), 2)


def _check_distinct(vals, F: Field, what: str):
    red = [F(x) for x in vals]
    if len(set(red)) != len(red):
        raise DuplicateParameters(f"{what} parameters are not distinct in the field")
    return red


def linear_form(coeffs, F: Field) -> CurveForm:
    return CurveForm(1, tuple(F(c) for c in coeffs), F)


def grid_complete_intersection(a: int, b: int, F: Field, u=None, v=None):
    """Points ``(u_i : v_j : 1)`` cut out by ``A = Π(x0 - u_i x2)`` and ``B = Π(x1 - v_j x2)``."""
    if a < 1 or b < 1:
        raise PreconditionViolated("grid degrees must be positive")
    u = list(range(a)) if u is None else list(u)
    v = [GRID_STEP * j for j in range(b)] if v is None else list(v)
    if len(u) != a or len(v) != b:
        raise PreconditionViolated("parameter list lengths must equal the degrees")
    u = _check_distinct(u, F, "u")
    v = _check_distinct(v, F, "v")
    A = linear_form((1, 0, F.neg(u[0])), F)
    for x in u[1:]:
        A = A * linear_form((1, 0, F.neg(x)), F)
    B = linear_form((0, 1, F.neg(v[0])), F)
    for y in v[1:]:
        B = B * linear_form((0, 1, F.neg(y)), F)
    S = [proj_point((x, y, 1), F) for x in u for y in v]
    for p in S:
        ga, gb = A.gradient(p), B.gradient(p)
        if not (A.is_smooth_at(p) and B.is_smooth_at(p)) or proportional(ga, gb, F):
            raise DegenerateParameters(f"grid is not a transverse intersection at {p.coords}")
    return S, A, B


def ci_lemma_verify(a: int, b: int, F: Field, u=None, v=None) -> dict:
    """Check the cohomology of a grid complete intersection of degrees ``a, b``.

    ``h1(I_W(t)) = 0`` for ``a+b-2 <= t <= a+b+2``, ``h1(I_W(a+b-3)) = 1``, and
    every subscheme missing one point has ``h1 = 0`` in degree ``a+b-3``.
    """
    if not 1 <= a <= b:
        raise PreconditionViolated("need 1 <= a <= b")
    S, _, _ = grid_complete_intersection(a, b, F, u, v)
    W = simple_scheme(S, F)
    top = a + b - 3
    table = {t: h1(W, t) for t in range(max(top, 0), a + b + 3)}
    checks = {
        "degree_ab": W.degree == a * b,
        "h1_vanishes_from_a_plus_b_minus_2": all(table[t] == 0 for t in range(a + b - 2, a + b + 3)),
    }
    vacuous = top < 0
    removed = []
    if not vacuous:
        checks["h1_at_a_plus_b_minus_3_is_1"] = table[top] == 1
        rows = conditions_rows(W, top)
        for i in range(len(S)):
            sub = rows[:i] + rows[i + 1:]
            removed.append(len(sub) - (F.rank(sub) if sub else 0))
        checks["one_point_removed_h1_zero"] = all(x == 0 for x in removed)
    return {
        "a": a,
        "b": b,
        "degree": W.degree,
        "top": top,
        "h1": {str(t): table[t] for t in sorted(table)},
        "one_point_removed_h1": removed,
        "vacuous_top": vacuous,
        "checks": checks,
        "ok": all(checks.values()),
    }


def conic_point(u, F: Field) -> ProjPoint:
    return proj_point((F.mul(u, u), u, 1), F)


def conic_form(F: Field) -> CurveForm:
    """The smooth conic ``x0 x2 - x1^2``."""
    return CurveForm.from_dict({(1, 0, 1): 1, (0, 2, 0): -1}, F)


def conic_points(count: int, F: Field, params=None) -> list[ProjPoint]:
    """Points ``(u^2 : u : 1)`` on ``x0 x2 = x1^2``; no three are collinear."""
    params = list(range(1, count + 1)) if params is None else list(params)
    if len(params) != count:
        raise PreconditionViolated("need exactly `count` parameters")
    params = _check_distinct(params, F, "conic")
    return [conic_point(u, F) for u in params]


def _restrict_to_conic_poly(B: CurveForm, F: Field) -> list:
    """Coefficients (by power of u) of ``B(u^2, u, 1)``."""
    coeffs = [F.zero] * (2 * B.degree + 1)
    for (e0, e1, _), c in B.as_dict().items():
        k = 2 * e0 + e1
        coeffs[k] = F.add(coeffs[k], c)
    return coeffs


def _poly_eval(coeffs, x, F: Field):
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def conic_ci(b: int, F: Field, seed: int = 0):
    """``2b`` rational points cut on the smooth conic by a seeded degree-``b`` form.

    The ``2b`` parameters are drawn first and ``B`` is a random member of
    ``|I_S(b)|``; the intersection is then confirmed from ``B`` restricted to
    the conic, which must be a degree-``2b`` polynomial with exactly those
    roots.
    """
    if not isinstance(F, PrimeField):
        raise PreconditionViolated("conic_ci works over a prime field")
    if b < 1:
        raise PreconditionViolated("b must be >= 1")
    if 2 * b > F.p:
        raise InsufficientRationalPoints(f"F_{F.p} has fewer than {2 * b} points on the conic line")
    rng = random.Random(seed)
    params: list = []
    while len(params) < 2 * b:
        u = F.random(rng)
        if u not in params:
            params.append(u)
    S = [conic_point(u, F) for u in params]
    basis = nullspace(conditions_rows(simple_scheme(S, F), b), num_monomials(2, b), F)
    coeffs = [F.zero] * num_monomials(2, b)
    for vec in basis:
        lam = F.random(rng)
        coeffs = [F.add(x, F.mul(lam, y)) for x, y in zip(coeffs, vec)]
    if all(F.is_zero(c) for c in coeffs):
        raise InsufficientRationalPoints("random form vanished identically; retry with a new seed")
    B = CurveForm(b, tuple(coeffs), F)
    q = _restrict_to_conic_poly(B, F)
    # the point at infinity (1:0:0) of the conic is on B iff the top coefficient vanishes
    if F.is_zero(q[-1]) or any(not F.is_zero(_poly_eval(q, u, F)) for u in params):
        raise InsufficientRationalPoints(f"seed {seed}: form meets the conic in fewer than {2 * b} distinct rational points")
    D = conic_form(F)
    return S, D, B


def _o1o1_pre(t: int, d: int):
    if t < 2:
        raise PreconditionViolated("t must be >= 2")
    if (d + 3 - t) % 2:
        raise PreconditionViolated(f"d+3-t = {d + 3 - t} is odd")
    if d < 3 * t - 1:
        raise PreconditionViolated(f"d = {d} < 3t-1 = {3 * t - 1}")


def proposition_o1o1_instance(t: int, d: int, F: Field, variant: str = "grid", seed: int = 0, check_critical: bool = True):
    """Complete-intersection witness of ``T(2, d; t(d+3-t)/2)'`` with its critical scheme.

    Returns ``(S, C, Z, report)`` where ``C`` is the degree-``t`` curve and
    ``Z = C ∩ 2S``.
    """
    _o1o1_pre(t, d)
    b = (d + 3 - t) // 2
    if variant == "grid":
        S, C, _ = grid_complete_intersection(t, b, F)
    elif variant == "conic":
        if t != 2:
            raise PreconditionViolated("the conic variant needs t = 2")
        S, C, _ = conic_ci(b, F, seed)
    else:
        raise PreconditionViolated(f"unknown variant {variant!r}")
    x = t * (d + 3 - t) // 2
    verdict = is_minimally_terracini(S, d, F)
    Z = restrict_to_curve(double_scheme(S, F), C)
    h1d = h1(Z, d)
    tau = tau_max(Z)
    ch = numerical_character(Z)
    checks = {
        "size_is_x": len(S) == x,
        "minimally_terracini": bool(verdict.minimal),
        "critical_degree_2x": Z.degree == 2 * x,
        "h1_Z_d_is_1": h1d == 1,
        "tau_Z_is_d": tau == d,
        "character_connected": ch.connected,
        "n0_is_d_plus_2": ch[0] == d + 2,
    }
    if check_critical:
        checks["Z_is_critical"] = all(h1(W, d) == 0 for W in reductions(Z))
    report = {
        "t": t,
        "d": d,
        "variant": variant,
        "x": x,
        "points": len(S),
        "h0_2S": verdict.h0,
        "h1_2S": verdict.h1,
        "minimal": verdict.minimal,
        "critical_degree": Z.degree,
        "h1_Z": h1d,
        "tau_Z": tau,
        "character_Z": list(ch),
        "checks": checks,
        "ok": all(checks.values()),
    }
    return S, C, Z, report


@dataclass
class Due2Report:
    c: int
    d: int
    parity: str
    xs: list
    ys: list
    checks: dict
    steps: list = dc_field(default_factory=list)
    audit: dict = dc_field(default_factory=dict)
    evidence: dict | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        out = {
            "c": self.c,
            "d": self.d,
            "parity": self.parity,
            "xs": self.xs,
            "ys": self.ys,
            "checks": self.checks,
            "steps": self.steps,
            "audit": self.audit,
            "ok": self.ok,
        }
        if self.evidence is not None:
            out["evidence"] = self.evidence
        return out


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def due2_table(c: int, d: int) -> Due2Report:
    """The arithmetic of the gap theorem at ``(c, d)``, checked exactly.

    ``x_i = f(2i)`` for odd ``d`` and ``f(2i+1)`` for even ``d``, ``y_i = x_{i+1} - 1``.
    For each gap the step-2 quantities ``a``, ``w = 2 y_i`` are checked against
    ``a^2 <= w``, ``2 f(a) > w`` and ``w > g(2i+1)``.

    ``audit`` also records ``w > g(a-1)``, the bound the even case needs for
    curves of degree up to ``a-1 = 2i+2``.
    """
    if c < 2:
        raise PreconditionViolated("c must be >= 2")
    odd = d % 2 == 1
    ts = [2 * i if odd else 2 * i + 1 for i in range(1, c + 1)]
    xs = [f_of(t, d) for t in ts]
    xs_int = [int(x) for x in xs]
    ys = [xs_int[i + 1] - 1 for i in range(c - 1)]
    checks: dict[str, bool] = {}
    checks["d_ge_14c_plus_2"] = d >= 14 * c + 2
    checks["x_integral"] = all(x.denominator == 1 for x in xs)
    checks["top_t_in_increasing_range"] = 2 * (2 * c + 1) <= d + 3
    seq = []
    for i in range(c - 1):
        seq += [xs_int[i], ys[i]]
    seq.append(xs_int[-1])
    checks["interleaving"] = all(p < q for p, q in zip(seq, seq[1:]))
    checks["y_is_next_x_minus_1"] = all(ys[i] == xs_int[i + 1] - 1 for i in range(c - 1))
    checks["step1_parity"] = all((d + 3 - t) % 2 == 0 for t in ts)
    checks["step1_d_ge_3t_minus_1"] = all(d >= 3 * t - 1 for t in ts)
    # hypothesis (a): s > (d+3)/2 would force w >= (d+5)(d+3)/8 > 2 y_{c-1}
    w_max = 2 * ys[-1]
    checks["a_threshold"] = Fraction((d + 5) * (d + 3), 8) > w_max
    if odd:
        lo, disc = 8 * c - 4, 32 * c * c - 16 * c - 15
    else:
        lo, disc = 8 * c, 32 * c * c + 16 * c - 15
    checks["a_threshold_closed_form"] = d > lo and (d - lo) ** 2 > disc
    steps = []
    c_ok = d_ok = g_ok = True
    g_case_ok = True
    for i in range(1, c):
        y = ys[i - 1]
        w = 2 * y
        a = 2 * i + 2 if odd else 2 * i + 3
        fa = f_of(a, d)
        g_2i1 = g_of(2 * i + 1, d)
        g_case = g_of(a - 1, d)
        row = {
            "i": i,
            "y": y,
            "w": w,
            "a": a,
            "a_squared": a * a,
            "f_a": _frac(fa),
            "g_2i_plus_1": _frac(g_2i1),
            "g_a_minus_1": _frac(g_case),
            "c_a_squared_le_w": a * a <= w,
            "c_a_squared_le_y": a * a <= y,
            "d_2f_a_gt_w": 2 * fa > w,
            "f_a_is_next_x": fa == xs[i],
            "w_gt_g_2i_plus_1": w > g_2i1,
            "w_gt_g_a_minus_1": w > g_case,
        }
        steps.append(row)
        c_ok &= row["c_a_squared_le_w"] and row["c_a_squared_le_y"]
        d_ok &= row["d_2f_a_gt_w"] and row["f_a_is_next_x"]
        g_ok &= row["w_gt_g_2i_plus_1"]
        g_case_ok &= row["w_gt_g_a_minus_1"]
    checks["c_a_squared_le_w"] = c_ok
    checks["d_2f_a_gt_w"] = d_ok
    checks["w_gt_g_2i_plus_1"] = g_ok
    audit = {"w_gt_g_a_minus_1": g_case_ok}
    return Due2Report(c, d, "odd" if odd else "even", xs_int, ys, checks, steps, audit)


def due2_witness_params(c: int, d: int) -> list[tuple[int, int]]:
    """``(t, d)`` pairs realizing ``x_1..x_c`` through the complete-intersection witness."""
    odd = d % 2 == 1
    return [(2 * i if odd else 2 * i + 1, d) for i in range(1, c + 1)]


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------

GENERATORS = ("uniform", "on-conic", "on-curve", "perturbed-grid")


def _random_points(y: int, F: Field, rng: random.Random, maker) -> list[ProjPoint]:
    pts: list[ProjPoint] = []
    seen = set()
    while len(pts) < y:
        p = maker()
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts


def _gen_uniform(y, F, rng):
    return _random_points(y, F, rng, lambda: proj_point((F.random(rng), F.random(rng), 1), F))


def _gen_on_conic(y, F, rng):
    return _random_points(y, F, rng, lambda: conic_point(F.random(rng), F))


def _gen_on_curve(y, F, rng):
    # graph curves x1 x2^(k-1) = f(x0, x2) are rational, so points are cheap to sample
    k = rng.choice((2, 3, 4))
    coeffs = [F.random(rng) for _ in range(k + 1)]

    def make():
        u = F.random(rng)
        return proj_point((u, _poly_eval(coeffs, u, F), 1), F)

    return _random_points(y, F, rng, make)


def _gen_perturbed_grid(y, F, rng):
    a = rng.randint(2, max(2, isqrt(y)))
    b = -(-y // a)
    us = rng.sample(range(1, 10 * (a + b) + 10), a)
    vs = rng.sample(range(1, 10 * (a + b) + 10), b)
    pts = [proj_point((u, v, 1), F) for u in us for v in vs]
    rng.shuffle(pts)
    pts = pts[:y]
    for _ in range(rng.randint(0, 3)):
        j = rng.randrange(y)
        q = proj_point((F.random(rng), F.random(rng), 1), F)
        if q not in pts:
            pts[j] = q
    return pts


_GEN = {
    "uniform": _gen_uniform,
    "on-conic": _gen_on_conic,
    "on-curve": _gen_on_curve,
    "perturbed-grid": _gen_perturbed_grid,
}


def emptiness_probe(d: int, y: int, trials: int, seed: int, generator: str, F: Field) -> dict:
    """Randomized search for ``y``-point minimally Terracini sets in degree ``d``.

    Evidence only.  ``generator`` is one of :data:`GENERATORS` or ``mixed``,
    which cycles through them by trial index.
    """
    if trials < 1:
        raise PreconditionViolated("trials must be >= 1")
    if generator != "mixed" and generator not in _GEN:
        raise PreconditionViolated(f"unknown generator {generator!r}")
    by_gen = {}
    found = []
    for k in range(trials):
        name = GENERATORS[k % len(GENERATORS)] if generator == "mixed" else generator
        rng = random.Random(f"{seed}:{k}")
        S = _GEN[name](y, F, rng)
        v = is_minimally_terracini(S, d, F, stop_at_first=True)
        st = by_gen.setdefault(name, {"trials": 0, "terracini": 0, "minimal": 0})
        st["trials"] += 1
        st["terracini"] += int(v.terracini)
        st["minimal"] += int(bool(v.minimal))
        if v.minimal:
            found.append({"trial": k, "generator": name, "points": [[F.format(x) for x in p] for p in S]})
    return {
        "label": "evidence",
        "d": d,
        "y": y,
        "trials": trials,
        "seed": seed,
        "generator": generator,
        "found": len(found),
        "by_generator": by_gen,
        "counterexamples": found,
    }


# ---------------------------------------------------------------------------
# d+1 points on a conic
# ---------------------------------------------------------------------------

def example_due001_report(d: int, F: Field) -> dict:
    """``d+1`` points on a smooth conic: Hilbert data of ``S`` and ``2S`` in degree ``d``."""
    if d < 8:
        raise PreconditionViolated("the conic example is stated for d >= 8")
    S = conic_points(d + 1, F)
    half = ceil(d / 2)
    X = simple_scheme(S, F)
    P = hilbert_profile(X)
    ts = list(range(half + 1))
    h1_S = [h1(X, t) for t in ts]
    expected_h1 = [d - 2 * t for t in range(half)] + [0]
    delta_S = [P.delta[t] if t < len(P.delta) else 0 for t in ts]
    expected_delta = [1] + [2] * (half - 1) + [d + 2 - 2 * half]
    ch_S = numerical_character(X)
    Z = double_scheme(S, F)
    ch_Z = numerical_character(Z)
    h1_2S = {str(t): h1(Z, t) for t in (d - 2, d - 1, d, d + 1)}
    expected_ch_Z = (d + 2, d + 1, half + 3, d - half + 3)
    v = is_minimally_terracini(S, d, F)
    sS, s2S = P.s, s_min(Z)
    checks = {
        "h1_S_table": h1_S == expected_h1,
        "delta_S_table": delta_S == expected_delta,
        "tau_S": P.tau == half - 1,
        "character_S": ch_S.entries == (half + 1, d - half + 1),
        "h1_2S_d_is_1": h1_2S[str(d)] == 1,
        "h1_2S_d_minus_1_is_3": h1_2S[str(d - 1)] == 3,
        "h1_2S_d_minus_2_is_5": h1_2S[str(d - 2)] == 5,
        "tau_2S_is_d": tau_max(Z) == d,
        "s_2S_is_4": s2S == 4,
        "s_2S_is_twice_s_S": s2S == 2 * sS,
        "character_2S": ch_Z.entries == expected_ch_Z,
        "character_2S_disconnected": not ch_Z.connected,
        "minimally_terracini": bool(v.minimal),
    }
    return {
        "d": d,
        "points": len(S),
        "t": ts,
        "h1_S": h1_S,
        "delta_S": delta_S,
        "tau_S": P.tau,
        "s_S": sS,
        "character_S": list(ch_S),
        "h1_2S": h1_2S,
        "s_2S": s2S,
        "character_2S": list(ch_Z),
        "connected_2S": ch_Z.connected,
        "terracini": v.terracini,
        "minimal": v.minimal,
        "checks": checks,
        "ok": all(checks.values()),
    }
