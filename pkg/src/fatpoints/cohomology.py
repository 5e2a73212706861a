"""Cohomology of ideal sheaves of zero-dimensional schemes.

``h0(I_Z(d))`` and ``h1(I_Z(d))`` come from the rank of the conditions matrix:
``h0 = binom(n+d, n) - rank`` and ``h1 = deg Z - rank``.  On top of that this
module builds the Hilbert profile ``H, Δ, h1`` of a plane scheme and its
numerical character ``n_0 >= ... >= n_{s-1}``, read off ``Δ`` as a conjugate
partition: for ``t >= s-1`` the value ``Δ(t)`` counts the entries with
``n_i >= t+1``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

from .errors import EmptyScheme, FatPointsError, GapAbsent, PreconditionViolated
from .exactfield import ExactMatrix, matrix_rank
from .geometry import (
    CurveForm,
    ZeroDimScheme,
    component_rows,
    num_monomials,
    residual_scheme,
    restrict_to_curve,
)


def conditions_rows(Z: ZeroDimScheme, d: int) -> list[list]:
    F = Z.field
    rows = []
    for c in Z.components:
        rows.extend(component_rows(c, d, F))
    return rows


def conditions_matrix(Z: ZeroDimScheme, d: int) -> ExactMatrix:
    """``deg Z`` rows by ``binom(n+d, n)`` columns; its rank is ``H_Z(d)``."""
    if d < 0:
        raise FatPointsError("conditions matrix needs d >= 0")
    return ExactMatrix(tuple(tuple(r) for r in conditions_rows(Z, d)), num_monomials(Z.n, d), Z.field)


@lru_cache(maxsize=4096)
def _rank_cached(Z: ZeroDimScheme, field, d: int) -> int:
    return matrix_rank(conditions_matrix(Z, d))


def hilbert_value(Z: ZeroDimScheme, d: int) -> int:
    """``H_Z(d)``, the number of conditions ``Z`` imposes on degree-``d`` forms."""
    if d < 0 or not Z.components:
        return 0
    return _rank_cached(Z, Z.field, d)


def cohomology(Z: ZeroDimScheme, d: int) -> tuple[int, int]:
    """``(h0(I_Z(d)), h1(I_Z(d)))``."""
    r = hilbert_value(Z, d)
    return num_monomials(Z.n, d) - r, Z.degree - r


def h0(Z: ZeroDimScheme, d: int) -> int:
    return cohomology(Z, d)[0]


def h1(Z: ZeroDimScheme, d: int) -> int:
    return cohomology(Z, d)[1]


def s_min(Z: ZeroDimScheme) -> int:
    """Minimal degree of a hypersurface containing ``Z``."""
    if not Z.components:
        raise EmptyScheme("s(Z) is undefined for the empty scheme")
    t = 1
    while h0(Z, t) == 0:
        t += 1
    return t


def tau_max(Z: ZeroDimScheme) -> int:
    """Maximal ``t`` with ``h1(I_Z(t)) > 0``; -1 for a single simple point."""
    if not Z.components:
        warnings.warn("tau of the empty scheme taken as -1 by convention", stacklevel=2)
        return -1
    # h1 >= deg Z - binom(t+n, n) > 0 below this degree, and h1 is non-increasing in t
    t = 0
    while num_monomials(Z.n, t) < Z.degree:
        t += 1
    while h1(Z, t) > 0:
        t += 1
    return t - 1


@dataclass(frozen=True)
class HilbertProfile:
    degree: int
    s: int
    tau: int
    H: tuple
    delta: tuple
    h1: tuple

    def rows(self):
        for t, (H, D, h) in enumerate(zip(self.H, self.delta, self.h1)):
            yield t, H, D, h


def hilbert_profile(Z: ZeroDimScheme) -> HilbertProfile:
    """``H(t)``, ``Δ(t)`` and ``h1(t)`` for ``t = 0 .. τ+1``."""
    if not Z.components:
        raise EmptyScheme("Hilbert profile of the empty scheme")
    s = s_min(Z)
    tau = tau_max(Z)
    H = [hilbert_value(Z, t) for t in range(tau + 2)]
    delta = [H[0]] + [H[t] - H[t - 1] for t in range(1, len(H))]
    h1s = [Z.degree - x for x in H]
    return HilbertProfile(Z.degree, s, tau, tuple(H), tuple(delta), tuple(h1s))


@dataclass(frozen=True)
class NumericalCharacter:
    entries: tuple
    connected: bool = dc_field(default=None)

    def __post_init__(self):
        if self.connected is None:
            object.__setattr__(self, "connected", is_connected(self.entries))

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return sum(n - i for i, n in enumerate(self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def validate(self) -> None:
        e = self.entries
        s = len(e)
        if s == 0:
            raise FatPointsError("empty numerical character")
        if any(a < b for a, b in zip(e, e[1:])):
            raise FatPointsError(f"character {e} is not non-increasing")
        if e[-1] < s:
            raise FatPointsError(f"character {e} has n_(s-1) < s")


def character_from_profile(P: HilbertProfile) -> NumericalCharacter:
    s, D = P.s, P.delta
    entries = []
    for i in range(s):
        ts = [t for t in range(s - 1, len(D)) if D[t] >= i + 1]
        entries.append(max(ts) + 1)
    return NumericalCharacter(tuple(entries))


def numerical_character(Z: ZeroDimScheme) -> NumericalCharacter:
    P = hilbert_profile(Z)
    ch = character_from_profile(P)
    ch.validate()
    if sum(ch.entries) != P.degree + comb(P.s, 2) or ch.entries[0] != P.tau + 2:
        raise FatPointsError(f"character {ch.entries} inconsistent with the Hilbert profile")
    return ch


def character_to_h1(char, t: int) -> int:
    """``h1(I_Z(t))`` predicted by a numerical character."""
    entries = char.entries if isinstance(char, NumericalCharacter) else tuple(char)
    return sum(max(n - t - 1, 0) - max(i - t - 1, 0) for i, n in enumerate(entries))


def is_connected(char) -> bool:
    entries = char.entries if isinstance(char, NumericalCharacter) else tuple(char)
    return all(a <= b + 1 for a, b in zip(entries, entries[1:]))


def character_split_check(Z: ZeroDimScheme, C: CurveForm, t: int) -> dict:
    """Check that a degree-``t`` curve splits ``Z`` along a gap of its character.

    With ``n_{t-1} > n_t + 1`` the prediction is that ``Z ∩ C`` has character
    ``n_0..n_{t-1}`` and ``Res_C(Z)`` has ``n_{t+i} - t``.
    """
    ch = numerical_character(Z)
    e = ch.entries
    if not 1 <= t < len(e) or e[t - 1] <= e[t] + 1:
        raise GapAbsent(f"no gap n_(t-1) > n_t + 1 at t={t} in {e}")
    if C.degree != t:
        raise PreconditionViolated(f"curve has degree {C.degree}, expected {t}")
    inter = restrict_to_curve(Z, C)
    res = residual_scheme(Z, C)
    pred_inter = e[:t]
    pred_res = tuple(x - t for x in e[t:])
    got_inter = numerical_character(inter).entries if inter.components else ()
    got_res = numerical_character(res).entries if res.components else ()
    checks = {
        "restricted_character": got_inter == pred_inter,
        "residual_character": got_res == pred_res,
    }
    return {
        "t": t,
        "character": list(e),
        "predicted_restricted": list(pred_inter),
        "restricted": list(got_inter),
        "predicted_residual": list(pred_res),
        "residual": list(got_res),
        "checks": checks,
        "ok": all(checks.values()),
    }


def bound_checks(Z: ZeroDimScheme) -> dict:
    """``binom(s+1, 2) <= deg Z <= s(τ+2) - binom(s, 2)``."""
    s, z, tau = s_min(Z), Z.degree, tau_max(Z)
    lower = comb(s + 1, 2)
    upper = s * (tau + 2) - comb(s, 2)
    checks = {"lower": lower <= z, "upper": z <= upper}
    return {
        "s": s,
        "z": z,
        "tau": tau,
        "lower": lower,
        "upper": upper,
        "checks": checks,
        "ok": all(checks.values()),
    }
