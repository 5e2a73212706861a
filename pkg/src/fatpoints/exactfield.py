"""Exact scalar fields (F_p and Q) and exact dense matrix rank.

Elements are plain Python values: ``int`` in ``[0, p)`` for a prime field and
``fractions.Fraction`` for the rationals.  Every cohomology dimension in the
package reduces to :func:`matrix_rank`, so the kernels here are the hot path.

For the default modulus ``p = 2**61 - 1`` elimination runs on ``uint64`` numpy
arrays with a Mersenne reduction of 122-bit products split into 32-bit limbs.
Over the rationals rows are scaled to integers and reduced with fraction-free
(Bareiss) elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .errors import FatPointsError, NonPrimeModulus

MERSENNE61 = (1 << 61) - 1
DEFAULT_PRIME = MERSENNE61

_U61 = np.uint64(MERSENNE61)
_M32 = np.uint64((1 << 32) - 1)
_M29 = np.uint64((1 << 29) - 1)
_S3 = np.uint64(3)
_S29 = np.uint64(29)
_S32 = np.uint64(32)
_S61 = np.uint64(61)


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" | "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("prime", "rational"):
            raise FatPointsError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime" and self.p is None:
            raise FatPointsError("prime field needs a modulus")
        if self.kind == "rational" and self.p is not None:
            raise FatPointsError("rational field takes no modulus")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("prime", int(p))

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the CLI form ``prime:P``, ``prime`` or ``rational``."""
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls.rational()
        if text == "prime":
            return cls.prime()
        if text.startswith("prime:"):
            try:
                return cls.prime(int(text.split(":", 1)[1]))
            except ValueError:
                raise FatPointsError(f"bad modulus in {text!r}") from None
        raise FatPointsError(f"bad field string {text!r}")

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": str(self.p)}
        return {"kind": "rational"}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        if obj.get("kind") == "prime":
            return cls.prime(int(obj["p"]))
        if obj.get("kind") == "rational":
            return cls.rational()
        raise FatPointsError(f"bad field object {obj!r}")

    def __str__(self):
        return f"prime:{self.p}" if self.kind == "prime" else "rational"


class PrimeField:
    """Arithmetic in F_p; elements are ints reduced into ``[0, p)``."""

    def __init__(self, p: int):
        self.p = p
        self.spec = FieldSpec.prime(p)
        self.characteristic = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return self.div(value.numerator, value.denominator)
        if isinstance(value, str):
            return self.parse(value)
        return int(value) % self.p

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def parse(self, text: str) -> int:
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num), int(den))
        return int(text) % self.p

    def rank(self, rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
        return _prime_rank(rows, self.p, ncols)


class RationalField:
    """Exact arithmetic in Q with ``Fraction`` elements."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self):
        self.spec = FieldSpec.rational()

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng: random.Random):
        # small integers keep rational reruns affordable
        return Fraction(rng.randint(-50, 50))

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def rank(self, rows, ncols: int | None = None) -> int:
        return _rational_rank(rows)


Field = PrimeField | RationalField


def field_create(spec: FieldSpec | None = None) -> Field:
    """Build the arithmetic context for ``spec`` (default: F_p, p = 2^61 - 1)."""
    if spec is None:
        spec = FieldSpec.prime()
    if spec.kind == "rational":
        return RationalField()
    p = spec.p
    if p < 2 or not gmpy2.is_prime(p, 50):
        raise NonPrimeModulus(f"{p} is not prime")
    return PrimeField(p)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    ncols: int
    field: Field

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: Field, ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise FatPointsError("ragged matrix")
        return cls(rows, ncols, field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "ExactMatrix":
        cols = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return ExactMatrix(cols, self.nrows, self.field)

    def select_rows(self, indices: Iterable[int]) -> "ExactMatrix":
        return ExactMatrix(tuple(self.rows[i] for i in indices), self.ncols, self.field)


def matrix_rank(M: ExactMatrix) -> int:
    """Exact rank of ``M`` over its field; 0 for empty matrices."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return M.field.rank(M.rows, M.ncols)


# ---------------------------------------------------------------------------
# F_p kernels
# ---------------------------------------------------------------------------

def _mulmod61(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise ``a*b mod 2^61-1`` for uint64 inputs already in ``[0, p)``."""
    a_lo = a & _M32
    a_hi = a >> _S32
    b_lo = b & _M32
    b_hi = b >> _S32
    lo = a_lo * b_lo
    mid = a_hi * b_lo + a_lo * b_hi
    hi = a_hi * b_hi
    # 2^64 = 8 and 2^61 = 1 modulo p
    r = (lo & _U61) + (lo >> _S61) + (hi << _S3) + (mid >> _S29) + ((mid & _M29) << _S32)
    r = (r & _U61) + (r >> _S61)
    return np.where(r >= _U61, r - _U61, r)


def _rank_mersenne61(A: np.ndarray) -> int:
    A = A.copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        col = A[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, MERSENNE61)
        prow = _mulmod61(A[r, c:], np.uint64(inv))
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            f = A[below, c][:, None]
            prod = _mulmod61(f, prow[None, :])
            sub = A[below, c:] + (_U61 - prod)
            A[below, c:] = np.where(sub >= _U61, sub - _U61, sub)
        r += 1
    return r


def _rank_small_prime(A: np.ndarray, p: int) -> int:
    # p < 2^31 so products fit in int64
    A = A.copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            f = A[below, c][:, None]
            A[below, c:] = (A[below, c:] - f * A[r, c:][None, :]) % p
        r += 1
    return r


def _rank_generic_prime(rows, p: int) -> int:
    rows = [[int(x) % p for x in row] for row in rows]
    rows = [row for row in rows if any(row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i, row in enumerate(rows) if row[c]), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        inv = pow(prow[c], -1, p)
        prow = [(x * inv) % p for x in prow]
        rank += 1
        nxt = []
        for row in rows:
            f = row[c]
            if f:
                row = [(x - f * y) % p for x, y in zip(row, prow)]
                if not any(row):
                    continue
            nxt.append(row)
        rows = nxt
        if not rows:
            break
    return rank


def _prime_rank(rows, p: int, ncols: int | None = None) -> int:
    if len(rows) == 0:
        return 0
    if p == MERSENNE61:
        A = np.array([[int(x) for x in row] for row in rows], dtype=np.uint64)
        if A.ndim != 2 or A.shape[1] == 0:
            return 0
        return _rank_mersenne61(A)
    if p < (1 << 31):
        A = np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64)
        if A.ndim != 2 or A.shape[1] == 0:
            return 0
        return _rank_small_prime(A, p)
    return _rank_generic_prime(rows, p)


# ---------------------------------------------------------------------------
# Q kernel
# ---------------------------------------------------------------------------

def _integer_row(row) -> list:
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [gmpy2.mpz(Fraction(x).numerator * (den // Fraction(x).denominator)) for x in row]


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Every division performed is exact (Sylvester's identity), so entries stay
    integral and bounded by minors of the input.
    """
    rows = [list(map(gmpy2.mpz, r)) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    prev = gmpy2.mpz(1)
    rank = 0
    divexact = gmpy2.divexact
    for c in range(ncols):
        piv = next((i for i, r in enumerate(rows) if r[c]), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        pv = prow[c]
        rank += 1
        nxt = []
        for r in rows:
            f = r[c]
            if f:
                new = [divexact(pv * x - f * y, prev) for x, y in zip(r[c + 1:], prow[c + 1:])]
            else:
                new = [divexact(pv * x, prev) for x in r[c + 1:]]
            if any(new):
                nxt.append([gmpy2.mpz(0)] * (c + 1) + new)
        rows = nxt
        prev = pv
        if not rows:
            break
    return rank


def _rational_rank(rows) -> int:
    return bareiss_rank([_integer_row(r) for r in rows])


def nullspace(rows: Sequence[Sequence], ncols: int, F: Field) -> list[list]:
    """Basis of ``{x : M x = 0}`` from the reduced row echelon form of ``M``.

    Plain Gauss-Jordan over ``F``; meant for the small systems that cut out
    low-degree curves through a point set.
    """
    M = [[F(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not F.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and not F.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fc])
        basis.append(v)
    return basis
