"""Exact linear algebra over the integers and the rationals.

Everything here works on Python ``int`` and :class:`fractions.Fraction`;
there is no floating point anywhere in this module.  Matrices are small
immutable containers; the algorithms convert them to sparse row dictionaries
internally, which keeps Macaulay-type matrices (a handful of nonzeros per
row) cheap to reduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "RationalMatrix",
    "IntegerMatrix",
    "InvariantFactors",
    "RREF",
    "rref",
    "nullspace",
    "det_exact",
    "det_rational",
    "snf_invariant_factors",
    "clear_denominators",
]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix with :class:`~fractions.Fraction` entries."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise ValueError("ncols must be non-negative")
        for i, row in enumerate(self.rows):
            if len(row) != self.ncols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.ncols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "RationalMatrix":
        cache: dict = {}

        def conv(x):
            # share equal Fraction objects; large sparse matrices are mostly zeros
            try:
                return cache[x]
            except KeyError:
                v = cache[x] = Fraction(x)
                return v
            except TypeError:
                return Fraction(x)

        data = tuple(tuple(conv(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict[int, Fraction]], ncols: int) -> "RationalMatrix":
        out = []
        for r in rows:
            dense = [ZERO] * ncols
            for j, v in r.items():
                dense[j] = v
            out.append(tuple(dense))
        return cls(tuple(out), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{j: v for j, v in enumerate(row) if v} for row in self.rows]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return RationalMatrix.from_rows(
            [[sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols] for row in self.rows],
            other.ncols,
        )


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable dense integer matrix."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != self.ncols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.ncols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


class InvariantFactors(tuple):
    """Smith invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix."""

    def __new__(cls, factors: Iterable[int] = ()):
        return super().__new__(cls, (int(d) for d in factors))

    @property
    def rank(self) -> int:
        return len(self)

    def product(self) -> int:
        p = 1
        for d in self:
            p *= d
        return p


class RREF(NamedTuple):
    rank: int
    matrix: RationalMatrix
    pivots: tuple[int, ...]


def _as_sparse(M: RationalMatrix | Sequence[dict[int, Fraction]]) -> list[dict[int, Fraction]]:
    if isinstance(M, RationalMatrix):
        return M.sparse_rows()
    return [dict(r) for r in M]


def _sparse_rref(rows: list[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Gauss-Jordan on sparse rows; returns ``pivot column -> reduced row``."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for r in rows:
        r = {j: v for j, v in r.items() if v}
        while r:
            lead = min(r)
            p = pivot_rows.get(lead)
            if p is None:
                c = r[lead]
                if c != 1:
                    r = {j: v / c for j, v in r.items()}
                pivot_rows[lead] = r
                break
            c = r[lead]
            for j, v in p.items():
                nv = r.get(j, ZERO) - c * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
    # back substitution, largest pivot first; a fully reduced row only carries
    # free columns, so subtracting it never re-introduces a pivot column
    for col in sorted(pivot_rows, reverse=True):
        r = pivot_rows[col]
        hits = [j for j in r if j != col and j in pivot_rows]
        for j in hits:
            c = r.pop(j)
            for t, v in pivot_rows[j].items():
                if t == j:
                    continue
                nv = r.get(t, ZERO) - c * v
                if nv:
                    r[t] = nv
                else:
                    r.pop(t, None)
    return pivot_rows


def rref(M: RationalMatrix) -> RREF:
    """Reduced row echelon form with pivots normalized to 1.

    Zero rows are dropped, so ``R`` has exactly ``rank`` rows.

    >>> rref(RationalMatrix.from_rows([[1, 1, 0], [0, 1, 1]])).matrix.tolist()
    [[Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1)], [Fraction(0, 1), Fraction(1, 1), Fraction(1, 1)]]
    """
    piv = _sparse_rref(M.sparse_rows())
    order = tuple(sorted(piv))
    R = RationalMatrix.from_sparse([piv[c] for c in order], M.ncols)
    return RREF(len(order), R, order)


def nullspace(M: RationalMatrix) -> RationalMatrix:
    """Basis of the right kernel ``{x : M x = 0}``, returned in RREF."""
    piv = _sparse_rref(M.sparse_rows())
    n = M.ncols
    free = [j for j in range(n) if j not in piv]
    # column view of the reduced rows restricted to free columns
    by_free: dict[int, list[tuple[int, Fraction]]] = {f: [] for f in free}
    for pc, row in piv.items():
        for j, v in row.items():
            if j != pc:
                by_free[j].append((pc, v))
    vecs = []
    for f in free:
        v = {f: ONE}
        for pc, coeff in by_free[f]:
            v[pc] = -coeff
        vecs.append(v)
    kp = _sparse_rref(vecs)
    return RationalMatrix.from_sparse([kp[c] for c in sorted(kp)], n)


def det_exact(M: IntegerMatrix | Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    rows = [list(r) for r in (M.rows if isinstance(M, IntegerMatrix) else M)]
    n = len(rows)
    ncols = M.ncols if isinstance(M, IntegerMatrix) else (len(rows[0]) if rows else 0)
    if any(len(r) != n for r in rows) or ncols != n:
        raise ValueError(f"determinant needs a square matrix, got {n}x{ncols}")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1]


def clear_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale every row by the lcm of its denominators.

    Returns the integer rows and the per-row multipliers ``c_i``.
    """
    out, mults = [], []
    for row in rows:
        L = 1
        for x in row:
            d = x.denominator
            if d != 1:
                L = L * d // gcd(L, d)
        out.append([int(x * L) if x else 0 for x in row])
        mults.append(L)
    return out, mults


def det_rational(M: RationalMatrix | Sequence[Sequence[Fraction]]) -> Fraction:
    rows = M.rows if isinstance(M, RationalMatrix) else M
    n = len(rows)
    if n and any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    ints, mults = clear_denominators(rows)
    denom = 1
    for c in mults:
        denom *= c
    return Fraction(det_exact(ints), denom)


def snf_invariant_factors(M: IntegerMatrix | Sequence[Sequence[int]]) -> InvariantFactors:
    """Nonzero Smith invariant factors via elementary row and column moves.

    Pivots are chosen by minimal absolute value in the active block.  The
    product of the factors is the gcd of all maximal nonvanishing minors.
    """
    A = [list(r) for r in (M.rows if isinstance(M, IntegerMatrix) else M)]
    A = [r for r in A if any(r)]
    if not A:
        return InvariantFactors()
    m, n = len(A), len(A[0])
    factors = []
    t = 0
    while t < min(m, n):
        # locate the smallest nonzero entry of the active block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            # clear column t
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = a // p
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if A[i][t]:
                        done = False
            # clear row t
            rt = A[t]
            for j in range(t + 1, n):
                a = rt[j]
                if a:
                    q = a // p
                    if q:
                        for i in range(t, m):
                            if A[i][t]:
                                A[i][j] -= q * A[i][t]
                    if rt[j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # fold the offending row in; the next pass sees a smaller remainder
                for j in range(t, n):
                    A[t][j] += A[bad][j]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        factors.append(abs(A[t][t]))
        t += 1
    return InvariantFactors(factors)
