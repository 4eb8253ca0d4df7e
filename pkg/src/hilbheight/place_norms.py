"""Norms of wedge vectors ``b_1 ^ ... ^ b_r`` at the places of Q.

The wedge of the rows of an ``r x M`` matrix ``B`` has the ``r x r`` minors
of ``B`` as coordinates.  At a prime ``p`` its norm is the p-adic size of
the gcd of those minors, so all finite places together reduce to one
rational number, the *content*.  At the archimedean place the sup norm is
the largest minor in absolute value; the weighted L2 norm is a Gram
determinant (Cauchy-Binet) and brackets the sup norm from both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Sequence

from .linalg import RationalMatrix, clear_denominators, det_exact, rref, snf_invariant_factors

__all__ = [
    "DEFAULT_MINOR_BUDGET",
    "NotABasis",
    "MinorBudgetExceeded",
    "SingularGram",
    "FinitePlaceSum",
    "GramLogDet",
    "ArchBracket",
    "finite_places_log",
    "gram_logdet",
    "supnorm_bruteforce",
    "supnorm_bracket",
    "supnorm_disjoint_support",
    "log_fraction",
]

DEFAULT_MINOR_BUDGET = 10**6


class NotABasis(ValueError):
    pass


class MinorBudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(
            f"{count} maximal minors exceed the enumeration budget {budget}; use bracket mode"
        )
        self.count = count
        self.budget = budget


class SingularGram(ArithmeticError):
    pass


def log_fraction(x: Fraction | int) -> float:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    return math.log(x.numerator) - math.log(x.denominator)


def _require_basis(B: RationalMatrix):
    if rref(B).rank != B.nrows:
        raise NotABasis(f"rows are not a basis: rank {rref(B).rank} < {B.nrows} rows")


def _integer_rows(B: RationalMatrix) -> tuple[list[list[int]], Fraction]:
    """Integer rows and the scalar ``s`` with ``wedge(B) = s * wedge(rows)``."""
    ints, mults = clear_denominators(B.rows)
    denom = 1
    for c in mults:
        denom *= c
    return ints, Fraction(1, denom)


@dataclass(frozen=True)
class FinitePlaceSum:
    """``sum over primes p of log |wedge|_p = -log(content)``."""

    content: Fraction
    log_value: float


def finite_places_log(B: RationalMatrix, check: bool = True) -> FinitePlaceSum:
    if check:
        _require_basis(B)
    if B.nrows == 0:
        return FinitePlaceSum(Fraction(1), 0.0)
    ints, scale = _integer_rows(B)
    # product of the invariant factors is the gcd of the maximal minors
    content = scale * snf_invariant_factors(ints).product()
    return FinitePlaceSum(content, log_fraction(1 / content))


@dataclass(frozen=True)
class GramLogDet:
    """``log det(B diag(w) B^T)`` with the exact determinant for the given weights."""

    log: float
    det: Fraction


def gram_logdet(B: RationalMatrix, weights: Sequence, check: bool = True) -> GramLogDet:
    """Weighted Gram determinant, i.e. twice the log of the weighted L2 wedge norm.

    Rational weights give an exact determinant.  Float weights are taken at
    their exact binary value, so the determinant is still exact for those
    weights and any uncertainty is carried by the weights alone.
    """
    if len(weights) != B.ncols:
        raise ValueError(f"{len(weights)} weights for {B.ncols} columns")
    w = [Fraction(x) for x in weights]
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    if check:
        _require_basis(B)
    r = B.nrows
    if r == 0:
        return GramLogDet(0.0, Fraction(1))
    ints, scale = _integer_rows(B)
    L = 1
    for x in w:
        d = x.denominator
        if d != 1:
            L = L * d // gcd(L, d)
    wi = [int(x * L) for x in w]
    sparse = [[(j, v) for j, v in enumerate(row) if v] for row in ints]
    G = [[0] * r for _ in range(r)]
    for i in range(r):
        ri = ints[i]
        for j in range(i, r):
            s = 0
            for t, v in sparse[j]:
                a = ri[t]
                if a:
                    s += a * v * wi[t]
            G[i][j] = G[j][i] = s
    det = Fraction(det_exact(G), L**r) * scale * scale
    if det <= 0:
        raise SingularGram(f"Gram determinant {float(det):.3g} is not positive")
    return GramLogDet(log_fraction(det), det)


def _max_abs_minor(A: list[list[int]]) -> int:
    """Largest |r x r minor| by depth-first Bareiss elimination over column choices.

    Columns are picked in increasing order; each level eliminates one pivot
    on the suffix columns only, so at the last level the surviving row holds
    the minors themselves.  A chosen column with no usable pivot makes every
    completion singular and the branch is cut.
    """
    r = len(A)
    if r == 0:
        return 1
    best = 0

    def rec(rows: list[list[int]], prev: int):
        nonlocal best
        need = len(rows)
        if need == 1:
            for v in rows[0]:
                if abs(v) > best:
                    best = abs(v)
            return
        width = len(rows[0])
        for c in range(width - need + 1):
            pr = -1
            for i, row in enumerate(rows):
                if row[c]:
                    pr = i
                    break
            if pr < 0:
                continue
            prow = rows[pr]
            p = prow[c]
            nxt = []
            for i, row in enumerate(rows):
                if i == pr:
                    continue
                a = row[c]
                if a:
                    nxt.append([(p * row[t] - a * prow[t]) // prev for t in range(c + 1, width)])
                elif p == prev:
                    nxt.append(row[c + 1:])
                else:
                    nxt.append([(p * row[t]) // prev for t in range(c + 1, width)])
            rec(nxt, p)

    rec([list(row) for row in A], 1)
    return best


def supnorm_bruteforce(B: RationalMatrix, budget: int = DEFAULT_MINOR_BUDGET) -> Fraction:
    """Exact ``max |minor|`` over all ``r x r`` column selections."""
    r, M = B.shape
    count = comb(M, r)
    if count > budget:
        raise MinorBudgetExceeded(count, budget)
    if r == 0:
        return Fraction(1)
    ints, scale = _integer_rows(B)
    return scale * _max_abs_minor(ints)


def supnorm_disjoint_support(B: RationalMatrix) -> Fraction | None:
    """Exact sup norm when no column has two nonzero entries, else ``None``.

    Then the only nonsingular selections take one support column per row, and
    each such minor is a signed product of one entry from every row.
    """
    seen: set[int] = set()
    total = Fraction(1)
    for row in B.rows:
        best = Fraction(0)
        for j, v in enumerate(row):
            if v:
                if j in seen:
                    return None
                seen.add(j)
                if abs(v) > best:
                    best = abs(v)
        if not best:
            return None
        total *= best
    return total


@dataclass(frozen=True)
class ArchBracket:
    """Bounds on the log of the archimedean sup norm of a wedge vector."""

    lower: float
    upper: float
    exact: bool
    slack: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty bracket")

    @classmethod
    def point(cls, value: float, slack: float = 0.0) -> "ArchBracket":
        return cls(value, value, True, slack)

    def contains(self, x: float, slop: float = 0.0) -> bool:
        return self.lower - slop <= x <= self.upper + slop


def supnorm_bracket(B: RationalMatrix, check: bool = True) -> ArchBracket:
    """``sup <= L2 <= sqrt(binom(M, r)) * sup`` turned into a log interval."""
    r, M = B.shape
    L = 0.5 * gram_logdet(B, [1] * M, check=check).log
    slack = 0.5 * math.log(comb(M, r))
    if slack == 0.0:
        return ArchBracket(L, L, True, 0.0)
    return ArchBracket(L - slack, L, False, slack)
