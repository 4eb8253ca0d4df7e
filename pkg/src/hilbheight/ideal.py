"""Graded pieces of homogeneous ideals and the geometric Hilbert function.

Monomials of degree ``D`` in ``N+1`` variables are always listed in
descending lexicographic order of their exponent vectors; every module that
indexes coefficient vectors by monomials relies on this order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .linalg import RationalMatrix, _sparse_rref, nullspace
from .polynomial import Polynomial, parse_polynomial

__all__ = [
    "VarietyInput",
    "MonomialIndex",
    "GradedBasis",
    "AnnihilatorBasis",
    "InsufficientSamples",
    "HilbertStabilizationWarning",
    "enumerate_monomials",
    "graded_piece",
    "hilbert_geom",
    "annihilator",
    "infer_dimension",
]


class InsufficientSamples(ValueError):
    pass


class HilbertStabilizationWarning(UserWarning):
    """H_geom is not polynomial over the whole sampled range."""


@dataclass(frozen=True)
class VarietyInput:
    """Projective subvariety of ``P^N`` given by homogeneous generators.

    The graded pieces used downstream are those of the ideal generated by
    ``generators``; no saturation is performed.
    """

    num_vars: int
    generators: tuple[Polynomial, ...] = ()
    dimension: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be at least 1 (N >= 0)")
        for g in self.generators:
            if g.nvars != self.num_vars:
                raise ValueError(f"generator {g} has {g.nvars} variables, expected {self.num_vars}")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")

    @classmethod
    def from_strings(cls, num_vars: int, generators: Iterable[str], **kw) -> "VarietyInput":
        return cls(num_vars, tuple(parse_polynomial(g, num_vars) for g in generators), **kw)

    @property
    def N(self) -> int:
        return self.num_vars - 1


@dataclass(frozen=True)
class MonomialIndex:
    D: int
    exponents: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.exponents)

    def position(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.exponents)}


@dataclass(frozen=True)
class GradedBasis:
    """RREF basis ``p_1..p_l`` of the degree-``D`` piece ``I_D``."""

    index: MonomialIndex
    matrix: RationalMatrix

    @property
    def l(self) -> int:
        return self.matrix.nrows


@dataclass(frozen=True)
class AnnihilatorBasis:
    """RREF basis ``q_1..q_m`` of ``Ann(I_D)`` in the dual monomial basis."""

    index: MonomialIndex
    matrix: RationalMatrix

    @property
    def m(self) -> int:
        return self.matrix.nrows


@lru_cache(maxsize=256)
def _monomials(nvars: int, D: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((D,),)
    out = []
    for a0 in range(D, -1, -1):
        for rest in _monomials(nvars - 1, D - a0):
            out.append((a0,) + rest)
    return tuple(out)


def enumerate_monomials(N: int, D: int) -> MonomialIndex:
    """All exponent vectors of total degree ``D`` in ``N+1`` variables.

    >>> enumerate_monomials(1, 2).exponents
    ((2, 0), (1, 1), (0, 2))
    """
    if N < 0 or D < 0:
        raise ValueError("N and D must be non-negative")
    return MonomialIndex(D, _monomials(N + 1, D))


@lru_cache(maxsize=64)
def graded_piece(V: VarietyInput, D: int) -> GradedBasis:
    """Span of ``x^u * g`` over generators ``g`` and ``deg u = D - deg g``, in RREF."""
    if D < 0:
        raise ValueError("D must be non-negative")
    index = enumerate_monomials(V.N, D)
    pos = index.position()
    rows = []
    for g in V.generators:
        d = g.degree
        if d > D:
            continue
        for u in _monomials(V.num_vars, D - d):
            rows.append({pos[tuple(a + b for a, b in zip(u, e))]: c for e, c in g.terms})
    piv = _sparse_rref(rows)
    R = RationalMatrix.from_sparse([piv[c] for c in sorted(piv)], len(index))
    return GradedBasis(index, R)


def hilbert_geom(V: VarietyInput, D: int) -> int:
    """``binom(D+N, N) - dim I_D``."""
    return comb(D + V.N, V.N) - graded_piece(V, D).l


def annihilator(B: GradedBasis) -> AnnihilatorBasis:
    """Functionals on degree-``D`` forms vanishing on ``I_D``.

    A functional ``q = sum_b q_b (x^b)^dual`` pairs with ``p`` as
    ``sum_b q_b p_b``, so ``Ann(I_D)`` is the right kernel of the ``p`` matrix.
    """
    return AnnihilatorBasis(B.index, nullspace(B.matrix))


def _divided_differences(xs: Sequence[int], ys: Sequence[Fraction], order: int) -> list[Fraction]:
    vals = [Fraction(y) for y in ys]
    for j in range(1, order + 1):
        vals = [(vals[i + 1] - vals[i]) / (xs[i + j] - xs[i]) for i in range(len(vals) - 1)]
    return vals


def infer_dimension(samples: Sequence[tuple[int, int]], warn: bool = True) -> int:
    """Degree of the Hilbert polynomial read off sampled ``(D, H_geom)`` pairs.

    Uses divided differences, so the degrees need not be consecutive.  The
    smallest order whose differences are a nonzero constant on the tail is
    the dimension.  Raises :class:`InsufficientSamples` when fewer than three
    samples are given or nothing stabilizes.
    """
    pts = sorted(samples)
    if len(pts) < 3:
        raise InsufficientSamples("insufficient samples: need at least 3 (D, H_geom) pairs")
    xs = [p[0] for p in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate degrees in samples")
    ys = [p[1] for p in pts]
    for j in range(0, len(pts) - 1):
        tail = max(j + 2, (len(pts) + 1) // 2)
        diffs = _divided_differences(xs[-tail:], ys[-tail:], j)
        if len(set(diffs)) == 1 and diffs[0] != 0:
            if warn:
                full = _divided_differences(xs, ys, j)
                if len(set(full)) != 1:
                    warnings.warn(
                        f"H_geom not polynomial over D={xs[0]}..{xs[-1]}; "
                        f"only the tail from D={xs[-tail]} fits degree {j}",
                        HilbertStabilizationWarning,
                        stacklevel=2,
                    )
            return j
    raise InsufficientSamples("insufficient samples: no finite difference stabilized")
