"""Normalized and metric arithmetic Hilbert functions over Q.

Over Q every place has local degree one, so a Hilbert function value is a
plain sum over ``{inf} U {primes}``.  All finite places together contribute
``-log(content)`` of the wedge vector; the archimedean place contributes the
log of a sup norm (``H_norm``) or of a weighted L2 norm (``H_arith``).

Internally every exact quantity stays a :class:`~fractions.Fraction`:

* ``H_norm = log(sup / content)``
* ``H_arith(k) = 1/2 log(E_k)`` with ``E_k = gram_k / content^2`` on the
  annihilator side and ``E_k = gram_k * gamma_k / content^2`` on the ideal
  side.

Equalities and inequalities between them are checked on these rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .ideal import AnnihilatorBasis, GradedBasis, VarietyInput, annihilator, graded_piece
from .metrics import INF, MetricParameter, gamma_log, metric_label, monomial_norm_table, parse_metric
from .place_norms import (
    DEFAULT_MINOR_BUDGET,
    ArchBracket,
    MinorBudgetExceeded,
    finite_places_log,
    gram_logdet,
    log_fraction,
    supnorm_bracket,
    supnorm_bruteforce,
    supnorm_disjoint_support,
)

__all__ = [
    "MODES",
    "ArithValue",
    "HilbertSample",
    "Check",
    "ConsistencyReport",
    "bases",
    "h_norm",
    "h_arith",
    "hilbert_sample",
    "consistency_report",
]

MODES = ("auto", "exact", "bracket")
DEFAULT_KS: tuple[MetricParameter, ...] = (1, INF)


@lru_cache(maxsize=64)
def bases(V: VarietyInput, D: int) -> tuple[GradedBasis, AnnihilatorBasis]:
    B = graded_piece(V, D)
    return B, annihilator(B)


@dataclass(frozen=True)
class ArithValue:
    """One value of ``H_arith(X; D, k)``.

    ``exact`` is ``exp(2 * value)`` as a rational when ``k`` is 1 or inf.
    ``error`` bounds the effect of quadrature error in the monomial norms.
    """

    k: MetricParameter
    formulation: str
    value: float
    error: float
    exact: Fraction | None


@dataclass
class HilbertSample:
    D: int
    h_geom: int
    l: int
    m: int
    finite_log: float
    content: Fraction
    arch: ArchBracket
    hnorm_lo: float
    hnorm_hi: float
    method: str
    sup: Fraction | None = None
    gram_unit: Fraction | None = None
    harith: dict[str, float] = field(default_factory=dict)
    harith_err: dict[str, float] = field(default_factory=dict)
    harith_exact: dict[str, Fraction | None] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.sup is not None

    @property
    def hnorm_ratio(self) -> Fraction | None:
        """``exp(H_norm)`` as a rational when the sup norm is known exactly."""
        if self.sup is None:
            return None
        return self.sup / self.content

    @property
    def ambient(self) -> int:
        return self.l + self.m

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "H_geom": self.h_geom,
            "l": self.l,
            "m": self.m,
            "finite_log": self.finite_log,
            "arch": {
                "lower": self.arch.lower,
                "upper": self.arch.upper,
                "exact": self.arch.exact,
                "slack": self.arch.slack,
            },
            "hnorm_lo": self.hnorm_lo,
            "hnorm_hi": self.hnorm_hi,
            "hnorm_exact": self.exact,
            "method": self.method,
            "harith": dict(self.harith),
            "harith_err": dict(self.harith_err),
        }


def _empty_bracket() -> ArchBracket:
    return ArchBracket.point(0.0)


def h_norm(
    V: VarietyInput,
    D: int,
    mode: str = "auto",
    budget: int = DEFAULT_MINOR_BUDGET,
) -> HilbertSample:
    """``H_norm(X; D)`` through the annihilator of ``I_D``.

    ``exact`` uses the disjoint-support certificate or full minor enumeration
    and refuses with :class:`MinorBudgetExceeded` past ``budget``;
    ``bracket`` always reports the Gram interval; ``auto`` is exact when
    either exact route is available and brackets otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if D < 1:
        raise ValueError("D must be at least 1")
    B, Q = bases(V, D)
    l, m = B.l, Q.m
    q = Q.matrix
    fin = finite_places_log(q, check=False)
    gram = gram_logdet(q, [1] * q.ncols, check=False)
    slack = 0.5 * math.log(comb(l + m, m))
    L = 0.5 * gram.log

    sup = None
    method = "bracket"
    if mode != "bracket":
        sup = supnorm_disjoint_support(q) if m else Fraction(1)
        if sup is not None:
            method = "certificate"
        else:
            try:
                sup = supnorm_bruteforce(q, budget)
                method = "bruteforce"
            except MinorBudgetExceeded:
                if mode == "exact":
                    raise
    if sup is not None:
        a = log_fraction(sup)
        arch = ArchBracket(a, a, True, slack)
        lo = hi = log_fraction(sup / fin.content)
    else:
        arch = supnorm_bracket(q, check=False)
        lo = fin.log_value + arch.lower
        hi = fin.log_value + arch.upper
    return HilbertSample(
        D=D,
        h_geom=m,
        l=l,
        m=m,
        finite_log=fin.log_value,
        content=fin.content,
        arch=arch,
        hnorm_lo=lo,
        hnorm_hi=hi,
        method=method,
        sup=sup,
        gram_unit=gram.det,
    )


def h_arith(
    V: VarietyInput,
    D: int,
    k: MetricParameter,
    formulation: str = "dual",
    tol: float = 1e-8,
) -> ArithValue:
    """``H_arith(X; D, k)`` from the ideal basis (``primal``) or the annihilator (``dual``)."""
    if formulation not in ("primal", "dual"):
        raise ValueError("formulation must be 'primal' or 'dual'")
    if D < 1:
        raise ValueError("D must be at least 1")
    k = parse_metric(k)
    B, Q = bases(V, D)
    table = monomial_norm_table(V.N, D, k, tol)
    exact = table.exact
    if formulation == "primal":
        P = B.matrix
        weights = table.values
        fin = finite_places_log(P, check=False)
        g = gram_logdet(P, weights, check=False)
        gam = gamma_log(V.N, D, k, tol)
        value = fin.log_value + 0.5 * g.log + 0.5 * gam.log
        rows = P.nrows
        error = 0.5 * (rows * _weight_spread(table) + gam.error)
        E = g.det * gam.exact / fin.content**2 if exact else None
    else:
        q = Q.matrix
        if exact:
            weights = [1 / v for v in table.values]
        else:
            weights = [1.0 / v for v in table.values]
        fin = finite_places_log(q, check=False)
        g = gram_logdet(q, weights, check=False)
        value = fin.log_value + 0.5 * g.log
        error = 0.5 * q.nrows * _weight_spread(table)
        E = g.det / fin.content**2 if exact else None
    if E is not None:
        value = 0.5 * log_fraction(E)
    return ArithValue(k, formulation, value, error, E)


def _weight_spread(table) -> float:
    """Bound on ``|log(true weight / computed weight)|`` over the table."""
    if table.exact:
        return 0.0
    worst = max((e / v for v, e in zip(table.values, table.errors)), default=0.0)
    if worst >= 1.0:
        return math.inf
    return -math.log1p(-worst)


def hilbert_sample(
    V: VarietyInput,
    D: int,
    ks: Iterable[MetricParameter] = DEFAULT_KS,
    mode: str = "auto",
    budget: int = DEFAULT_MINOR_BUDGET,
    tol: float = 1e-8,
) -> HilbertSample:
    s = h_norm(V, D, mode, budget)
    for k in ks:
        a = h_arith(V, D, k, "dual", tol)
        lab = metric_label(a.k)
        s.harith[lab] = a.value
        s.harith_err[lab] = a.error
        s.harith_exact[lab] = a.exact
    return s


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class ConsistencyReport:
    variety: str
    D: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "D": self.D,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _float_slop(*xs: float) -> float:
    return 1e-12 * max([1.0] + [abs(x) for x in xs])


def consistency_report(
    V: VarietyInput,
    D: int,
    ks: Sequence[MetricParameter] = DEFAULT_KS,
    mode: str = "auto",
    budget: int = DEFAULT_MINOR_BUDGET,
    tol: float = 1e-8,
) -> ConsistencyReport:
    """Primal/dual agreement of ``H_arith`` and ``H_norm <= H_arith`` at one degree."""
    checks: list[Check] = []
    s = h_norm(V, D, mode, budget)
    M = s.ambient
    for k in ks:
        k = parse_metric(k)
        lab = metric_label(k)
        pr = h_arith(V, D, k, "primal", tol)
        du = h_arith(V, D, k, "dual", tol)
        if pr.exact is not None:
            ok = pr.exact == du.exact
            detail = f"exp(2H) primal={float(pr.exact):.12g} dual={float(du.exact):.12g} (exact rationals)"
        else:
            ok = abs(pr.value - du.value) <= pr.error + du.error + _float_slop(pr.value)
            detail = f"primal={pr.value:.12g} dual={du.value:.12g} err={pr.error + du.error:.3g}"
        checks.append(Check(f"primal=dual[k={lab}]", ok, detail))

        # H_norm <= H_arith(k)
        if du.exact is not None:
            if s.exact:
                ok = s.hnorm_ratio**2 <= du.exact
            else:
                ok = s.gram_unit / s.content**2 <= du.exact
        else:
            ok = s.hnorm_hi <= du.value + du.error + _float_slop(du.value)
        checks.append(
            Check(f"hnorm<=harith[k={lab}]", ok, f"hnorm_hi={s.hnorm_hi:.12g} harith={du.value:.12g}")
        )

        if k == INF and s.exact:
            R2 = s.hnorm_ratio**2
            ok = R2 <= du.exact <= comb(M, s.m) * R2
            gap = du.value - s.hnorm_hi
            checks.append(
                Check(
                    "0<=harith[inf]-hnorm<=slack",
                    ok,
                    f"gap={gap:.12g} slack={0.5 * math.log(comb(M, s.m)):.12g}",
                )
            )
    return ConsistencyReport(V.name, D, checks)
