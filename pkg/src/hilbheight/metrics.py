"""Monomial norms for the metric family ``h_k`` on ``O(1)``.

For ``k`` a positive integer, ``h_k`` divides by the ``2k``-norm of the
coordinates; ``k = inf`` gives the sup metric.  The volume form is
``Omega_k = omega_k^N`` with ``omega_k = (1/k) [k]^* omega``, normalized to
total mass one.  Monomials are orthogonal for every ``k`` (torus
invariance), so the whole Hermitian structure on degree-``D`` forms is the
table of squared norms ``nu_{a,k} = <x^a, x^a>_k``.

Pulling back along ``z -> z^k`` and passing to radial variables
``u_i = |z_i|^{2k}`` in the chart ``x_0 = 1`` gives::

    nu_{a,k} = N! * int_{(R+)^N} prod_i u_i^{a_i/k} (1 + sum u)^{-(D/k + N + 1)} du

which is what :func:`monomial_norm_numeric` integrates after mapping each
axis to the unit interval with ``t = u/(1+u)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from scipy import integrate

from .ideal import enumerate_monomials

__all__ = [
    "INF",
    "MetricParameter",
    "parse_metric",
    "metric_label",
    "QuadratureBudgetExceeded",
    "NumericNorm",
    "MonomialNormTable",
    "GammaValue",
    "monomial_norm_exact",
    "monomial_norm_numeric",
    "monomial_norm_table",
    "gamma_log",
]

INF = math.inf
MetricParameter = Union[int, float]


class QuadratureBudgetExceeded(RuntimeError):
    def __init__(self, message: str, value: float, error: float):
        super().__init__(f"quadrature budget exceeded: {message} (best {value!r} +/- {error:.3g})")
        self.value = value
        self.error = error


def parse_metric(k) -> MetricParameter:
    """Accept ``1``, ``"3"``, ``"inf"``, ``math.inf``."""
    if isinstance(k, str):
        s = k.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        k = int(s)
    if k == INF:
        return INF
    if isinstance(k, float):
        if not k.is_integer():
            raise ValueError(f"metric parameter must be an integer or inf, got {k}")
        k = int(k)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"metric parameter must be >= 1 or inf, got {k!r}")
    return k


def metric_label(k: MetricParameter) -> str:
    return "inf" if k == INF else str(int(k))


def _check_exponent(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a or any(x < 0 for x in a):
        raise ValueError(f"bad exponent vector {a}")
    return a


def monomial_norm_exact(a: Sequence[int], k: MetricParameter) -> Fraction:
    """``<x^a, x^a>_k`` for ``k`` in ``{1, inf}``.

    ``k = 1`` is the normalized Fubini-Study norm ``N! a_0!...a_N! / (D+N)!``;
    ``k = inf`` is identically one.
    """
    a = _check_exponent(a)
    k = parse_metric(k)
    if k == INF:
        return Fraction(1)
    if k != 1:
        raise ValueError("exact monomial norms exist only for k in {1, inf}; use monomial_norm_numeric")
    N, D = len(a) - 1, sum(a)
    num = math.factorial(N)
    for x in a:
        num *= math.factorial(x)
    return Fraction(num, math.factorial(D + N))


@dataclass(frozen=True)
class NumericNorm:
    value: float
    error: float

    @property
    def lower(self) -> float:
        return self.value - self.error

    @property
    def upper(self) -> float:
        return self.value + self.error


def _integrand(alpha: Sequence[float], expo: float, scale: float):
    # u = t/(1-t), du = dt/(1-t)^2
    def f(*t):
        logv = 0.0
        usum = 0.0
        for ti, al in zip(t, alpha):
            if ti >= 1.0:
                return 0.0
            if ti <= 0.0:
                if al > 0.0:
                    return 0.0
                continue
            om = 1.0 - ti
            u = ti / om
            usum += u
            logv += al * math.log(u) - 2.0 * math.log(om)
        return scale * math.exp(logv - expo * math.log1p(usum))

    return f


@lru_cache(maxsize=4096)
def _numeric_sorted(a: tuple[int, ...], k: int, tol: float) -> NumericNorm:
    N, D = len(a) - 1, sum(a)
    if N == 0:
        return NumericNorm(1.0, 0.0)
    alpha = [x / k for x in a[1:]]
    expo = D / k + N + 1
    f = _integrand(alpha, expo, float(math.factorial(N)))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        if N == 1:
            val, err = integrate.quad(f, 0.0, 1.0, epsabs=0.0, epsrel=tol / 8, limit=400)
        else:
            opts = {"epsabs": 0.0, "epsrel": tol / (8 * N), "limit": 200}
            val, err = integrate.nquad(f, [[0.0, 1.0]] * N, opts=[opts] * N)
    bad = [w for w in caught if issubclass(w.category, integrate.IntegrationWarning)]
    if bad or not (err <= tol * abs(val)):
        raise QuadratureBudgetExceeded(
            f"nu_{a},k={k} did not reach relative tolerance {tol:g}", val, err
        )
    return NumericNorm(float(val), float(err))


def monomial_norm_numeric(a: Sequence[int], k: MetricParameter, tol: float = 1e-8) -> NumericNorm:
    """Quadrature value of ``<x^a, x^a>_k`` for finite ``k >= 1``.

    The returned error bound is the adaptive rule's estimate, refined until
    it is at most ``tol`` times the value; otherwise
    :class:`QuadratureBudgetExceeded` is raised.
    """
    a = _check_exponent(a)
    k = parse_metric(k)
    if k == INF:
        raise ValueError("k = inf has the exact norm 1; use monomial_norm_exact")
    if not tol > 0:
        raise ValueError("tol must be positive")
    # nu is symmetric in a; the largest exponent goes on the chart coordinate
    # x0, where it only enters through the decay at infinity
    key = tuple(sorted(a, reverse=True))
    return _numeric_sorted(key, int(k), float(tol))


@dataclass(frozen=True)
class MonomialNormTable:
    """Squared monomial norms for all ``a`` of degree ``D`` in ``N+1`` variables.

    ``values`` are :class:`~fractions.Fraction` for ``k`` in ``{1, inf}``
    (``errors`` all zero) and floats otherwise.
    """

    N: int
    D: int
    k: MetricParameter
    exponents: tuple[tuple[int, ...], ...]
    values: tuple
    errors: tuple[float, ...]

    @property
    def exact(self) -> bool:
        return self.k == 1 or self.k == INF


def monomial_norm_table(N: int, D: int, k: MetricParameter, tol: float = 1e-8) -> MonomialNormTable:
    k = parse_metric(k)
    idx = enumerate_monomials(N, D).exponents
    if k == 1 or k == INF:
        vals = tuple(monomial_norm_exact(a, k) for a in idx)
        errs = (0.0,) * len(idx)
    else:
        nums = [monomial_norm_numeric(a, k, tol) for a in idx]
        vals = tuple(x.value for x in nums)
        errs = tuple(x.error for x in nums)
    return MonomialNormTable(N, D, k, idx, vals, errs)


@dataclass(frozen=True)
class GammaValue:
    """``log gamma(N; D, k) = -sum_a log nu_{a,k}``."""

    log: float
    exact: Fraction | None
    error: float


def gamma_log(N: int, D: int, k: MetricParameter, tol: float = 1e-8) -> GammaValue:
    table = monomial_norm_table(N, D, k, tol)
    if table.exact:
        prod = Fraction(1)
        for v in table.values:
            prod /= v
        return GammaValue(_log_fraction(prod), prod, 0.0)
    total, err = 0.0, 0.0
    for v, e in zip(table.values, table.errors):
        total -= math.log(v)
        err += -math.log1p(-e / v)
    return GammaValue(total, None, err)


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)
