"""Reference values that do not go through Hilbert functions.

Nothing in the core computation imports this module's numerics; they exist
so that estimates can be compared against something computed another way.

* Weil heights of rational points (closed form).
* Logarithmic Mahler measures, the canonical height of a hypersurface cut
  out by a primitive integer form (literature fact, quadrature value).
* ``mu_delta`` and the lower bound on monomial norms used when comparing
  ``h_k`` with the sup metric.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np
from scipy import integrate

from .metrics import monomial_norm_numeric
from .polynomial import Polynomial

__all__ = [
    "OracleValue",
    "MAHLER_1_X_Y",
    "weil_height_point",
    "mahler_measure",
    "mu_delta",
    "epsilon_k",
    "M5Check",
    "check_m5",
]

# m(1 + x + y) = 3 sqrt(3) / (4 pi) * L(chi_{-3}, 2)  (Smyth)
MAHLER_1_X_Y = 0.3230659472194505


@dataclass(frozen=True)
class OracleValue:
    value: float
    source: str
    error: float = 0.0
    exact: Fraction | None = None

    def __post_init__(self):
        if self.error < 0:
            raise ValueError("error bound must be non-negative")
        if self.source not in ("closed-form", "quadrature", "literature-constant"):
            raise ValueError(f"unknown oracle source {self.source!r}")

    def to_dict(self) -> dict:
        return {"value": self.value, "source": self.source, "error": self.error}


def weil_height_point(coords: Sequence) -> OracleValue:
    """``log max |c_i|`` after scaling to coprime integers.

    ``exact`` holds ``max |c_i|``.
    """
    xs = [Fraction(c) for c in coords]
    if not xs or all(x == 0 for x in xs):
        raise ValueError("the zero tuple is not a projective point")
    L = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in xs), 1)
    ints = [int(x * L) for x in xs]
    g = reduce(math.gcd, (abs(c) for c in ints))
    top = max(abs(c) // g for c in ints)
    return OracleValue(math.log(top), "closed-form", 0.0, Fraction(top))


def _jensen(coeffs: np.ndarray) -> float:
    """``m(sum_j c_j u^j)`` by Jensen: ``log|lead| + sum log max(1, |root|)``."""
    nz = np.flatnonzero(np.abs(coeffs) > 0)
    if nz.size == 0:
        return -math.inf
    c = coeffs[nz[0]: nz[-1] + 1]
    lead = c[-1]
    if c.size == 1:
        return math.log(abs(lead))
    roots = np.roots(c[::-1])
    return math.log(abs(lead)) + float(np.sum(np.log(np.maximum(1.0, np.abs(roots)))))


def mahler_measure(f: Polynomial, tol: float = 1e-9, homogeneous: bool | None = None) -> OracleValue:
    """Logarithmic Mahler measure over the unit torus.

    The last variable is handled exactly with Jensen's formula; the rest are
    integrated numerically.  A homogeneous form is first dehomogenized at
    ``x0``, which leaves the measure unchanged.
    """
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if homogeneous is None:
        homogeneous = f.is_homogeneous() and f.nvars > 1
    if homogeneous:
        f = f.dehomogenize(0)
    n = f.nvars
    # drop variables that never occur
    used = [i for i in range(n) if any(e[i] for e, _ in f.terms)]
    if not used:
        c = f.terms[0][1]
        return OracleValue(math.log(abs(c)), "closed-form", 0.0)
    last = used[-1]
    rest = used[:-1]
    dmax = max(e[last] for e, _ in f.terms)
    groups: dict[int, list[tuple[tuple[int, ...], float]]] = {}
    for e, c in f.terms:
        groups.setdefault(e[last], []).append((tuple(e[i] for i in rest), float(c)))

    def inner(*theta):
        coeffs = np.zeros(dmax + 1, dtype=complex)
        for j, terms in groups.items():
            s = 0j
            for e, c in terms:
                s += c * np.exp(1j * sum(a * t for a, t in zip(e, theta)))
            coeffs[j] = s
        v = _jensen(coeffs)
        # a vanishing coefficient vector happens on a null set only
        return v if math.isfinite(v) else -700.0

    if not rest:
        return OracleValue(inner(), "closed-form", 1e-13 * (1 + dmax))
    two_pi = 2 * math.pi
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        if len(rest) == 1:
            val, err = integrate.quad(inner, 0.0, two_pi, epsabs=tol * two_pi / 4, epsrel=0.0, limit=500)
        else:
            opts = {"epsabs": tol * two_pi / 4, "epsrel": 0.0, "limit": 200}
            val, err = integrate.nquad(inner, [[0.0, two_pi]] * len(rest), opts=[opts] * len(rest))
    scale = two_pi ** len(rest)
    err = err / scale
    if any(issubclass(w.category, integrate.IntegrationWarning) for w in caught):
        err = max(err, 10 * tol)
    return OracleValue(val / scale, "quadrature", err)


def mu_delta(N: int, delta: float, tol: float = 1e-10) -> float:
    """``int_{[delta,1]^N} dr / (1 + sum r)^(N+1)``; exact for ``N = 1``."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if N < 1:
        raise ValueError("N must be at least 1")
    if N == 1:
        return 1.0 / (1.0 + delta) - 0.5
    f = lambda *r: (1.0 + sum(r)) ** (-(N + 1))
    opts = {"epsabs": 0.0, "epsrel": tol}
    val, _ = integrate.nquad(f, [[delta, 1.0]] * N, opts=[opts] * N)
    return val


def epsilon_k(N: int, k: int) -> float:
    """Uniform comparison constant: ``(1 - eps)^2 = (N+1)^(-1/k)``.

    From ``max|x_i| <= ||x||_{2k} <= (N+1)^(1/2k) max|x_i|``.
    """
    return 1.0 - (N + 1) ** (-1.0 / (2 * k))


@dataclass(frozen=True)
class M5Check:
    """Both sides of the monomial-norm lower bound at one ``(a, k, delta)``.

    ``lower_bound`` uses the constant ``N! (N+1)``, which is what splitting
    the radial domain into ``N+1`` cells gives for the mass-one volume form.
    ``unnormalized_bound`` uses ``2^N (N+1)`` instead, the constant that
    arises when the polar-coordinate Jacobian is not renormalized; it is
    reported but not required.
    """

    a: tuple[int, ...]
    k: int
    delta: float
    eps: float
    mu: float
    norm: float
    norm_error: float
    lower_bound: float
    unnormalized_bound: float
    inverse_norm: float
    inverse_bound: float
    passed: bool

    @property
    def unnormalized_holds(self) -> bool:
        return self.norm - self.norm_error >= self.unnormalized_bound

    def to_dict(self) -> dict:
        return {
            "a": list(self.a),
            "k": self.k,
            "delta": self.delta,
            "eps": self.eps,
            "mu_delta": self.mu,
            "norm": self.norm,
            "norm_error": self.norm_error,
            "lower_bound": self.lower_bound,
            "unnormalized_bound": self.unnormalized_bound,
            "unnormalized_holds": self.unnormalized_holds,
            "inverse_norm": self.inverse_norm,
            "inverse_bound": self.inverse_bound,
            "passed": self.passed,
        }


def check_m5(a: Sequence[int], k: int, delta: float, tol: float = 1e-8) -> M5Check:
    """Check ``nu^-1 <= (1-eps)^{-2D} delta^{-D/k} mu_delta^-1`` for ``nu = nu_{a,k}``.

    Also requires the sharper intermediate form
    ``nu >= (1-eps)^{2D} N! (N+1) delta^{D/k} mu_delta``.  Both are judged on
    the pessimistic end ``nu - error`` of the quadrature interval.
    """
    a = tuple(int(x) for x in a)
    N, D = len(a) - 1, sum(a)
    if N < 1:
        raise ValueError("need N >= 1")
    if isinstance(k, float) or k < 1:
        raise ValueError("k must be a finite integer >= 1")
    eps = epsilon_k(N, k)
    mu = mu_delta(N, delta)
    nu = monomial_norm_numeric(a, k, tol)
    base = (1 - eps) ** (2 * D) * delta ** (D / k) * mu
    bound = math.factorial(N) * (N + 1) * base
    loose = 2**N * (N + 1) * base
    inv_bound = 1.0 / base
    worst = nu.value - nu.error
    passed = worst >= bound and 1.0 / worst <= inv_bound
    return M5Check(
        a, k, delta, eps, mu, nu.value, nu.error, bound, loose, 1.0 / nu.value, inv_bound, passed
    )
