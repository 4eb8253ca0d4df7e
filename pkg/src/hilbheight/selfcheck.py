"""Quick invariant suite behind ``hilbheight selfcheck``.

Each check is small enough to run in a few seconds in total.  The pytest
suite covers the same ground in much more depth; this exists so an installed
copy can vouch for itself without the test tree.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterator

from .hilbert import bases, consistency_report, h_norm
from .ideal import VarietyInput, hilbert_geom
from .linalg import IntegerMatrix, RationalMatrix, det_exact, nullspace, rref, snf_invariant_factors
from .metrics import gamma_log, monomial_norm_exact, monomial_norm_numeric
from .oracles import check_m5
from .polynomial import Polynomial
from .place_norms import supnorm_bracket, supnorm_bruteforce

__all__ = ["run_selfcheck"]

Result = tuple[str, bool, str]


def _rng_matrix(rng: random.Random, r: int, c: int) -> list[list[int]]:
    return [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]


def _linalg(rng: random.Random) -> Iterator[Result]:
    bad = 0
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 6)
        M = RationalMatrix.from_rows(_rng_matrix(rng, r, c))
        R = rref(M)
        if rref(R.matrix).matrix != R.matrix or R.rank + nullspace(M).nrows != c:
            bad += 1
    yield "rref idempotent, rank-nullity", bad == 0, f"{bad} failures in 40"
    bad = 0
    for _ in range(40):
        r = rng.randint(1, 3)
        c = rng.randint(r, 6)
        A = _rng_matrix(rng, r, c)
        g = 0
        for cols in itertools.combinations(range(c), r):
            g = math.gcd(g, det_exact([[A[i][j] for j in cols] for i in range(r)]))
        f = snf_invariant_factors(IntegerMatrix.from_rows(A))
        if g and f.product() != g:
            bad += 1
    yield "snf product = gcd of maximal minors", bad == 0, f"{bad} failures in 40"


def _metrics() -> Iterator[Result]:
    ok = True
    for N in range(3):
        for D in range(7):
            total = Fraction(0)
            for a in itertools.product(range(D + 1), repeat=N + 1):
                if sum(a) != D:
                    continue
                mult = factorial(D)
                for x in a:
                    mult //= factorial(x)
                total += mult * monomial_norm_exact(a, 1)
            ok &= total == 1
    yield "k=1 multinomial identity", ok, "N<=2, D<=6"
    yield "gamma(1;1,1)=4, gamma(1;2,1)=54", (
        gamma_log(1, 1, 1).exact == 4 and gamma_log(1, 2, 1).exact == 54
    ), ""
    err = max(
        abs(monomial_norm_numeric(a, 1).value - float(monomial_norm_exact(a, 1)))
        for a in [(1, 0), (1, 1), (2, 1, 0), (3, 2, 1)]
    )
    yield "quadrature matches closed form", err < 1e-6, f"max error {err:.2e}"


def _hilbert(rng: random.Random) -> Iterator[Result]:
    fixtures = [
        VarietyInput.from_strings(3, ["x2"], name="coordinate line"),
        VarietyInput.from_strings(3, ["x0+x1+x2"], name="line"),
        VarietyInput.from_strings(3, ["x0*x2-x1^2"], name="conic"),
    ]
    for _ in range(10):
        a, b = rng.randint(1, 9), rng.randint(-9, 9)
        f = Polynomial.from_dict(2, {(0, 1): a, (1, 0): -b})
        fixtures.append(VarietyInput(2, (f,), name=f"point {a}:{b}"))
    failures = []
    for V in fixtures:
        for D in range(1, 4):
            rep = consistency_report(V, D)
            failures += [f"{V.name} D={D} {c.name}" for c in rep.failures()]
    yield "primal=dual and H_norm <= H_arith", not failures, "; ".join(failures[:3])

    bad = 0
    for V in fixtures[:3]:
        for D in range(1, 4):
            Q = bases(V, D)[1].matrix
            if comb(Q.ncols, Q.nrows) <= 10**5:
                s = float(supnorm_bruteforce(Q))
                br = supnorm_bracket(Q)
                if not br.contains(math.log(s), 1e-12):
                    bad += 1
    yield "brute-force sup norm inside Gram bracket", bad == 0, f"{bad} violations"

    c = 3
    P = VarietyInput.from_strings(2, [f"x1-{c}*x0"])
    ok = all(h_norm(P, D).hnorm_ratio == c**D for D in range(1, 12))
    ok &= all(hilbert_geom(P, D) == 1 for D in range(1, 6))
    yield "point [1:3]: H_norm = D log 3", ok, ""


def _m5() -> Iterator[Result]:
    bad = []
    for a in [(1, 1), (2, 0), (2, 1, 1), (4, 0, 0)]:
        for k in (2, 4, 8):
            for delta in (0.25, 0.5):
                r = check_m5(a, k, delta)
                if not r.passed:
                    bad.append(f"a={a} k={k} delta={delta}")
    yield "monomial-norm lower bound grid", not bad, "; ".join(bad)


def run_selfcheck(seed: int = 0, emit: Callable[[str], None] | None = None) -> list[Result]:
    rng = random.Random(seed)
    results: list[Result] = []
    for group in (_linalg(rng), _metrics(), _hilbert(rng), _m5()):
        for res in group:
            results.append(res)
            if emit is not None:
                name, ok, detail = res
                emit(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return results
