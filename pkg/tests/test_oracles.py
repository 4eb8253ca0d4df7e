import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hilbheight.oracles import (
    MAHLER_1_X_Y,
    OracleValue,
    check_m5,
    epsilon_k,
    mahler_measure,
    mu_delta,
    weil_height_point,
)
from hilbheight.polynomial import parse_polynomial


def mu_delta_inclusion_exclusion(N, delta):
    """Independent oracle for the box integral of (1 + sum r)^-(N+1).

    The N-fold antiderivative of (1+s)^-(N+1) is (-1)^N / (N! (1+s)); summing
    it over the corners of [delta, 1]^N with alternating signs gives the value.
    """
    total = F(0)
    for corner in itertools.product((0, 1), repeat=N):
        s = sum(F(1) if c else F(delta) for c in corner)
        sign = (-1) ** (N - sum(corner))
        total += sign * (-1) ** N / (math.factorial(N) * (1 + s))
    return total


class TestWeil:
    @pytest.mark.parametrize(
        "coords, h", [([1, 1], 0.0), ([1, 2], math.log(2)), (["1/2", "1/3"], math.log(3)), ([0, 5], 0.0)]
    )
    def test_examples(self, coords, h):
        assert weil_height_point(coords).value == pytest.approx(h, abs=1e-15)

    @given(
        st.lists(st.fractions(max_denominator=50).filter(lambda x: x != 0), min_size=2, max_size=4),
        st.fractions(max_denominator=50).filter(lambda x: x != 0),
    )
    def test_scaling_invariance(self, coords, lam):
        assert weil_height_point(coords).exact == weil_height_point([lam * c for c in coords]).exact

    def test_zero_tuple(self):
        with pytest.raises(ValueError):
            weil_height_point([0, 0])


class TestMahler:
    def test_examples(self):
        assert mahler_measure(parse_polynomial("2", 1)).value == pytest.approx(math.log(2))
        assert mahler_measure(parse_polynomial("1 + x0", 1)).value == pytest.approx(0.0, abs=1e-12)
        m = mahler_measure(parse_polynomial("1 + x0 + x1", 2))
        assert m.source == "quadrature"
        assert m.value == pytest.approx(MAHLER_1_X_Y, abs=1e-9)
        assert m.value == pytest.approx(0.3230659, abs=1e-7)

    def test_literature_constant(self):
        # 3 sqrt(3)/(4 pi) L(chi_-3, 2), with L(chi_-3, 2) summed directly
        L = sum(1 / (3 * j + 1) ** 2 - 1 / (3 * j + 2) ** 2 for j in range(200000))
        assert 3 * math.sqrt(3) / (4 * math.pi) * L == pytest.approx(MAHLER_1_X_Y, abs=1e-10)

    def test_homogeneous_line(self):
        m = mahler_measure(parse_polynomial("x0 + x1 + x2"))
        assert m.value == pytest.approx(MAHLER_1_X_Y, abs=1e-9)

    def test_multiplicative(self):
        f = parse_polynomial("1 + x0 + x1", 2)
        g = parse_polynomial("3 + x0", 2)
        fg = mahler_measure(f * g).value
        assert fg == pytest.approx(mahler_measure(f).value + math.log(3), abs=1e-8)

    def test_monomial_invariance(self):
        f = parse_polynomial("x0*x1 + x0^2*x1 + x0*x1^2", 2)
        assert mahler_measure(f, homogeneous=False).value == pytest.approx(MAHLER_1_X_Y, abs=1e-9)

    def test_conic_and_jensen(self):
        assert mahler_measure(parse_polynomial("x0*x2 - x1^2")).value == pytest.approx(0.0, abs=1e-9)
        # roots 1/2 and 3: log 2 + log 3 minus nothing from the inner root... here 2u^2 - 7u + 3
        assert mahler_measure(parse_polynomial("2*x0^2 - 7*x0 + 3", 1)).value == pytest.approx(math.log(6))

    def test_zero(self):
        with pytest.raises(ValueError):
            mahler_measure(parse_polynomial("x0 - x0", 1))


class TestMuDelta:
    def test_examples(self):
        assert mu_delta(1, 0.5) == pytest.approx(1 / 6, abs=1e-15)
        assert mu_delta(1, 1 - 1e-9) == pytest.approx(0.0, abs=1e-9)
        assert 0 < mu_delta(2, 0.5) < mu_delta(2, 0.25)

    @pytest.mark.parametrize("N", [1, 2, 3])
    @pytest.mark.parametrize("delta", ["1/4", "1/2", "9/10"])
    def test_matches_inclusion_exclusion(self, N, delta):
        assert mu_delta(N, float(F(delta))) == pytest.approx(float(mu_delta_inclusion_exclusion(N, F(delta))), rel=1e-9)

    def test_domain(self):
        for bad in (0.0, 1.0, 1.5):
            with pytest.raises(ValueError):
                mu_delta(1, bad)


def test_epsilon_coupling():
    for N in (1, 2, 3):
        for k in (1, 2, 8):
            e = epsilon_k(N, k)
            assert 0 < e < 1
            assert (1 - e) ** 2 == pytest.approx((N + 1) ** (-1 / k))


class TestM5:
    def test_examples(self):
        r = check_m5((1, 1), 2, 0.5)
        assert r.passed and r.norm > r.lower_bound
        assert r.inverse_norm <= r.inverse_bound
        assert check_m5((2, 0), 4, 0.5).passed
        assert check_m5((2, 1), 2, 0.999999).lower_bound < 1e-5

    def test_grid(self):
        failures = []
        for N in (1, 2):
            for D in range(1, 5):
                for a in itertools.product(range(D + 1), repeat=N + 1):
                    if sum(a) != D:
                        continue
                    for k in (2, 4, 8):
                        for delta in (0.25, 0.5):
                            r = check_m5(a, k, delta)
                            if not (r.passed and r.inverse_norm <= r.inverse_bound):
                                failures.append(r.to_dict())
        assert not failures

    def test_unnormalized_constant_is_too_strong(self):
        # nu_{(1,0),8} = Gamma(9/8) / Gamma(17/8) = 8/9 exactly
        r = check_m5((1, 0), 8, 0.25)
        assert r.norm == pytest.approx(8 / 9, abs=1e-12)
        assert r.passed
        assert not r.unnormalized_holds
        assert r.unnormalized_bound == pytest.approx(
            2 ** (-1 / 8) * 4 * 0.25 ** (1 / 8) * (1 / 1.25 - 0.5), rel=1e-12
        )

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            check_m5((1, 1), math.inf, 0.5)


def test_oracle_value_validation():
    with pytest.raises(ValueError):
        OracleValue(1.0, "guess")
    with pytest.raises(ValueError):
        OracleValue(1.0, "quadrature", -1.0)
