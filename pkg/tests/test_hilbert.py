import math
import random
from fractions import Fraction as F
from math import comb

import pytest

from hilbheight.hilbert import bases, consistency_report, h_arith, h_norm, hilbert_sample
from hilbheight.ideal import VarietyInput
from hilbheight.metrics import INF
from hilbheight.place_norms import MinorBudgetExceeded, supnorm_bruteforce
from hilbheight.polynomial import Polynomial



def binary_form(roots):
    """prod (b_i x0 - a_i x1) vanishing at the points [a_i : b_i]."""
    f = Polynomial.from_dict(2, {(0, 0): 1})
    for a, b in roots:
        f = f * Polynomial.from_dict(2, {(1, 0): b, (0, 1): -a})
    return f


def random_point_ideal(rnd):
    roots = set()
    while len(roots) < rnd.randint(1, 3):
        a, b = rnd.randint(-7, 7), rnd.randint(-7, 7)
        if (a, b) != (0, 0):
            g = math.gcd(a, b)
            a, b = a // g, b // g
            if b < 0 or (b == 0 and a < 0):
                a, b = -a, -b
            roots.add((a, b))
    return VarietyInput(2, (binary_form(sorted(roots)),), name=f"points {sorted(roots)}")


class TestHNorm:
    def test_point_d2(self, point12):
        s = h_norm(point12, 2)
        assert s.exact and s.hnorm_ratio == 4
        assert s.hnorm_lo == s.hnorm_hi == pytest.approx(math.log(4), abs=1e-15)

    @pytest.mark.parametrize("D", range(1, 11))
    def test_point_family(self, point12, D):
        assert h_norm(point12, D).hnorm_ratio == 2**D

    @pytest.mark.parametrize("D", range(1, 9))
    def test_coordinate_line_vanishes(self, coord_line, D):
        s = h_norm(coord_line, D)
        assert s.hnorm_ratio == 1 and s.hnorm_hi == 0

    def test_no_generators(self):
        s = h_norm(VarietyInput(3, ()), 3)
        assert s.l == 0 and s.m == 10 and s.hnorm_ratio == 1

    @pytest.mark.parametrize("gens", [["x0*x1"], ["x0^2*x2", "x1^3"], ["x0*x1", "x1*x2"]])
    def test_monomial_ideals_vanish(self, gens):
        V = VarietyInput.from_strings(3 if any("x2" in g for g in gens) else 2, gens)
        for D in range(1, 7):
            assert h_norm(V, D).hnorm_ratio == 1

    @pytest.mark.parametrize("D", [4, 8, 12])
    def test_line_bracket_width(self, line, D):
        s = h_norm(line, D, mode="bracket")
        assert not s.exact and s.method == "bracket"
        width = 0.5 * math.log(comb(comb(D + 2, 2), D + 1))
        assert s.hnorm_hi - s.hnorm_lo == pytest.approx(width, rel=1e-12)

    def test_auto_falls_back_and_exact_refuses(self, line):
        s = h_norm(line, 6, mode="auto", budget=10)
        assert s.method == "bracket"
        with pytest.raises(MinorBudgetExceeded):
            h_norm(line, 6, mode="exact", budget=10)

    def test_auto_matches_bruteforce(self, line):
        for D in range(1, 6):
            s = h_norm(line, D)
            assert s.method in ("bruteforce", "certificate")
            assert s.sup == supnorm_bruteforce(bases(line, D)[1].matrix)
            assert s.hnorm_lo <= s.hnorm_hi + 1e-15
            br = h_norm(line, D, mode="bracket")
            assert br.hnorm_lo - 1e-12 <= s.hnorm_lo <= br.hnorm_hi + 1e-12

    def test_row_equivalent_generators(self):
        A = VarietyInput.from_strings(3, ["x0*x1 - 2*x2^2", "x0^2 + x1*x2"])
        B = VarietyInput.from_strings(3, ["3*x0*x1 - 6*x2^2 + x0^2 + x1*x2", "-1/2*x0^2 - 1/2*x1*x2"])
        for D in range(1, 5):
            assert h_norm(A, D).hnorm_ratio == h_norm(B, D).hnorm_ratio
            for k in (1, INF):
                assert h_arith(A, D, k).exact == h_arith(B, D, k).exact

    def test_degree_one_rejected(self, point12):
        with pytest.raises(ValueError):
            h_norm(point12, 0)
        with pytest.raises(ValueError):
            h_norm(point12, 1, mode="fast")


class TestHArith:
    def test_point_d1(self, point12):
        for form in ("primal", "dual"):
            assert h_arith(point12, 1, INF, form).value == pytest.approx(0.5 * math.log(5), abs=1e-15)
            assert h_arith(point12, 1, 1, form).value == pytest.approx(0.5 * math.log(10), abs=1e-15)
            assert h_arith(point12, 1, INF, form).exact == 5

    def test_coordinate_line_d1(self, coord_line):
        assert h_arith(coord_line, 1, INF, "primal").value == 0
        assert h_arith(coord_line, 1, INF, "dual").value == 0

    @pytest.mark.parametrize("k", [2, 4])
    def test_finite_k_primal_dual(self, line, k):
        for D in (1, 2, 3):
            p = h_arith(line, D, k, "primal")
            d = h_arith(line, D, k, "dual")
            assert p.exact is None and d.exact is None
            assert abs(p.value - d.value) <= p.error + d.error + 1e-11

    def test_monotone_between_metrics(self, line):
        # H_arith(k) decreases towards the sup metric value as k grows
        vals = [h_arith(line, 3, k).value for k in (1, 2, 4, INF)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_sample_fields(self, point12):
        s = hilbert_sample(point12, 3, ks=(1, 2, INF))
        assert set(s.harith) == {"1", "2", "inf"}
        assert s.harith_exact["2"] is None and s.harith_exact["inf"] is not None
        d = s.to_dict()
        assert d["H_geom"] == 1 and d["hnorm_exact"] and d["method"] == "certificate"


class TestConsistency:
    def test_point_d1(self, point12):
        rep = consistency_report(point12, 1)
        assert rep.passed, rep.failures()
        s = h_norm(point12, 1)
        gap = h_arith(point12, 1, INF).value - s.hnorm_hi
        assert gap == pytest.approx(0.5 * math.log(5 / 4))
        assert gap <= 0.5 * math.log(2)

    @pytest.mark.parametrize("D", range(1, 5))
    def test_coordinate_line(self, coord_line, D):
        assert consistency_report(coord_line, D).passed

    def test_random_point_ideals(self):
        rnd = random.Random(1234)
        for _ in range(100):
            V = random_point_ideal(rnd)
            for D in range(1, 7):
                rep = consistency_report(V, D)
                assert rep.passed, (V.name, D, rep.failures())

    @pytest.mark.parametrize("name", ["line", "conic", "coord_line"])
    def test_plane_fixtures(self, name, request):
        V = request.getfixturevalue(name)
        for D in range(1, 5):
            rep = consistency_report(V, D, ks=(1, 2, INF))
            assert rep.passed, rep.failures()

    def test_bracket_mode_still_consistent(self, line):
        rep = consistency_report(line, 4, mode="bracket")
        assert rep.passed
        assert "0<=harith[inf]-hnorm<=slack" not in [c.name for c in rep.checks]

    def test_report_dict(self, point12):
        d = consistency_report(point12, 2).to_dict()
        assert d["passed"] and d["D"] == 2 and len(d["checks"]) == 5


def test_conic_vanishes_exactly(conic):
    # annihilator rows are indicators of the fibres of [s:t] -> [s^2:st:t^2]
    for D in (1, 5, 16, 32):
        s = h_norm(conic, D)
        assert s.method == "certificate" and s.hnorm_ratio == 1
