import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from hilbheight.linalg import RationalMatrix, det_exact, rref
from hilbheight.place_norms import (
    MinorBudgetExceeded,
    NotABasis,
    finite_places_log,
    gram_logdet,
    supnorm_bracket,
    supnorm_bruteforce,
    supnorm_disjoint_support,
)


def M(rows):
    return RationalMatrix.from_rows(rows)


def minors(rows):
    r, c = len(rows), len(rows[0])
    return [
        det_exact([[rows[i][j] for j in cols] for i in range(r)])
        for cols in itertools.combinations(range(c), r)
    ]


def full_rank_int_matrix(max_rows=3, max_cols=6, bound=9):
    return (
        st.integers(1, max_rows)
        .flatmap(lambda r: st.integers(r, max_cols).map(lambda c: (r, c)))
        .flatmap(
            lambda rc: st.lists(
                st.lists(st.integers(-bound, bound), min_size=rc[1], max_size=rc[1]),
                min_size=rc[0],
                max_size=rc[0],
            )
        )
        .filter(lambda rows: rref(M(rows)).rank == len(rows))
    )


class TestFinitePlaces:
    def test_examples(self):
        f = finite_places_log(M([[2, 0], [0, 6]]))
        assert f.content == 12 and f.log_value == pytest.approx(-math.log(12), abs=1e-15)
        assert finite_places_log(M([[1, 0, 1], [0, 1, 1]])).content == 1
        assert finite_places_log(M([[1, 0, 1], [0, 1, 1]])).log_value == 0
        assert finite_places_log(M([[1, 2, 4]])).content == 1

    def test_rational_rows(self):
        # wedge of (1/2, 1/3) has coordinates with gcd 1/6
        assert finite_places_log(M([[F(1, 2), F(1, 3)]])).content == F(1, 6)

    def test_rank_deficient(self):
        with pytest.raises(NotABasis, match="not a basis"):
            finite_places_log(M([[1, 2], [2, 4]]))

    @given(full_rank_int_matrix())
    def test_content_is_gcd_of_minors(self, rows):
        assert finite_places_log(M(rows)).content == math.gcd(*minors(rows))


class TestGram:
    def test_examples(self):
        assert gram_logdet(M([[1, 2, 4]]), [1, 1, 1]).det == 21
        assert gram_logdet(M([[1, 0], [0, 1]]), [1, 1]).log == 0
        g = gram_logdet(M([[1, -1, 1]]), [3, 6, 3])
        assert g.det == 12 and g.log == pytest.approx(math.log(12))

    @given(full_rank_int_matrix(), st.randoms(use_true_random=False))
    def test_cauchy_binet(self, rows, rnd):
        w = [F(rnd.randint(1, 9), rnd.randint(1, 9)) for _ in rows[0]]
        r, c = len(rows), len(rows[0])
        expect = F(0)
        for cols, m in zip(itertools.combinations(range(c), r), minors(rows)):
            wt = F(1)
            for j in cols:
                wt *= w[j]
            expect += wt * m * m
        assert gram_logdet(M(rows), w).det == expect

    def test_float_weights_are_exact(self):
        g = gram_logdet(M([[1, 1]]), [0.1, 0.2])
        assert g.det == F(0.1) + F(0.2)

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            gram_logdet(M([[1, 1]]), [1, 0])
        with pytest.raises(ValueError):
            gram_logdet(M([[1, 1]]), [1])


class TestSupNorm:
    def test_examples(self):
        assert supnorm_bruteforce(M([[1, 2, 4]])) == 4
        assert supnorm_bruteforce(M([[1, 0, 1], [0, 1, 1]])) == 1
        assert supnorm_bruteforce(M([[2, 0], [0, 6]])) == 12

    def test_budget(self):
        with pytest.raises(MinorBudgetExceeded, match="bracket"):
            supnorm_bruteforce(M([[1] * 10, list(range(10))]), budget=44)
        assert supnorm_bruteforce(M([[1] * 10, list(range(10))]), budget=45) == 9

    @given(full_rank_int_matrix(max_rows=4, max_cols=7))
    def test_matches_enumeration(self, rows):
        assert supnorm_bruteforce(M(rows)) == max(abs(m) for m in minors(rows))

    def test_disjoint_support(self):
        B = M([[1, 0, 3, 0], [0, -5, 0, F(1, 2)]])
        assert supnorm_disjoint_support(B) == 15
        assert supnorm_bruteforce(B) == 15
        assert supnorm_disjoint_support(M([[1, 1, 0], [0, 1, 1]])) is None

    @given(st.integers(1, 4), st.integers(0, 4), st.randoms(use_true_random=False))
    def test_disjoint_support_matches_bruteforce(self, r, extra, rnd):
        cols = list(range(r + extra + r))
        rnd.shuffle(cols)
        rows = [[0] * len(cols) for _ in range(r)]
        it = iter(cols)
        for i in range(r):
            for _ in range(rnd.randint(1, 2)):
                j = next(it, None)
                if j is not None:
                    rows[i][j] = rnd.choice([-7, -2, -1, 1, 3, 8])
        assume(all(any(row) for row in rows))
        B = M(rows)
        assert supnorm_disjoint_support(B) == supnorm_bruteforce(B)


class TestBracket:
    def test_examples(self):
        br = supnorm_bracket(M([[1, 2, 4]]))
        assert br.lower == pytest.approx(0.5 * math.log(21) - 0.5 * math.log(3))
        assert br.upper == pytest.approx(0.5 * math.log(21))
        assert br.contains(math.log(4))
        assert supnorm_bracket(M([[1, 0], [0, 1]])).exact
        br = supnorm_bracket(M([[1, 0, 1], [0, 1, 1]]))
        assert br.lower == pytest.approx(0.0, abs=1e-15) and br.contains(0.0, 1e-15)

    @given(full_rank_int_matrix(max_rows=4, max_cols=7))
    def test_contains_bruteforce(self, rows):
        B = M(rows)
        s = math.log(supnorm_bruteforce(B))
        assert supnorm_bracket(B).contains(s, 1e-12)


@given(full_rank_int_matrix(max_rows=3, max_cols=5, bound=5), st.randoms(use_true_random=False))
def test_product_formula_invariance(rows, rnd):
    """Changing basis by any invertible rational T leaves sup/content and
    gram/content^2 unchanged."""
    r = len(rows)
    while True:
        T = [[F(rnd.randint(-4, 4), rnd.randint(1, 4)) for _ in range(r)] for _ in range(r)]
        if rref(M(T)).rank == r:
            break
    B = M(rows)
    TB = M(T) @ B
    h = supnorm_bruteforce(B) / finite_places_log(B).content
    assert supnorm_bruteforce(TB) / finite_places_log(TB).content == h
    w = [1] * B.ncols
    g = gram_logdet(B, w).det / finite_places_log(B).content ** 2
    assert gram_logdet(TB, w).det / finite_places_log(TB).content ** 2 == g


def test_row_scaling_invariance():
    rnd = random.Random(7)
    for _ in range(50):
        rows = [[rnd.randint(-9, 9) for _ in range(5)] for _ in range(2)]
        if rref(M(rows)).rank < 2:
            continue
        B = M(rows)
        c = F(rnd.randint(1, 30), rnd.randint(1, 30))
        B2 = M([[c * x for x in rows[0]], rows[1]])
        assert supnorm_bruteforce(B2) / finite_places_log(B2).content == (
            supnorm_bruteforce(B) / finite_places_log(B).content
        )
