import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppp import series as se
from ppp.enumerate import (
    gen_4tuples,
    gen_marked,
    gen_marked_sequences,
    gen_necklaces,
    trees_of_size,
    weight_counts,
)
from ppp.errors import BadValuation, NonIntegralCoefficient, NonInvertible

ORDER = 8
coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=ORDER + 1)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def dyck_paths(n):
    for ups in itertools.combinations(range(2 * n), n):
        steps = [1 if i in ups else -1 for i in range(2 * n)]
        heights = list(itertools.accumulate(steps))
        if min(heights) >= 0:
            yield [0] + heights


def area(heights):
    return sum(a + b for a, b in zip(heights, heights[1:])) // 2


class TestArithmetic:
    @given(coeff_lists.filter(lambda c: c[0] != 0))
    def test_inverse(self, c):
        f = se.Series1.of(c, ORDER)
        assert f * se.ps_inv(f) == se.Series1.of([1], ORDER)

    def test_non_invertible(self):
        with pytest.raises(NonInvertible):
            se.ps_inv(se.Series1.z(4))

    def test_log_needs_zero_constant(self):
        with pytest.raises(BadValuation):
            se.ps_neg_log1m(se.Series1.of([1], 4))

    def test_neg_log_of_z(self):
        assert se.ps_neg_log1m(se.Series1.z(5)).coeffs == tuple(
            [Fraction(0)] + [Fraction(1, m) for m in range(1, 6)]
        )

    @given(coeff_lists, st.integers(1, 4))
    def test_subst_power(self, c, i):
        f = se.Series1.of(c, ORDER)
        h = se.ps_subst_power(f, i)
        assert all(h[n * i] == f[n] for n in range(ORDER // i + 1))
        assert all(h[m] == 0 for m in range(ORDER + 1) if m % i)

    def test_integers_reject_fractions(self):
        with pytest.raises(NonIntegralCoefficient):
            se.Series1.of([Fraction(1, 2)], 2).integers()

    @given(st.integers(0, 5), st.integers(0, 5))
    def test_bivariate_inverse(self, a, b):
        f = 1 - se.Series2.monomial(a, b, 6, 3) - se.Series2.monomial(1, 1, 6)
        if (a, b) == (0, 0):
            return
        assert f * se.ps2_inv(f) == se.Series2.monomial(0, 0, 6)


class TestTrees:
    def test_catalan_against_binomials(self):
        a = se.catalan_A(16).integers()
        assert a == [catalan(n) for n in range(17)]
        assert a[:6] == [1, 1, 2, 5, 14, 42]

    def test_catalan_against_trees(self):
        assert [len(trees_of_size(n)) for n in range(8)] == se.catalan_A(7).integers()

    def test_bicolored(self):
        ab, aw = se.bicolored(10)
        assert ab == aw.swap()
        assert ab.diagonal() == se.catalan_A(10)
        counts = {}
        for n in range(11):
            for t in trees_of_size(n):
                key = t.colored_size("B")
                counts[key] = counts.get(key, 0) + 1
        for (b, w), c in ab.items():
            assert c == counts.get((b, w), 0)


class TestPolya:
    def test_euler_phi(self):
        for i in range(1, 30):
            assert se.euler_phi(i) == sum(1 for k in range(1, i + 1) if math.gcd(k, i) == 1)

    def test_g_matches_tuples(self):
        g = se.gf_G(8).integers()
        counts = weight_counts(gen_4tuples(8))
        for w in range(9):
            assert g[w] == sum(c for (b, x), c in counts.items() if b + x == w)

    def test_s_matches_necklaces(self):
        s = se.polya_S(8).integers()
        counts = weight_counts(gen_necklaces(8))
        for w in range(9):
            assert s[w] == sum(c for (b, x), c in counts.items() if b + x == w)

    def test_known_values(self):
        assert se.polya_S(7).integers() == [0, 0, 1, 4, 15, 52, 190, 680]


class TestMarkedSequences:
    def test_q_and_m(self):
        q, m, _ = se.ppp_zpart(8)
        tuples = weight_counts(gen_4tuples(8))
        marked = weight_counts(gen_marked(8))
        for (b, w), c in q.items():
            assert c == tuples.get((b, w), 0)
        for (b, w), c in m.items():
            assert c == marked.get((b, w), 0)
        assert sum(c for (b, w), c in marked.items() if b + w == 3) == 6

    def test_p1(self):
        _, _, p1 = se.ppp_zpart(8)
        counts = weight_counts(gen_marked_sequences(8))
        for (b, w), c in p1.items():
            assert c == counts.get((b, w), 0)


class TestDyckArea:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 6), (3, 29)])
    def test_examples(self, n, expected):
        assert se.dyck_area_sum(n) == expected

    @pytest.mark.parametrize("n", range(1, 9))
    def test_against_path_listing(self, n):
        assert se.dyck_area_sum(n) == sum(area(h) for h in dyck_paths(n))

    def test_diagonal(self):
        _, _, p1 = se.ppp_zpart(7)
        d = p1.diagonal().integers()
        assert [d[n + 1] for n in range(1, 7)] == [1, 6, 29, 130, 562, 2380]


def test_json_is_stable():
    payload = json.loads(se.to_json(se.catalan_A(3), "z"))
    assert payload == {"var": "z", "order": 3, "coeffs": ["1", "1", "2", "5"]}
