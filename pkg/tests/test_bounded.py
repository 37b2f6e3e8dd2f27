from fractions import Fraction

import pytest

from walkpoly.bounded import bounded_bridge_gf, bounded_free_gf
from walkpoly.oracle import count_walks
from walkpoly.qnum import QQ
from walkpoly.steps import validate
from walkpoly.unipoly import RationalFunction, UniPoly, series_of_ratfun


def rf(num, den):
    return RationalFunction(UniPoly("t", num), UniPoly("t", den))


FOOTBALL_DEN = [1, -4, -59, -77, 170, 234, -92, -142, -4, 6]

BASKETBALL = [(Fraction(1, 2), 1), (Fraction(1, 2), -1), (1, 2), (1, -2)]

# 1/(1-t), then numerator(F_w) = denominator(F_(w-1)); the w=2 entry carries
# a sign misprint upstream (the -3t^2 below is forced by the brute-force
# counts 1, 1, 5, 13, ... and by the defining product relation)
BASKETBALL_FIXTURES = {
    0: rf([1], [1]),
    1: rf([1], [1, -1]),
    2: rf([1, -1], [1, -2, -3]),
    3: rf([1, -2, -3], [1, -3, -5, -2, 1]),
    4: rf([1, -3, -5, -2, 1], [1, -4, -6, 2]),
}


class TestFootball:
    def test_free_gf(self, football_steps):
        p = validate(football_steps, "bounded-free", lower=-8, upper=8)
        assert bounded_free_gf(p) == rf([1, 10, 13, -37, -40, 28, 26, -2], FOOTBALL_DEN)

    def test_bridge_gf(self, football_steps):
        p = validate(football_steps, "bounded-bridge", lower=-8, upper=8)
        assert bounded_bridge_gf(p) == rf(
            [1, -4, -45, -43, 98, 108, -24, -30], FOOTBALL_DEN
        )

    def test_series_match_oracle(self, football_steps):
        p = validate(football_steps, "bounded-free", lower=-8, upper=8)
        s = series_of_ratfun(bounded_free_gf(p), 12)
        assert list(s.coeffs) == list(count_walks(p, 12).counts)


class TestBasketball:
    @pytest.mark.parametrize("w", range(5))
    def test_fixtures(self, w):
        p = validate(BASKETBALL, "bounded-bridge", lower=0, upper=w)
        assert bounded_bridge_gf(p) == BASKETBALL_FIXTURES[w]

    def test_defining_relation(self):
        """F_w = 1 - tF_w + 2tF_wF_(w-1) + 2t^2 F_wF_(w-1)F_(w-2)
        - (t^3+t^4) F_w..F_(w-3) + t^5 F_w..F_(w-4), negative indices -> 0."""
        F = {w: bounded_bridge_gf(validate(BASKETBALL, "bounded-bridge", lower=0, upper=w))
             for w in range(5)}
        F.update({w: RationalFunction.zero() for w in range(-4, 0)})
        t = RationalFunction(UniPoly("t", [0, 1]))
        one = RationalFunction.one()
        for w in range(1, 5):
            rhs = (
                one
                - t * F[w]
                + 2 * t * F[w] * F[w - 1]
                + 2 * t * t * F[w] * F[w - 1] * F[w - 2]
                - (t ** 3 + t ** 4) * F[w] * F[w - 1] * F[w - 2] * F[w - 3]
                + t ** 5 * F[w] * F[w - 1] * F[w - 2] * F[w - 3] * F[w - 4]
            )
            assert rhs == F[w], f"relation fails at w={w}"

    def test_scaled_series_match_oracle(self):
        p = validate(BASKETBALL, "bounded-bridge", lower=0, upper=3)
        gf = bounded_bridge_gf(p)  # reported in the original (length) variable
        s = series_of_ratfun(gf, 8)
        oracle = count_walks(p, 16).counts  # internal variable: every 2nd term
        assert list(s.coeffs) == [oracle[2 * i] for i in range(9)]


class TestWeighted:
    STEPS = [(1, 2, QQ(1, 3)), (1, -1, QQ(1, 6)), (1, -2, QQ(1, 2))]

    def test_probability_gf(self):
        p = validate(self.STEPS, "bounded-free", lower=-2, upper=3)
        gf = bounded_free_gf(p)
        expect = rf(
            [3 * 3888, 3 * 3888, 3 * -756, 3 * -972, 3 * -12, 3 * -1],
            [11664, 0, -7776, -432, 1296, 0, 1],
        )
        assert gf == expect

    def test_probability_series(self):
        p = validate(self.STEPS, "bounded-free", lower=-2, upper=3)
        s = series_of_ratfun(bounded_free_gf(p), 4)
        assert list(s.coeffs) == [1, 1, QQ(17, 36), QQ(49, 108), QQ(77, 324)]

    def test_probabilities_bounded_by_one(self):
        p = validate(self.STEPS, "bounded-free", lower=-2, upper=3)
        s = series_of_ratfun(bounded_free_gf(p), 12)
        assert all(0 <= c <= 1 for c in s.coeffs)


class TestSmallCases:
    def test_rightward_only(self):
        p = validate([(1, 0)], "bounded-free", lower=0, upper=0)
        assert bounded_free_gf(p) == rf([1], [1, -1])

    def test_no_legal_move(self):
        p = validate([(1, 1)], "bounded-free", lower=0, upper=0)
        assert bounded_free_gf(p) == rf([1], [1])

    def test_monotone_in_bounds(self):
        steps = [(1, 1), (1, -1), (1, 0)]
        prev = None
        for a in range(0, 4):
            p = validate(steps, "bounded-free", lower=-1, upper=a)
            s = series_of_ratfun(bounded_free_gf(p), 10).coeffs
            if prev is not None:
                assert all(x <= y for x, y in zip(prev, s))
            prev = s
        prev = None
        for b in range(0, 4):
            p = validate(steps, "bounded-free", lower=-b, upper=1)
            s = series_of_ratfun(bounded_free_gf(p), 10).coeffs
            if prev is not None:
                assert all(x <= y for x, y in zip(prev, s))
            prev = s

    @pytest.mark.parametrize("seed", range(10))
    def test_random_bounded_match_oracle(self, seed):
        from walkpoly.steps import random_step_set

        ss = random_step_set("generic", seed)
        p = validate(list(ss), "bounded-free", lower=-2, upper=2)
        s = series_of_ratfun(bounded_free_gf(p), 14)
        assert list(s.coeffs) == list(count_walks(p, 14).counts)
