import pytest
from fractions import Fraction

from conftest import exhaustive_count
from walkpoly.errors import InfiniteFamilyError, ValidationError
from walkpoly.oracle import count_irreducible, count_paths, count_walks
from walkpoly.qnum import QQ
from walkpoly.steps import Step, StepSet, problem_from_json, random_step_set, validate


class TestValidate:
    def test_vertical_pair_narrow_ok(self):
        p = validate([(0, 2), (0, -3), (1, 0)], "bounded-free", lower=-3, upper=0)
        assert p.walk_class == "bounded-free"

    def test_vertical_pair_boundary_rejected(self):
        with pytest.raises(InfiniteFamilyError) as err:
            validate([(0, 2), (0, -3), (1, 0)], "bounded-free", lower=-4, upper=0)
        assert sum(err.value.witness) == 0  # a genuine zero-length loop

    @pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5)])
    def test_width_rule_matches_formula(self, m, n):
        # two opposite verticals are fine exactly when a-b < n+m-gcd(m,n)
        from math import gcd

        threshold = n + m - gcd(m, n)
        for width in range(1, threshold + 3):
            kwargs = dict(lower=-width, upper=0)
            if width < threshold:
                validate([(0, m), (0, -n), (1, 0)], "bounded-free", **kwargs)
            else:
                with pytest.raises(InfiniteFamilyError):
                    validate([(0, m), (0, -n), (1, 0)], "bounded-free", **kwargs)

    def test_meander_vertical_up_rejected(self):
        with pytest.raises(InfiniteFamilyError):
            validate([(0, 1)], "meander", lower=0)

    def test_meander_vertical_down_allowed(self):
        validate([(0, -1), (1, 1)], "meander", lower=0)

    def test_bridge_single_sign_vertical_allowed(self):
        p = validate([(1, -2), (3, 0), (0, 1), (2, 1), (2, -2)], "bridge")
        assert any("vertical" in w for w in p.warnings)

    def test_bridge_opposite_verticals_rejected(self):
        with pytest.raises(InfiniteFamilyError):
            validate([(0, 1), (0, -1), (1, 0)], "bridge")

    def test_free_unbounded_any_vertical_rejected(self):
        with pytest.raises(InfiniteFamilyError):
            validate([(0, -1), (1, 0)], "free-unbounded")

    def test_empty(self):
        with pytest.raises(ValidationError, match="empty"):
            validate([], "bridge")

    def test_duplicate(self):
        with pytest.raises(ValidationError, match="duplicate"):
            validate([(1, 1), (1, 1)], "bridge")

    def test_common_dy_factor_reported_not_applied(self):
        p = validate([(1, 2), (1, -4)], "excursion", lower=0)
        assert any("common factor 2" in w for w in p.warnings)
        assert p.steps.max_up() == 2  # unchanged
        assert p.suggested_reduction.steps.max_up() == 1

    def test_fractional_dx_prescaled(self):
        p = validate([(Fraction(1, 2), 1), (Fraction(1, 2), -1), (1, 2), (1, -2)],
                     "bounded-bridge", lower=0, upper=2)
        assert p.scale == 2
        assert sorted((s.dx, s.dy) for s in p.steps) == [(1, -1), (1, 1), (2, -2), (2, 2)]

    def test_json_roundtrip(self):
        p = problem_from_json(
            '{"steps":[{"dx":1,"dy":-2,"weight":"1/2"}],"class":"excursion","lower":0}'
        )
        assert p.steps.steps[0].weight == QQ(1, 2)
        assert p.describe()["class"] == "excursion"


class TestCountWalks:
    def test_dyck_excursions(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        assert list(count_walks(p, 6).counts) == [1, 0, 1, 0, 2, 0, 5]

    def test_five_step_excursions(self):
        p = validate([(1, -2), (1, -1), (1, 0), (1, 1), (1, 2)], "excursion", lower=0)
        assert list(count_walks(p, 6).counts) == [1, 1, 3, 9, 32, 120, 473]

    def test_five_step_meanders(self):
        p = validate([(1, -2), (1, -1), (1, 0), (1, 1), (1, 2)], "meander", lower=0)
        assert list(count_walks(p, 4).counts) == [1, 3, 12, 51, 226]

    @pytest.mark.parametrize("cls,kw", [
        ("excursion", {"lower": 0}),
        ("meander", {"lower": -1}),
        ("bridge", {}),
        ("bounded-free", {"lower": -2, "upper": 2}),
        ("bounded-bridge", {"lower": -1, "upper": 2}),
        ("free-unbounded", {}),
    ])
    def test_against_exhaustive_enumeration(self, cls, kw):
        steps = [(1, 1), (1, -1), (2, 0), (1, -2)]
        p = validate(steps, cls, **kw)
        end = 0 if cls in ("bounded-bridge", "excursion", "bridge") else None
        expect = exhaustive_count(
            p.steps, 7, end=end, lower=p.lower, upper=p.upper
        )
        assert list(count_walks(p, 7).counts) == expect

    def test_weighted_matches_unweighted(self):
        plain = validate([(1, 1), (1, -1)], "excursion", lower=0)
        weighted = validate([(1, 1, 1), (1, -1, 1)], "excursion", lower=0)
        assert count_walks(plain, 10).counts == count_walks(weighted, 10).counts

    def test_vertical_step_excursions(self):
        p = validate([(0, -3), (1, -2), (2, 0), (3, 1)], "excursion", lower=-1)
        counts = count_walks(p, 8).counts
        assert counts[0] == 1 and all(c >= 0 for c in counts)


class TestCountIrreducible:
    def test_dyck_arches(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        assert list(count_irreducible(p, 4).counts) == [0, 0, 1, 0, 1]

    def test_rightward_excluded(self):
        p = validate([(1, 0)], "excursion", lower=0)
        assert list(count_irreducible(p, 3).counts) == [0, 0, 0, 0]

    def test_up2_down1(self):
        p = validate([(1, 2), (1, -1)], "excursion", lower=0)
        assert list(count_irreducible(p, 3).counts) == [0, 0, 0, 1]


class TestInvariants:
    @pytest.mark.parametrize("seed", range(12))
    def test_reversal_bijection(self, seed):
        ss = random_step_set("zero-returning", seed)
        p = validate(list(ss), "excursion", lower=0)
        flipped = [Step(s.dx, -s.dy, s.weight) for s in ss]
        q = validate(flipped, "excursion", lower=0)
        assert count_walks(p, 9).counts == count_walks(q, 9).counts

    @pytest.mark.parametrize("seed", range(12))
    def test_monotonicity(self, seed):
        ss = random_step_set("zero-returning", seed)
        exc = count_walks(validate(list(ss), "excursion", lower=0), 9).counts
        bri = count_walks(validate(list(ss), "bridge"), 9).counts
        assert all(e <= b for e, b in zip(exc, bri))
        try:
            mp = validate(list(ss), "meander", lower=0)
        except InfiniteFamilyError:
            return  # a (0,+) step: no finite meander family to compare
        mea = count_walks(mp, 9).counts
        assert all(e <= m for e, m in zip(exc, mea))

    @pytest.mark.parametrize("seed", range(8))
    def test_bounded_symmetry(self, seed):
        ss = random_step_set("generic", seed)
        a, b = 2, -3
        p = validate(list(ss), "bounded-free", lower=b, upper=a)
        flipped = [Step(s.dx, -s.dy, s.weight) for s in ss]
        q = validate(flipped, "bounded-free", lower=-a, upper=-b)
        assert count_walks(p, 8).counts == count_walks(q, 8).counts

    def test_stationary_count(self):
        for cls, kw in [("excursion", {"lower": 0}), ("bridge", {}), ("meander", {"lower": 0})]:
            p = validate([(1, 1), (1, -1)], cls, **kw)
            assert count_walks(p, 3).counts[0] == 1


class TestRandomStepSets:
    def test_deterministic(self):
        assert random_step_set("generic", 7) == random_step_set("generic", 7)

    def test_unbounded_has_no_verticals(self):
        for seed in range(20):
            ss = random_step_set("unbounded", seed)
            assert all(s.dx > 0 for s in ss)

    def test_zero_returning_has_both_signs(self):
        for seed in range(20):
            ss = random_step_set("zero-returning", seed)
            dys = [s.dy for s in ss]
            assert any(d > 0 for d in dys) and any(d < 0 for d in dys)
