import pytest

from walkpoly.errors import NonConvergingError, WalkPolyError
from walkpoly.multipoly import MultiPoly
from walkpoly.oracle import count_axis_avoiding, count_irreducible, count_paths, count_walks
from walkpoly.qnum import QQ
from walkpoly.series import iterate_minpoly_series, iterate_system_series
from walkpoly.steps import random_step_set, validate
from walkpoly.systems import (
    add_combination_target,
    build_bridge_system,
    build_excursion_system,
    build_meander_system,
    ensure_f_variables,
    free_unbounded_gf,
    fvar,
    kvar,
)
from walkpoly.unipoly import PowerSeries, UniPoly, series_of_ratfun

FIVE = [(1, -2), (1, -1), (1, 0), (1, 1), (1, 2)]


def _oracle_for_variable(name, problem, N):
    steps = problem.steps
    if name == "G":
        return count_walks(validate(list(steps), "bridge"), N).counts
    if name.startswith("k["):
        a = int(name[2:-1])
        mp = validate(list(steps), "meander", lower=0)
        return count_paths(steps, N, start=a, end=None, lower=0)
    if name.startswith("f["):
        a, b = map(int, name[2:-1].split(","))
        return count_paths(steps, N, start=a, end=b, lower=0)
    if name.startswith("g["):
        a, b = map(int, name[2:-1].split(","))
        ref = validate(list(steps), "excursion", lower=0)
        return count_irreducible(ref, N, start=a, end=b).counts
    if name.startswith("h["):
        j = int(name[2:-1])
        return count_axis_avoiding(steps, N, start=j, end=0)
    raise AssertionError(name)


class TestBuilders:
    def test_dyck_excursion_closure(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        sy = build_excursion_system(p)
        assert sy.check_closed()
        assert set(sy.equations) == {"f[0,0]", "g[0,0]"}

    def test_five_step_has_seven_variables(self):
        p = validate(FIVE, "excursion", lower=0)
        sy = build_excursion_system(p)
        assert len(sy.equations) == 7

    def test_no_returning_step(self):
        p = validate([(1, 1)], "excursion", lower=0)
        sy = build_excursion_system(p)
        sol = iterate_system_series(sy, 6)
        assert list(sol[sy.target].coeffs) == [1, 0, 0, 0, 0, 0, 0]

    def test_meander_no_ascending_step(self):
        p = validate([(1, -1)], "meander", lower=0)
        sy = build_meander_system(p)
        sol = iterate_system_series(sy, 5)
        assert list(sol[sy.target].coeffs) == [1, 0, 0, 0, 0, 0]

    def test_index_bound(self):
        p = validate(FIVE, "meander", lower=0)
        sy = build_meander_system(p)
        for name in sy.equations:
            if name.startswith(("f[", "g[")):
                a, b = map(int, name[2:-1].split(","))
                assert max(a, b) < 2  # max |dy| = 2

    def test_free_unbounded(self):
        assert free_unbounded_gf(validate([(1, 1), (1, -1)], "free-unbounded")) == \
            series_free([1], [1, -2])
        assert free_unbounded_gf(validate([(1, 0), (2, 0)], "free-unbounded")) == \
            series_free([1], [1, -1, -1])
        assert free_unbounded_gf(validate([(3, 5)], "free-unbounded")) == \
            series_free([1], [1, 0, 0, -1])


def series_free(num, den):
    from walkpoly.unipoly import RationalFunction

    return RationalFunction(UniPoly("t", num), UniPoly("t", den))


class TestIterateSystem:
    def test_dyck_series(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        sol = iterate_system_series(build_excursion_system(p), 6)
        assert list(sol[p and "f[0,0]"].coeffs) == [1, 0, 1, 0, 2, 0, 5]
        assert sol.converged

    def test_five_step_excursions_to_t10(self):
        p = validate(FIVE, "excursion", lower=0)
        sol = iterate_system_series(build_excursion_system(p), 10)
        assert list(sol["f[0,0]"].coeffs) == [
            1, 1, 3, 9, 32, 120, 473, 1925, 8034, 34188, 147787]

    def test_five_step_meanders_to_t10(self):
        p = validate(FIVE, "meander", lower=0)
        sol = iterate_system_series(build_meander_system(p), 10)
        assert list(sol["k[0]"].coeffs) == [
            1, 3, 12, 51, 226, 1025, 4724, 22022, 103550, 490191, 2333057]

    @pytest.mark.parametrize("cls,builder", [
        ("excursion", build_excursion_system),
        ("meander", build_meander_system),
        ("bridge", build_bridge_system),
    ])
    @pytest.mark.parametrize("seed", range(6))
    def test_all_variables_match_oracles(self, cls, builder, seed):
        kind = {"excursion": "semi-bounded", "meander": "semi-bounded", "bridge": "unbounded"}[cls]
        ss = random_step_set(kind, seed)
        try:
            p = validate(list(ss), cls, lower=0 if cls != "bridge" else None)
        except WalkPolyError:
            return
        sy = builder(p)
        N = 10
        sol = iterate_system_series(sy, N)
        for name in sy.equations:
            expect = _oracle_for_variable(name, p, N)
            assert list(sol[name].coeffs) == list(expect[: N + 1]), name

    def test_truncation_idempotence(self):
        p = validate(FIVE, "excursion", lower=0)
        sy = build_excursion_system(p)
        long = iterate_system_series(sy, 12)[sy.target]
        short = iterate_system_series(sy, 7)[sy.target]
        assert long.truncate(7) == short

    def test_sweep_progress(self):
        p = validate(FIVE, "excursion", lower=0)
        sy = build_excursion_system(p)
        trace = []
        iterate_system_series(sy, 10, trace=trace)
        oracle = count_walks(p, 10).counts
        for s, snapshot in enumerate(trace, start=1):
            good = min(s, 10)
            assert list(snapshot.coeffs[: good + 1]) == list(oracle[: good + 1])


class TestCombination:
    def test_fixture_series(self):
        p = validate([(0, -1), (1, 0), (1, 1), (1, 2)], "meander", lower=-3)
        sy = build_meander_system(p)
        sy = ensure_f_variables(sy, [(3, i) for i in range(5)])
        expr = {kvar(3): 1}
        expr.update({fvar(3, i): -1 for i in range(5)})
        sy = add_combination_target(sy, expr)
        sol = iterate_system_series(sy, 5)
        assert list(sol["L"].coeffs) == [0, 1, 21, 305, 4064, 52431]

    def test_identity_combination(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        sy = build_excursion_system(p)
        sy2 = add_combination_target(sy, {fvar(0, 0): 1})
        sol = iterate_system_series(sy2, 8)
        assert sol["L"] == sol["f[0,0]"]

    def test_linearity(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        sy = build_excursion_system(p)
        sy2 = add_combination_target(sy, {fvar(0, 0): 2})
        sol = iterate_system_series(sy2, 8)
        assert [2 * c for c in sol["f[0,0]"].coeffs] == list(sol["L"].coeffs)

    def test_unknown_variable(self):
        p = validate([(1, 1), (1, -1)], "excursion", lower=0)
        sy = build_excursion_system(p)
        with pytest.raises(WalkPolyError, match="unknown variable"):
            add_combination_target(sy, {"k[5]": 1})


def bivariate(terms, target="F"):
    return MultiPoly((target, "t"), terms)


class TestIterateMinpoly:
    def test_catalan(self):
        p = bivariate({(2, 1): 1, (1, 0): -1, (0, 0): 1})  # tF^2 - F + 1
        s = iterate_minpoly_series(p, 8)
        assert list(s.coeffs) == [1, 1, 2, 5, 14, 42, 132, 429, 1430]

    def test_bridge_cubic_with_linear_term(self):
        # (16t^3+8t^2+11t-4)G^3 + (3-2t)G + 1
        p = bivariate(
            {(3, 3): 16, (3, 2): 8, (3, 1): 11, (3, 0): -4, (1, 1): -2, (1, 0): 3, (0, 0): 1},
            target="G",
        )
        s = iterate_minpoly_series(p, 6)
        oracle = count_walks(validate([(1, -2), (1, -1), (1, 0), (1, 1)], "bridge"), 6).counts
        assert list(s.coeffs) == list(oracle)

    def test_missing_linear_term(self):
        p = bivariate({(2, 2): 4, (2, 0): -1, (0, 0): 1}, target="G")  # (4t^2-1)G^2+1
        with pytest.raises(WalkPolyError, match="requires linear term"):
            iterate_minpoly_series(p, 6)
