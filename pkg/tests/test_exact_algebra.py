import pytest
from hypothesis import given, settings, strategies as st

from walkpoly.errors import WalkPolyError
from walkpoly.multipoly import MultiPoly, discriminant, exact_div, poly_resultant
from walkpoly.qnum import QQ, qq, qq_str
from walkpoly.realroots import real_roots, smallest_positive_real_root, sturm_chain
from walkpoly.unipoly import (
    PowerSeries,
    RationalFunction,
    UniPoly,
    ratfun_normalize,
    series_of_ratfun,
)

small_rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=7
).map(lambda f: QQ(f.numerator, f.denominator))


def poly_strategy(var="t", max_deg=6):
    return st.lists(small_rationals, min_size=0, max_size=max_deg + 1).map(
        lambda cs: UniPoly(var, cs)
    )


class TestRationalFunction:
    def test_common_factor(self):
        rf = ratfun_normalize(UniPoly("t", [-1, 0, 1]), UniPoly("t", [-1, 1]))
        assert rf == RationalFunction(UniPoly("t", [1, 1]), UniPoly("t", [1]))

    def test_zero_case(self):
        rf = ratfun_normalize(UniPoly.zero("t"), UniPoly("t", [0, 7]))
        assert rf.num.is_zero() and rf.den == UniPoly.one("t")

    def test_content_reduction(self):
        rf = ratfun_normalize(UniPoly("t", [2, 2]), UniPoly("t", [4]))
        assert rf.num == UniPoly("t", [1, 1])
        assert rf.den == UniPoly("t", [2])

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            ratfun_normalize(UniPoly.one("t"), UniPoly.zero("t"))


class TestSeriesOfRatfun:
    def test_geometric(self):
        rf = RationalFunction(UniPoly.one("t"), UniPoly("t", [1, -1]))
        assert list(series_of_ratfun(rf, 4).coeffs) == [1, 1, 1, 1, 1]

    def test_long_division_fixture(self):
        rf = RationalFunction(UniPoly("t", [1, -1]), UniPoly("t", [1, -2, 3]))
        assert [int(c) for c in series_of_ratfun(rf, 4).coeffs] == [1, 1, -1, -5, -7]

    def test_constant(self):
        rf = RationalFunction(UniPoly.one("t"))
        assert list(series_of_ratfun(rf, 2).coeffs) == [1, 0, 0]

    def test_pole_at_origin(self):
        bad = RationalFunction(UniPoly.one("t"), UniPoly("t", [0, 1]))
        with pytest.raises(WalkPolyError, match="pole"):
            series_of_ratfun(bad, 3)

    @given(poly_strategy(max_deg=4), poly_strategy(max_deg=4))
    @settings(max_examples=60, deadline=None)
    def test_defining_identity(self, num, den):
        if den.is_zero() or den.eval(QQ(0)) == 0:
            return
        rf = RationalFunction(num, den)
        N = 12
        s = series_of_ratfun(rf, N)
        prod = [QQ(0)] * (N + 1)
        for i in range(min(rf.den.degree, N) + 1):
            for j in range(N + 1 - i):
                prod[i + j] += rf.den[i] * s.coeffs[j]
        for n in range(N + 1):
            assert prod[n] == rf.num[n]

    @given(poly_strategy(max_deg=4), poly_strategy(max_deg=4), st.integers(2, 10))
    @settings(max_examples=40, deadline=None)
    def test_truncation_consistency(self, num, den, M):
        if den.is_zero() or den.eval(QQ(0)) == 0:
            return
        rf = RationalFunction(num, den)
        assert series_of_ratfun(rf, 12).truncate(M) == series_of_ratfun(rf, M)


class TestPolynomialAlgebra:
    @given(poly_strategy(), poly_strategy(), poly_strategy())
    @settings(max_examples=50, deadline=None)
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    @given(poly_strategy(max_deg=5), poly_strategy(max_deg=3))
    @settings(max_examples=40, deadline=None)
    def test_divmod_identity(self, a, b):
        if b.is_zero():
            return
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


class TestResultant:
    def ring(self, *names):
        return tuple(names)

    def sylvester_2x2(self, p, q, var):
        """2x2 Sylvester determinant oracle for deg(p) = 2, deg(q) = 1:
        the resultant equals q1^2*p(-q0/q1) up to that clearing."""
        pc = p.coeffs_in(var)
        qc = q.coeffs_in(var)
        # Res(a F^2 + b F + c, d F + e) = a e^2 - b d e + c d^2
        a, b, c = pc[2], pc[1], pc[0]
        d, e = qc[1], qc[0]
        return a * e * e - b * d * e + c * d * d

    def test_quadratic_vs_sylvester(self):
        ring = ("F", "t")
        p = MultiPoly(ring, {(2, 0): 1, (0, 1): -1})  # F^2 - t
        q = MultiPoly(ring, {(1, 0): 2})  # 2F
        res = poly_resultant(p, q, "F")
        oracle = self.sylvester_2x2(p, q, "F")
        assert res == oracle or res == -oracle
        assert res == MultiPoly(ring, {(0, 1): -4}) or res == MultiPoly(ring, {(0, 1): 4})

    def test_common_root(self):
        ring = ("F", "t")
        p = MultiPoly(ring, {(1, 0): 1, (0, 1): -1})  # F - t
        assert poly_resultant(p, p, "F").is_zero()

    def test_linear_case(self):
        ring = ("F", "a", "b", "c", "d")
        a = MultiPoly.variable(ring, "a")
        b = MultiPoly.variable(ring, "b")
        c = MultiPoly.variable(ring, "c")
        d = MultiPoly.variable(ring, "d")
        F = MultiPoly.variable(ring, "F")
        res = poly_resultant(a * F + b, c * F + d, "F")
        expect = a * d - b * c
        assert res == expect or res == -expect

    @given(
        st.lists(st.integers(-4, 4), min_size=2, max_size=4),
        st.lists(st.integers(-4, 4), min_size=2, max_size=4),
    )
    @settings(max_examples=40, deadline=None)
    def test_resultant_root_product(self, ac, bc):
        # Res vanishes iff the two univariate polynomials share a root (gcd test)
        pa = UniPoly("z", ac)
        pb = UniPoly("z", bc)
        if pa.degree < 1 or pb.degree < 1:
            return
        ring = ("z",)
        ma = MultiPoly(ring, {(i,): c for i, c in enumerate(pa.coeffs)})
        mb = MultiPoly(ring, {(i,): c for i, c in enumerate(pb.coeffs)})
        res = poly_resultant(ma, mb, "z")
        shares = pa.gcd(pb).degree > 0
        assert res.is_zero() == shares

    def test_var_absent(self):
        ring = ("F", "t")
        p = MultiPoly.const(ring, 3)
        with pytest.raises(WalkPolyError):
            poly_resultant(p, p, "F")


class TestRealRoots:
    def test_linear(self):
        roots = real_roots(UniPoly("z", [-1, 4]))
        assert len(roots) == 1
        assert abs(roots[0].approx - 0.25) < 1e-9

    def test_cubic_smallest_positive(self):
        p = UniPoly("z", [-4, 12, -12, 31])
        r = smallest_positive_real_root(p, 8)
        assert abs(r.approx - 0.34603456) < 1e-6

    def test_no_real_roots(self):
        assert real_roots(UniPoly("z", [1, 0, 1])) == []

    def test_multiplicity(self):
        # (z-1)^2 (z+2)
        p = UniPoly("z", [1]) * UniPoly("z", [-1, 1]) * UniPoly("z", [-1, 1]) * UniPoly("z", [2, 1])
        roots = real_roots(p)
        assert [r.multiplicity for r in roots] == [1, 2]

    @given(st.lists(st.integers(-6, 6), min_size=2, max_size=6))
    @settings(max_examples=60, deadline=None)
    def test_isolation_invariants(self, coeffs):
        p = UniPoly("z", coeffs)
        if p.is_zero() or p.degree < 1:
            return
        roots = real_roots(p, 6)
        from walkpoly.realroots import squarefree_part, sturm_count, root_bound

        sf = squarefree_part(p)
        # sign change (or exact hit) on each interval, disjointness, Sturm count
        for r in roots:
            lo, hi = r.lower, r.upper
            vlo, vhi = sf.eval(lo), sf.eval(hi)
            assert vlo == 0 or vhi == 0 or (vlo > 0) != (vhi > 0)
        for r1, r2 in zip(roots, roots[1:]):
            assert r1.upper <= r2.lower
        b = root_bound(sf)
        assert sturm_count(sf, -b, b) == len(roots)


class TestMultiPolyOps:
    def test_exact_div(self):
        ring = ("x", "y")
        x = MultiPoly.variable(ring, "x")
        y = MultiPoly.variable(ring, "y")
        p = (x + y) * (x - y)
        assert exact_div(p, x + y) == x - y

    def test_discriminant_quadratic(self):
        ring = ("F", "t")
        F = MultiPoly.variable(ring, "F")
        t = MultiPoly.variable(ring, "t")
        p = t * F * F - F + MultiPoly.const(ring, 1)
        disc = discriminant(p, "F")
        # b^2 - 4ac = 1 - 4t
        expect = MultiPoly.const(ring, 1) - t * 4
        assert disc == expect or disc == -expect

    def test_series_evaluation(self):
        ring = ("F", "t")
        F = MultiPoly.variable(ring, "F")
        t = MultiPoly.variable(ring, "t")
        p = t * F * F - F + MultiPoly.const(ring, 1)
        catalan = PowerSeries("t", [1, 1, 2, 5, 14, 42, 132, 429])
        out = p.eval_series({"F": catalan}, 7)
        assert all(c == 0 for c in out.coeffs)
