"""P-recursive recurrences for coefficient sequences.

alg_to_rec follows the classical route: make p squarefree in the target,
represent F', F'', ... in Q(t)[F]/(p) (F' = -p_t/p_F reduced mod p, the
inverse by the extended Euclidean algorithm), find the first Q(t)-linear
dependence among the derivatives (the constant 1 may participate; one more
differentiation then homogenizes), and translate the differential equation
term by term: a*t^a*(d/dt)^b picks up falling factorials,

    [t^n] t^a F^(b) = (n-a+b)! / (n-a)! * B(n-a+b).

guess_rec fits an ansatz of polynomial coefficients by exact nullspace and
keeps at least ten held-out terms as an overdetermined check.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InsufficientDataError,
    LeadingCoefficientSingularity,
    WalkPolyError,
)
from .multipoly import MultiPoly
from .qnum import QQ, Q0, Q1, content, qq, qq_str
from .unipoly import RationalFunction, UniPoly


@dataclass
class Recurrence:
    """sum_i coeffs[i](n) * B(n+i) = 0 with coeffs[order] != 0."""

    coeffs: tuple  # UniPoly in n, length order+1
    origin: str = "converted"

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        return self.coeffs == other.coeffs

    def apply(self, terms, n):
        acc = Q0
        for i, c in enumerate(self.coeffs):
            acc += c.eval(QQ(n)) * terms[n + i]
        return acc

    def annihilates(self, terms):
        r = self.order
        return all(self.apply(terms, n) == 0 for n in range(len(terms) - r))

    def to_json(self):
        return {
            "order": self.order,
            "coeffs": [[qq_str(c) for c in p.coeffs] for p in self.coeffs],
            "origin": self.origin,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(UniPoly("n", [qq(c) for c in row]) for row in obj["coeffs"]),
            obj.get("origin", "converted"),
        )

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(f"({c})*B(n+{i})" if i else f"({c})*B(n)")
        return " + ".join(parts) + " = 0"


def _normalize_recurrence(coeff_polys, origin):
    """Trim zero ends, divide by full content (integer and polynomial),
    and fix the sign so the top coefficient has a positive leading term."""
    polys = list(coeff_polys)
    while polys and polys[-1].is_zero():
        polys.pop()
    lead_trim = 0
    while polys and polys[0].is_zero():
        polys.pop(0)
        lead_trim += 1
    if lead_trim:
        # re-index B(n+lead_trim) -> B(n): substitute n -> n + lead_trim
        polys = [_shift_poly(p, lead_trim) for p in polys]
    if not polys:
        raise WalkPolyError("trivial recurrence")
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else _poly_gcd(g, p)
    if g is not None and g.degree > 0:
        polys = [p.exact_div(g) for p in polys]
    c = content([x for p in polys for x in p.coeffs])
    if polys[-1].lc() < 0:
        c = -c
    polys = [p * (Q1 / c) for p in polys]
    return Recurrence(tuple(polys), origin)


def _shift_poly(p: UniPoly, k):
    """p(n + k)."""
    from math import comb

    out = UniPoly.zero(p.var)
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        row = UniPoly(p.var, [c * comb(i, j) * QQ(k) ** (i - j) for j in range(i + 1)])
        out = out + row
    return out


def _poly_gcd(a: UniPoly, b: UniPoly):
    g = a.gcd(b)
    return g


# -- conversion -----------------------------------------------------------------


def _squarefree_in_target(p: MultiPoly, target: str) -> MultiPoly:
    """p / gcd(p, dp/dF) via monic Euclid over Q(t), then cleared/primitive."""
    coeffs = [RationalFunction(c.to_unipoly("t")) for c in p.coeffs_in(target)]
    dcoeffs = [c * QQ(i) for i, c in enumerate(coeffs)][1:]
    g = _ratpoly_gcd(coeffs, dcoeffs)
    if len(g) <= 1:
        return p
    q, r = _ratpoly_divmod(coeffs, g)
    if any(not c.is_zero() for c in r):
        raise WalkPolyError("squarefree reduction failed")
    return _ratpoly_to_multipoly(q, p.ring, target).normalized()


def _ratpoly_trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _ratpoly_divmod(a, b):
    a = list(a)
    b = list(b)
    _ratpoly_trim(a)
    _ratpoly_trim(b)
    if not b:
        raise ZeroDivisionError
    q = [RationalFunction.zero() for _ in range(max(0, len(a) - len(b) + 1))]
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = q[shift] + f
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - f * bc
        a.pop()
        _ratpoly_trim(a)
    return q, a


def _ratpoly_gcd(a, b):
    a = _ratpoly_trim(list(a))
    b = _ratpoly_trim(list(b))
    while b:
        _, r = _ratpoly_divmod(a, b)
        a, b = b, _ratpoly_trim(r)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _ratpoly_to_multipoly(coeffs, ring, target):
    """Clear denominators of a Q(t)-coefficient polynomial in target."""
    dens = UniPoly.one("t")
    for c in coeffs:
        dens = dens.exact_div(dens.gcd(c.den)) * c.den
    out = MultiPoly.zero(ring)
    ti = list(ring).index("t")
    fi = list(ring).index(target)
    for k, c in enumerate(coeffs):
        num = c.num * dens.exact_div(c.den)
        for i, v in enumerate(num.coeffs):
            if v != 0:
                e = [0] * len(ring)
                e[ti] = i
                e[fi] = k
                out = out + MultiPoly.monomial(ring, e, v)
    return out


class _QuotientAlgebra:
    """Q(t)[F]/(p) with elements as Q(t)-coefficient vectors of length d."""

    def __init__(self, p: MultiPoly, target: str):
        self.target = target
        self.pcoeffs = [RationalFunction(c.to_unipoly("t")) for c in p.coeffs_in(target)]
        self.d = len(self.pcoeffs) - 1
        if self.d < 1:
            raise WalkPolyError("polynomial does not involve the target")

    def reduce(self, vec):
        """Reduce a coefficient list mod p."""
        vec = list(vec)
        while len(vec) > self.d:
            lead = vec.pop()
            if lead.is_zero():
                continue
            f = lead / self.pcoeffs[-1]
            shift = len(vec) - self.d
            for i in range(self.d):
                vec[shift + i] = vec[shift + i] - f * self.pcoeffs[i]
        while len(vec) < self.d:
            vec.append(RationalFunction.zero())
        return vec

    def mul(self, u, v):
        out = [RationalFunction.zero() for _ in range(len(u) + len(v) - 1)]
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self.reduce(out)

    def inverse(self, u):
        """Extended Euclid in Q(t)[F] against p."""
        r0 = list(self.pcoeffs)
        r1 = self.reduce(list(u))
        s0 = [RationalFunction.zero()]
        s1 = [RationalFunction.one()]
        while True:
            r1 = _ratpoly_trim(list(r1))
            if not r1:
                raise ZeroDivisionError("element not invertible mod p")
            if len(r1) == 1:
                inv = r1[0].inverse()
                return self.reduce([c * inv for c in s1])
            q, r = _ratpoly_divmod(r0, r1)
            s2 = list(s0)
            while len(s2) < len(q) + len(s1):
                s2.append(RationalFunction.zero())
            for i, qc in enumerate(q):
                if qc.is_zero():
                    continue
                for j, sc in enumerate(s1):
                    s2[i + j] = s2[i + j] - qc * sc
            r0, r1 = r1, r
            s0, s1 = s1, _ratpoly_trim(s2)

    def derivative_of_F(self):
        """F' = -p_t / p_F mod p."""
        # d/dt of sum c_k(t) F^k with F treated as a constant
        pt = [_rf_derivative(c) for c in self.pcoeffs]
        pF = [c * QQ(k) for k, c in enumerate(self.pcoeffs)][1:]
        inv = self.inverse(pF)
        num = self.reduce(pt)
        minus = [RationalFunction.zero() - c for c in num]
        return self.mul(minus, inv)

    def differentiate(self, vec, fprime):
        """d/dt of sum a_k F^k = sum a_k' F^k + (sum k a_k F^(k-1)) F'."""
        part1 = [_rf_derivative(a) for a in vec]
        part2 = [vec[k] * QQ(k) for k in range(1, len(vec))]
        if part2:
            part2 = self.mul(part2, fprime)
        else:
            part2 = [RationalFunction.zero()] * self.d
        out = [RationalFunction.zero()] * max(len(part1), len(part2))
        for i, a in enumerate(part1):
            out[i] = out[i] + a
        for i, a in enumerate(part2):
            out[i] = out[i] + a
        return self.reduce(out)


def _rf_derivative(rf: RationalFunction):
    num = rf.num.derivative() * rf.den - rf.num * rf.den.derivative()
    return RationalFunction(num, rf.den * rf.den)


def _dependence(vectors, field_dim):
    """First left-nullspace vector of the stacked Q(t) row vectors, or None."""
    rows = [list(v) for v in vectors]
    ncols = field_dim
    nrows = len(rows)
    # Gauss on the transpose: find c with sum c_i rows[i] = 0
    m = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    pivots = {}
    r = 0
    for c in range(nrows):
        pr = None
        for i in range(r, ncols):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(ncols):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(nrows) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    x = [RationalFunction.zero()] * nrows
    x[fc] = RationalFunction.one()
    for c, pr in pivots.items():
        x[c] = RationalFunction.zero() - m[pr][fc]
    return x


def _ode_from_dependence(relation, with_constant):
    """Clear denominators; returns list of UniPoly in t: c_b(t), b = 0..order,
    plus the inhomogeneous constant term (UniPoly) when present."""
    dens = UniPoly.one("t")
    for c in relation:
        dens = dens.exact_div(dens.gcd(c.den)) * c.den
    cleared = [c.num * dens.exact_div(c.den) for c in relation]
    if with_constant:
        const, cs = cleared[0], cleared[1:]
    else:
        const, cs = UniPoly.zero("t"), cleared
    g = None
    for p in cs + [const]:
        if p.is_zero():
            continue
        g = p if g is None else g.gcd(p)
    if g is not None and g.degree > 0:
        cs = [p.exact_div(g) for p in cs]
        const = const.exact_div(g) if not const.is_zero() else const
    return const, cs


def _homogenize(const: UniPoly, cs):
    """From gamma(t) + sum c_b F^(b) = 0 build the homogeneous ODE obtained by
    one differentiation and elimination of the constant part."""
    j = len(cs) - 1
    # derivative relation: gamma' + sum_b (c_b' + c_{b-1}) F^(b),  b = 0..j+1
    deriv = []
    for b in range(j + 2):
        term = UniPoly.zero("t")
        if b <= j:
            term = term + cs[b].derivative()
        if b >= 1:
            term = term + cs[b - 1]
        deriv.append(term)
    if const.is_zero():
        out = deriv
    else:
        gprime = const.derivative()
        padded = list(cs) + [UniPoly.zero("t")]
        out = [const * db - gprime * cb for db, cb in zip(deriv, padded)]
    g = None
    for pcl in out:
        if pcl.is_zero():
            continue
        g = pcl if g is None else g.gcd(pcl)
    if g is not None and g.degree > 0:
        out = [pcl.exact_div(g) if not pcl.is_zero() else pcl for pcl in out]
    return out


def alg_to_rec(p, target=None) -> Recurrence:
    """Linear recurrence with polynomial coefficients for the series root of p.

    p may be a MinimalPolynomial or a raw MultiPoly in (target, t).
    """
    poly = getattr(p, "poly", p)
    if target is None:
        target = getattr(p, "target", None) or [v for v in poly.ring if v != "t"][0]
    poly = _squarefree_in_target(poly, target)
    alg = _QuotientAlgebra(poly, target)
    d = alg.d
    fprime = alg.derivative_of_F()
    one_vec = [RationalFunction.one()] + [RationalFunction.zero()] * (d - 1)
    f_vec = alg.reduce([RationalFunction.zero(), RationalFunction.one()])
    derivs = [f_vec]
    # j = 0: F rational iff {1, F} dependent
    rel = _dependence([one_vec] + derivs, d)
    if rel is not None:
        const, cs = _ode_from_dependence(rel, with_constant=True)
        return _translate_ode(_homogenize(const, cs))
    for j in range(1, d + 2):
        derivs.append(alg.differentiate(derivs[-1], fprime))
        rel = _dependence(derivs, d)
        if rel is not None:
            _, cs = _ode_from_dependence(rel, with_constant=False)
            return _translate_ode(cs)
        rel = _dependence([one_vec] + derivs, d)
        if rel is not None:
            const, cs = _ode_from_dependence(rel, with_constant=True)
            return _translate_ode(_homogenize(const, cs))
    raise WalkPolyError("no linear dependence up to the algebra dimension (bug)")


def _translate_ode(cs) -> Recurrence:
    """term c*t^a*F^(b) contributes c*ff(n-a+b, b)*B(n-a+b)."""
    shifts = {}
    for b, poly in enumerate(cs):
        for a, c in enumerate(poly.coeffs):
            if c == 0:
                continue
            s = b - a
            # ff(n+s, b) as a polynomial in n
            ff = UniPoly.one("n")
            for i in range(b):
                ff = ff * UniPoly("n", [QQ(s - i), Q1])
            shifts[s] = shifts.get(s, UniPoly.zero("n")) + ff * c
    smin = min(shifts)
    smax = max(shifts)
    polys = []
    for s in range(smin, smax + 1):
        poly = shifts.get(s, UniPoly.zero("n"))
        polys.append(_shift_poly(poly, -smin))
    return _normalize_recurrence(polys, "converted")


# -- guessing --------------------------------------------------------------------


def guess_rec(terms, max_order: int, max_degree: int, search="order-first"):
    """Minimal (order, then degree) recurrence annihilating the terms, or None.

    Exact nullspace on a leading window; the last >= 10 rows are held out
    and must also be annihilated.  search="degree-first" swaps the loops.
    """
    terms = [qq(x) for x in terms]
    need = (max_order + 1) * (max_degree + 1) + max_order + 10
    if len(terms) < need:
        raise InsufficientDataError(
            f"insufficient data: need {need} terms", required=need
        )
    if search == "order-first":
        grid = [(r, dmax) for r in range(0, max_order + 1) for dmax in range(0, max_degree + 1)]
    else:
        grid = [(r, dmax) for dmax in range(0, max_degree + 1) for r in range(0, max_order + 1)]
    from .eliminate import _nullspace_vector

    for r, dmax in grid:
        ncols = (r + 1) * (dmax + 1)
        navail = len(terms) - r
        fit_rows = navail - 10  # hold out the last ten windows
        if fit_rows < ncols + 1:
            continue

        def row(n):
            out = []
            for i in range(r + 1):
                v = terms[n + i]
                for dd in range(dmax + 1):
                    out.append(v * QQ(n) ** dd)
            return out

        x = _nullspace_vector([row(n) for n in range(fit_rows)], ncols)
        if x is None:
            continue
        polys = []
        for i in range(r + 1):
            polys.append(UniPoly("n", x[i * (dmax + 1) : (i + 1) * (dmax + 1)]))
        if polys[-1].is_zero():
            continue
        try:
            rec = _normalize_recurrence(polys, "guessed")
        except WalkPolyError:
            continue
        if rec.annihilates(terms):
            return rec
    return None


def unroll_rec(rec: Recurrence, initial, N: int):
    """Terms 0..N extending the initial segment under the recurrence."""
    r = rec.order
    if len(initial) < r:
        raise WalkPolyError(f"need at least {r} initial terms")
    out = [qq(x) for x in initial]
    cr = rec.coeffs[-1]
    while len(out) <= N:
        n = len(out) - r
        lead = cr.eval(QQ(n))
        if lead == 0:
            raise LeadingCoefficientSingularity(
                f"leading-coefficient singularity at n={n}", n=n
            )
        acc = Q0
        for i in range(r):
            acc += rec.coeffs[i].eval(QQ(n)) * out[n + i]
        out.append(-acc / lead)
    return out[: N + 1]
