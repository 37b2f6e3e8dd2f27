"""Minimal polynomials: Groebner elimination cross-checked by guessing.

The elimination route substitutes away every variable whose defining
equation does not mention itself (an exact elimination step for systems in
solved form), then runs Buchberger under pure lex with all remaining
non-target variables ranked above the target above t.  The output may be a
proper multiple of the minimal polynomial, so it is always parsed through
find_proper_root: guess the lowest-degree annihilator from series data,
verify it to the certificate order, and check that it pseudo-divides the
eliminated polynomial.

No multivariate factorization anywhere: minimality comes from the
guess-then-divide loop.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BudgetExceededError, InsufficientDataError, WalkPolyError
from .multipoly import MultiPoly, exact_div, poly_resultant, pseudo_rem
from .qnum import QQ, Q0, Q1, qq, qq_str
from .steps import WalkProblem
from .systems import (
    GfSystem,
    build_bridge_system,
    build_excursion_system,
    build_meander_system,
)
from .unipoly import PowerSeries, UniPoly

DEFAULT_SPAIR_BUDGET = 10 ** 5
DEFAULT_MONOMIAL_BUDGET = 10 ** 7

TARGET_LETTER = {"excursion": "F", "meander": "K", "bridge": "G"}


# -- Buchberger ------------------------------------------------------------------


def _lm(p: MultiPoly):
    return max(p.terms)


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _lcm_exp(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _normal_form(p, basis, lms, budget):
    ring = p.ring
    terms = dict(p.terms)
    out = {}
    while terms:
        e = max(terms)
        c = terms.pop(e)
        if c == 0:
            continue
        reducer = None
        for i, le in enumerate(lms):
            if _divides(le, e):
                reducer = i
                break
        if reducer is None:
            out[e] = c
            continue
        b = basis[reducer]
        lb = lms[reducer]
        cb = b.terms[lb]
        shift = tuple(a - x for a, x in zip(e, lb))
        factor = c / cb
        for be, bc in b.terms.items():
            if be == lb:
                continue
            ne = tuple(a + x for a, x in zip(shift, be))
            nv = terms.get(ne, Q0) - factor * bc
            if nv == 0:
                terms.pop(ne, None)
            else:
                terms[ne] = nv
        budget["monomials"] -= len(b.terms)
        if budget["monomials"] < 0:
            raise BudgetExceededError(
                "elimination budget exceeded (monomials)", basis_size=len(basis)
            )
    return MultiPoly(ring, out).normalized()


def buchberger(polys, budget_spairs=DEFAULT_SPAIR_BUDGET, budget_monomials=DEFAULT_MONOMIAL_BUDGET):
    """Groebner basis for the lex order given by the shared ring order.

    Degree-ordered pair queue with the product (coprimality) and chain
    criteria; reductions are by the full current basis.
    """
    budget = {"monomials": budget_monomials}
    basis = []
    lms = []
    for p in polys:
        if p.is_zero():
            continue
        q = _normal_form(p, basis, lms, budget)
        if not q.is_zero():
            basis.append(q)
            lms.append(_lm(q))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0

    def pair_key(ij):
        i, j = ij
        l = _lcm_exp(lms[i], lms[j])
        return (sum(l), l)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        processed += 1
        if processed > budget_spairs:
            raise BudgetExceededError(
                "elimination budget exceeded (S-pairs)", basis_size=len(basis)
            )
        li, lj = lms[i], lms[j]
        l = _lcm_exp(li, lj)
        # product criterion
        if all(a + b == c for a, b, c in zip(li, lj, l)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if _divides(lms[k], l):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 not in pairs and p2 not in pairs:
                    skip = True
                    break
        if skip:
            continue
        fi, fj = basis[i], basis[j]
        ci, cj = fi.terms[li], fj.terms[lj]
        sh_i = tuple(a - b for a, b in zip(l, li))
        sh_j = tuple(a - b for a, b in zip(l, lj))
        spoly_terms = {}
        for e, c in fi.terms.items():
            ne = tuple(a + b for a, b in zip(e, sh_i))
            spoly_terms[ne] = spoly_terms.get(ne, Q0) + c / ci
        for e, c in fj.terms.items():
            ne = tuple(a + b for a, b in zip(e, sh_j))
            spoly_terms[ne] = spoly_terms.get(ne, Q0) - c / cj
        s = MultiPoly(basis[0].ring, spoly_terms)
        r = _normal_form(s, basis, lms, budget)
        if r.is_zero():
            continue
        basis.append(r)
        lms.append(_lm(r))
        new = len(basis) - 1
        for k in range(new):
            pairs.add((k, new))
    return basis


# -- solved-form substitution ------------------------------------------------------


def substitute_solved(system: GfSystem):
    """Eliminate every variable whose defining rhs does not mention itself.

    Pure substitution; the elimination ideal in the surviving variables is
    unchanged.  Returns (polys, survivors): polynomials var - rhs for the
    self-referential equations only.
    """
    eqs = {v: rhs for v, rhs in system.equations.items()}
    target = system.target
    while True:
        candidates = [
            v for v, rhs in eqs.items() if v != target and v not in rhs.variables_used()
        ]
        if not candidates:
            break
        v = min(candidates, key=lambda name: (eqs[name].nterms(), name))
        value = eqs.pop(v)
        eqs = {w: rhs.substitute(v, value) for w, rhs in eqs.items()}
    ring = system.ring
    polys = [MultiPoly.variable(ring, v) - rhs for v, rhs in eqs.items()]
    return polys, sorted(eqs.keys())


def _resultant_chain(polys, target):
    """Eliminate every non-target variable by iterated subresultants.

    Resultants are polynomial combinations of their inputs, so everything
    produced stays in the ideal and vanishes on the system's series
    solution.  Degenerate (zero) resultants from shared factors are simply
    dropped: any surviving pair still reaches the target.  Returns the best
    polynomial in {target, t}, or None (caller falls back to Buchberger).
    """
    from itertools import combinations

    current = [p for p in polys if not p.is_zero()]
    while True:
        vars_left = set()
        for p in current:
            vars_left |= p.variables_used()
        vars_left -= {target, "t"}
        if not vars_left:
            break

        # cheapest variable first: low degree, few polynomials involved
        def cost(v):
            with_v = [p for p in current if v in p.variables_used()]
            return (min(p.degree(v) for p in with_v), len(with_v), v)

        v = min(vars_left, key=cost)
        with_v = [p for p in current if v in p.variables_used()]
        rest = [p for p in current if v not in p.variables_used()]
        new = []
        if len(with_v) == 2:
            pairs = [tuple(with_v)]
        else:
            elim = min(with_v, key=lambda p: (p.degree(v), p.nterms()))
            pairs = [(elim, q) for q in with_v if q is not elim]
            pairs += [
                (a, b) for a, b in combinations(with_v, 2) if a is not elim and b is not elim
            ]
        seen = set()
        for a, b in pairs:
            r = poly_resultant(a, b, v)
            if r.is_zero():
                continue
            r = r.normalized()
            key = tuple(sorted(r.terms.items()))
            if key not in seen:
                seen.add(key)
                new.append(r)
        if not new and with_v and len(with_v) > 1:
            return None  # every pairing degenerated
        # keep the set small; always keep polynomials that mention the target
        new.sort(key=lambda p: p.nterms())
        keep = [p for p in new if target in p.variables_used()]
        keep += [p for p in new if target not in p.variables_used()][:6]
        current = rest + keep
        if not current:
            return None
    allowed = {target, "t"}
    candidates = [p for p in current if p.variables_used() <= allowed and not p.is_zero()]
    candidates = [p for p in candidates if p.degree(target) >= 1]
    if not candidates:
        return None
    return min(candidates, key=lambda p: (p.degree(target), p.degree("t"), p.nterms()))


def groebner_eliminate(
    system: GfSystem,
    target=None,
    budget_spairs=DEFAULT_SPAIR_BUDGET,
    budget_monomials=DEFAULT_MONOMIAL_BUDGET,
) -> MultiPoly:
    """A nonzero polynomial in {t, target} lying in the system's ideal.

    Solved-form substitution eliminates most variables exactly; the few
    self-referential survivors go through a subresultant chain, with a full
    lex Buchberger run as the fallback when a resultant degenerates.  The
    output may be a proper multiple of the minimal polynomial; callers pass
    it through find_proper_root.
    """
    target = target or system.target
    system.check_closed()
    polys, survivors = substitute_solved(system)
    polys = [p.normalized() for p in polys if not p.is_zero()]
    best = _resultant_chain(polys, target)
    if best is None:
        basis = buchberger(polys, budget_spairs, budget_monomials)
        allowed = {target, "t"}
        candidates = [p for p in basis if p.variables_used() <= allowed]
        if not candidates:
            raise WalkPolyError("elimination produced no polynomial in the target alone")
        best = min(candidates, key=lambda p: (p.degree(target), p.degree("t"), p.nterms()))
    return best.normalized()


# -- guessing ---------------------------------------------------------------------


def _nullspace_vector(rows, ncols):
    """One nonzero rational solution of rows . x = 0, or None (full rank).

    Gauss-Jordan over QQ; deterministic: first free column set to 1.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    x = [Q0] * ncols
    x[fc] = Q1
    for c, pr in pivots.items():
        x[c] = -m[pr][fc]
    return x


def _support_gcd(coeffs):
    g = 0
    for i, c in enumerate(coeffs):
        if i and c != 0:
            g = gcd(g, i)
    return g or 1


def guess_algebraic(series, dF_max: int, dt_max: int, target="F"):
    """Lowest-(dF, then dt) polynomial with sum c_ij t^j F^i = 0 to the full
    series order; None when nothing fits within the bounds.

    Exact nullspace computation.  The series support period is compressed
    away internally and restored in the exponents, so sparse supports (walks
    of length 0 mod m) stay cheap.  Raises InsufficientDataError when the
    series is too short for the requested bounds.
    """
    coeffs = list(series.coeffs) if isinstance(series, PowerSeries) else [qq(c) for c in series]
    period = _support_gcd(coeffs)
    compressed = coeffs[::period] if period > 1 else coeffs
    scaled_dt = -(-dt_max // period)
    order = len(compressed) - 1
    need = (dF_max + 1) * (scaled_dt + 1) + 10
    if order + 1 < need:
        raise InsufficientDataError(
            f"insufficient series length: need order {need * period}",
            required=need * period,
        )
    powers = [[Q1] + [Q0] * order, list(compressed)]

    def power(i):
        while len(powers) <= i:
            prev = powers[-1]
            nxt = [Q0] * (order + 1)
            for a, pa in enumerate(prev):
                if pa == 0:
                    continue
                for b in range(order + 1 - a):
                    cb = compressed[b]
                    if cb != 0:
                        nxt[a + b] += pa * cb
            powers.append(nxt)
        return powers[i]

    for dF in range(1, dF_max + 1):
        power(dF)
        for dt in range(0, scaled_dt + 1):
            ncols = (dF + 1) * (dt + 1)
            if order + 1 < ncols + 1:
                continue

            def row(n):
                out = []
                for i in range(dF + 1):
                    pi = powers[i]
                    for j in range(dt + 1):
                        out.append(pi[n - j] if n >= j else Q0)
                return out

            window = min(order + 1, ncols + 15)
            x = _nullspace_vector([row(n) for n in range(window)], ncols)
            if x is None:
                continue
            ok = True
            for n in range(window, order + 1):
                acc = Q0
                idx = 0
                for i in range(dF + 1):
                    pi = powers[i]
                    for j in range(dt + 1):
                        if x[idx] != 0 and n >= j:
                            acc += x[idx] * pi[n - j]
                        idx += 1
                if acc != 0:
                    ok = False
                    break
            if not ok:
                # window nullspace may be wider than the true one: solve in full
                x = _nullspace_vector([row(n) for n in range(order + 1)], ncols)
                if x is None:
                    continue
            ring = (target, "t")
            terms = {}
            idx = 0
            for i in range(dF + 1):
                for j in range(dt + 1):
                    if x[idx] != 0:
                        terms[(i, j * period)] = x[idx]
                    idx += 1
            cand = MultiPoly(ring, terms).normalized()
            if cand.degree(target) >= 1:
                return cand
    return None


# -- certification -----------------------------------------------------------------


@dataclass
class MinimalPolynomial:
    poly: MultiPoly  # ring (target, "t")
    target: str
    certified_order: int
    source: str  # groebner | guessed | both-agree
    divides_gb: object = None  # bool, or None when no elimination output exists

    @property
    def deg_target(self):
        return self.poly.degree(self.target)

    @property
    def deg_t(self):
        return self.poly.degree("t")

    def to_json(self):
        terms = [
            {"c": qq_str(c), "t": e[self.poly.idx("t")], "v": e[self.poly.idx(self.target)]}
            for e, c in self.poly.sorted_terms()
        ]
        return {
            "target": self.target,
            "terms": terms,
            "certified_order": self.certified_order,
            "source": self.source,
            "divides_gb": self.divides_gb,
        }

    @classmethod
    def from_json(cls, obj):
        ring = (obj["target"], "t")
        terms = {(int(tm["v"]), int(tm["t"])): qq(tm["c"]) for tm in obj["terms"]}
        return cls(
            MultiPoly(ring, terms),
            obj["target"],
            int(obj["certified_order"]),
            obj["source"],
            obj.get("divides_gb"),
        )


def certificate_order(poly: MultiPoly, target: str) -> int:
    """Series order a candidate must annihilate to count as verified."""
    return 2 * poly.degree(target) * max(poly.degree("t"), 1) + 20


def annihilates(poly: MultiPoly, target: str, series: PowerSeries, order=None) -> bool:
    """p(t, F) = 0 mod t^(order+1)?  Verified in support-compressed form."""
    order = series.order if order is None else min(order, series.order)
    data = list(series.coeffs[: order + 1])
    ti = poly.idx("t")
    g = 0
    for e in poly.terms:
        g = gcd(g, e[ti])
    g = gcd(g or 1, _support_gcd(data))
    if g > 1:
        if any(c != 0 for i, c in enumerate(data) if i % g):
            g = 1
    if g > 1:
        cpoly = poly.compress_var("t", g)
        cseries = PowerSeries(series.var, data[::g])
        check = cpoly.eval_series({target: cseries}, len(cseries.coeffs) - 1)
    else:
        check = poly.eval_series({target: PowerSeries(series.var, data)}, order)
    return all(c == 0 for c in check.coeffs)


def pseudo_divides(candidate: MultiPoly, divisor: MultiPoly, var: str) -> bool:
    """True when pseudo-division of candidate by divisor in var leaves 0."""
    if divisor.degree(var) > candidate.degree(var):
        return False
    d = divisor.extend_into(candidate.ring)
    return pseudo_rem(candidate, d, var).is_zero()


def find_proper_root(
    candidate: MultiPoly, series, target=None, series_provider=None
) -> MinimalPolynomial:
    """The minimal annihilator hidden inside an elimination output.

    Guesses ascending degrees; a guess wins when it annihilates the series
    to its certificate order and pseudo-divides the candidate exactly.  The
    candidate itself wins when no smaller annihilator exists and it
    annihilates.  series_provider(order) -> PowerSeries extends data on
    demand; without one the given series must be long enough.
    """
    if candidate.is_zero():
        raise WalkPolyError("zero candidate cannot annihilate")
    if target is None:
        target = [v for v in candidate.ring if v != "t"][0]
    cand = candidate.extend_into((target, "t")).normalized()
    cand = _strip_t_content(cand, target)
    dFc, dTc = cand.degree(target), cand.degree("t")
    if dFc < 1:
        raise WalkPolyError("candidate does not involve the target")

    if series_provider is None:
        fixed = series
        series_provider = lambda n: fixed.truncate(n) if n <= fixed.order else fixed
    current = series

    def get(order):
        nonlocal current
        if current.order < order:
            current = series_provider(order)
        return current

    ti = cand.idx("t")
    period = 0
    for e in cand.terms:
        period = gcd(period, e[ti])
    period = gcd(period or 1, _support_gcd(get(40).coeffs)) or 1

    def needed(dF, dt):
        return period * ((dF + 1) * (-(-dt // period) + 1) + 12)

    def attempt(dF, dt):
        """Verified hit => it IS the minimal polynomial (Gauss: a primitive
        annihilator dominates the primitive minimal in both degrees, so the
        ascending search inside guess_algebraic meets the minimal first)."""
        try:
            s = get(needed(dF, dt))
            guess = guess_algebraic(s, dF, dt, target=target)
        except InsufficientDataError:
            return None
        if guess is None:
            return None
        M = certificate_order(guess, target)
        s = get(M)
        if s.order >= M and annihilates(guess, target, s, M) and pseudo_divides(
            cand, guess, target
        ):
            return MinimalPolynomial(guess, target, M, "both-agree", True)
        return None

    # tight pass: square-ish ansatz, doubled until the candidate bounds
    dF = 2
    while True:
        dF = min(dF, dFc)
        hit = attempt(dF, min(dTc, max(6, 2 * dF)))
        if hit is not None:
            return hit
        if dF == dFc:
            break
        dF *= 2
    # full-width pass at the candidate bounds
    hit = attempt(dFc, dTc)
    if hit is not None:
        return hit

    M = certificate_order(cand, target)
    s = get(M)
    if annihilates(cand, target, s, min(M, s.order)):
        return MinimalPolynomial(cand, target, min(M, s.order), "groebner", True)
    raise WalkPolyError("no annihilating factor (upstream bug?)")


def _strip_t_content(poly: MultiPoly, target: str) -> MultiPoly:
    """Divide out any common QQ[t] factor of the target-coefficients.

    c(t)*q(t,F) annihilates a series exactly when q does, so a t-only
    content in an elimination output is always spurious.
    """
    coeffs = [c.to_unipoly("t") for c in poly.coeffs_in(target)]
    g = UniPoly.zero("t")
    for c in coeffs:
        if not c.is_zero():
            g = g.gcd(c) if not g.is_zero() else c
    if g.degree <= 0 and (g.valuation or 0) == 0:
        return poly
    ring = poly.ring
    out = MultiPoly.zero(ring)
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        q = c.exact_div(g)
        for i, qc in enumerate(q.coeffs):
            if qc != 0:
                e = [0] * len(ring)
                e[ring.index(target)] = k
                e[ring.index("t")] = i
                out = out + MultiPoly.monomial(ring, e, qc)
    return out.normalized()


def minpoly_compress_support(mp: MinimalPolynomial) -> MinimalPolynomial:
    """Substitute t^g -> t for the gcd g of the t-support (display form)."""
    poly = mp.poly
    g = 0
    ti = poly.idx("t")
    for e in poly.terms:
        g = gcd(g, e[ti])
    g = g or 1
    if g == 1:
        return mp
    return MinimalPolynomial(
        poly.compress_var("t", g), mp.target, mp.certified_order // g, mp.source, mp.divides_gb
    )


# -- orchestration -----------------------------------------------------------------


def build_system(problem: WalkProblem) -> GfSystem:
    cls = problem.walk_class
    if cls == "excursion":
        return build_excursion_system(problem)
    if cls == "meander":
        return build_meander_system(problem)
    if cls == "bridge":
        return build_bridge_system(problem)
    raise WalkPolyError(f"no relation system for class {cls}")


def minimal_polynomial(
    problem: WalkProblem,
    budget_spairs=DEFAULT_SPAIR_BUDGET,
    budget_monomials=DEFAULT_MONOMIAL_BUDGET,
    compress="auto",
    series_provider=None,
) -> MinimalPolynomial:
    """Verified minimal polynomial for an excursion/meander/bridge g.f.

    Builds the relation system, eliminates to the target, reconciles with a
    guessed annihilator (find_proper_root), and certifies by series
    annihilation against the brute-force counts.  compress: "auto"
    substitutes back a fractional-dx pre-scaling; "support" additionally
    divides the gcd of the t-support out (the compact display form).
    """
    cls = problem.walk_class
    system = build_system(problem)
    letter = TARGET_LETTER[cls]

    if series_provider is None:
        from .oracle import count_walks

        series_provider = lambda n: PowerSeries("t", count_walks(problem, n).counts)

    mp = None
    try:
        eliminated = groebner_eliminate(
            system, budget_spairs=budget_spairs, budget_monomials=budget_monomials
        )
        eliminated = eliminated.rename({system.target: letter}).extend_into((letter, "t"))
    except BudgetExceededError:
        eliminated = None

    if eliminated is not None:
        seed = series_provider(40)
        mp = find_proper_root(eliminated, seed, target=letter, series_provider=series_provider)
    else:
        for dF in (2, 4, 8, 16, 24):
            need = (dF + 1) * (dF + 1) + 12
            series = series_provider(need)
            guess = guess_algebraic(series, dF, dF, target=letter)
            if guess is not None:
                M = certificate_order(guess, letter)
                series = series_provider(max(M, series.order))
                if annihilates(guess, letter, series, M):
                    mp = MinimalPolynomial(guess, letter, M, "guessed", None)
                    break
        if mp is None:
            raise BudgetExceededError("elimination budget exceeded and guessing failed")

    if problem.scale > 1 and mp.poly.supports_compress("t", problem.scale):
        mp = MinimalPolynomial(
            mp.poly.compress_var("t", problem.scale),
            letter,
            mp.certified_order // problem.scale,
            mp.source,
            mp.divides_gb,
        )
    if compress == "support":
        mp = minpoly_compress_support(mp)
    return mp
