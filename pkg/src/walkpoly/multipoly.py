"""Sparse multivariate polynomials over QQ.

A MultiPoly lives in a fixed ordered ring (tuple of variable names); terms
map exponent vectors to nonzero rationals.  The ring order doubles as the
lex priority used by elimination: earlier position = higher variable.
"""
from __future__ import annotations

from .errors import WalkPolyError
from .qnum import QQ, Q0, Q1, content, qq, qq_str
from .unipoly import PowerSeries, UniPoly


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = tuple(ring)
        clean = {}
        for e, c in (terms or {}).items():
            c = QQ(c)
            if c != 0:
                e = tuple(e)
                if len(e) != len(self.ring):
                    raise WalkPolyError("exponent vector has wrong length")
                clean[e] = clean.get(e, Q0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def const(cls, ring, c):
        c = QQ(c)
        if c == 0:
            return cls.zero(ring)
        return cls(ring, {tuple([0] * len(ring)): c})

    @classmethod
    def variable(cls, ring, name, power=1, coeff=1):
        idx = list(ring).index(name)
        e = [0] * len(ring)
        e[idx] = power
        return cls(ring, {tuple(e): QQ(coeff)})

    @classmethod
    def monomial(cls, ring, exps, coeff):
        return cls(ring, {tuple(exps): QQ(coeff)})

    # -- structure -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def idx(self, var):
        return self.ring.index(var)

    def degree(self, var):
        i = self.idx(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring[i])
        return used

    def nterms(self):
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise WalkPolyError("ring mismatch")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.ring, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Q0) + c
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = QQ(other)
            return MultiPoly(self.ring, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Q0) + c1 * c2
        return MultiPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MultiPoly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- ring plumbing ----------------------------------------------------------
    def extend(self, ring):
        """Reinterpret in a superset ring (variables matched by name)."""
        pos = {v: i for i, v in enumerate(ring)}
        mapping = [pos[v] for v in self.ring]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(ring)
            for i, k in enumerate(e):
                ne[mapping[i]] = k
            terms[tuple(ne)] = c
        return MultiPoly(ring, terms)

    def restrict(self, ring):
        """Drop unused variables; fails if a dropped variable occurs."""
        keep = set(ring)
        for v in self.variables_used():
            if v not in keep:
                raise WalkPolyError(f"variable {v} still present")
        return self.extend_into(ring)

    def extend_into(self, ring):
        pos = {v: i for i, v in enumerate(ring)}
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(ring)
            for i, k in enumerate(e):
                if k:
                    ne[pos[self.ring[i]]] = k
            terms[tuple(ne)] = c
        return MultiPoly(ring, terms)

    # -- univariate views ---------------------------------------------------------
    def coeffs_in(self, var):
        """Coefficients of var**0..var**d, each a MultiPoly free of var."""
        i = self.idx(var)
        d = self.degree(var)
        out = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[i]
            re = list(e)
            re[i] = 0
            out[k][tuple(re)] = c
        return [MultiPoly(self.ring, t) for t in out]

    def coeff_of(self, var, k):
        i = self.idx(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                re = list(e)
                re[i] = 0
                terms[tuple(re)] = c
        return MultiPoly(self.ring, terms)

    def leading_coeff(self, var):
        return self.coeff_of(var, self.degree(var))

    def from_coeffs_in(self, var, coeffs):
        i = self.idx(var)
        terms = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                ne = list(e)
                ne[i] += k
                ne = tuple(ne)
                terms[ne] = terms.get(ne, Q0) + c
        return MultiPoly(self.ring, terms)

    def derivative(self, var):
        i = self.idx(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.ring, terms)

    def to_unipoly(self, var):
        used = self.variables_used()
        if used - {var}:
            raise WalkPolyError(f"not univariate in {var}: uses {used}")
        i = self.idx(var)
        d = self.degree(var)
        coeffs = [Q0] * (d + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UniPoly(var, coeffs)

    # -- substitution & evaluation ---------------------------------------------------
    def substitute(self, var, value):
        """Replace var by a MultiPoly on the same ring."""
        i = self.idx(var)
        groups = {}
        for e, c in self.terms.items():
            k = e[i]
            re = list(e)
            re[i] = 0
            groups.setdefault(k, {})[tuple(re)] = c
        result = MultiPoly.zero(self.ring)
        powers = {0: MultiPoly.const(self.ring, 1)}
        maxk = max(groups) if groups else 0
        for k in range(1, maxk + 1):
            powers[k] = powers[k - 1] * value
        for k, terms in groups.items():
            result = result + MultiPoly(self.ring, terms) * powers[k]
        return result

    def eval_series(self, values, order, tvar="t"):
        """Evaluate with each non-t variable bound to a PowerSeries in t."""
        one = PowerSeries.const(1, order, tvar)
        ti = self.idx(tvar)
        cache = {}

        def power(name, k):
            key = (name, k)
            if key not in cache:
                if k == 0:
                    cache[key] = one
                else:
                    cache[key] = power(name, k - 1) * values[name]
            return cache[key]

        acc = PowerSeries.zero(order, tvar)
        for e, c in self.terms.items():
            if e[ti] > order:
                continue
            term = PowerSeries.const(c, order, tvar)
            for i, k in enumerate(e):
                if i == ti or k == 0:
                    continue
                term = term * power(self.ring[i], k)
            if e[ti]:
                shifted = [Q0] * (e[ti]) + list(term.coeffs[: order + 1 - e[ti]])
                term = PowerSeries(tvar, shifted)
            acc = acc + term
        return acc

    def compress_var(self, var, m):
        """Substitute var**m -> var; requires var-exponents divisible by m."""
        if m == 1:
            return self
        i = self.idx(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] % m != 0:
                raise WalkPolyError(f"{var}-support not divisible by {m}")
            ne = list(e)
            ne[i] //= m
            terms[tuple(ne)] = c
        return MultiPoly(self.ring, terms)

    def supports_compress(self, var, m):
        i = self.idx(var)
        return all(e[i] % m == 0 for e in self.terms)

    def rename(self, mapping):
        return MultiPoly([mapping.get(v, v) for v in self.ring], self.terms)

    # -- normalization -----------------------------------------------------------
    def normalized(self):
        """Integral primitive, sign fixed by the lex-greatest term among those
        of highest total degree being positive."""
        if not self.terms:
            return self
        c = content(self.terms.values())
        d = self.total_degree()
        lead = max(e for e in self.terms if sum(e) == d)
        if self.terms[lead] < 0:
            c = -c
        return MultiPoly(self.ring, {e: v / c for e, v in self.terms.items()})

    # -- display -------------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: ec[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.ring, e) if k
            )
            if not mon:
                parts.append(qq_str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{qq_str(c)}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


# -- division and resultants -------------------------------------------------


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact division a/b in the polynomial ring (raises if inexact)."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = a.ring
    quo = {}
    rem = dict(a.terms)
    blead = max(b.terms)
    blc = b.terms[blead]
    while rem:
        e = max(rem)
        c = rem[e]
        qe = tuple(x - y for x, y in zip(e, blead))
        if any(x < 0 for x in qe):
            raise WalkPolyError("inexact multivariate division")
        qc = c / blc
        quo[qe] = quo.get(qe, Q0) + qc
        for be, bc in b.terms.items():
            ne = tuple(x + y for x, y in zip(qe, be))
            nv = rem.get(ne, Q0) - qc * bc
            if nv == 0:
                rem.pop(ne, None)
            else:
                rem[ne] = nv
    return MultiPoly(ring, quo)


def pseudo_divmod(a: MultiPoly, b: MultiPoly, var: str):
    """Classical pseudo-division in var:

        lc(b)^(deg a - deg b + 1) * a  =  q*b + r,   deg_var(r) < deg_var(b).

    The exponent is exactly delta+1 (padded when leading terms cancel early),
    as the subresultant scheme requires for its exact divisions.
    """
    db = b.degree(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    da = a.degree(var)
    bc = b.coeffs_in(var)
    lcb = bc[-1]
    r = a.coeffs_in(var)
    q = [MultiPoly.zero(a.ring) for _ in range(max(0, len(r) - db))]
    steps = 0
    while len(r) - 1 >= db and any(not ci.is_zero() for ci in r):
        lead = r[-1]
        if lead.is_zero():
            r = r[:-1]
            continue
        shift = len(r) - 1 - db
        r = [ci * lcb for ci in r]
        q = [qi * lcb for qi in q]
        q[shift] = q[shift] + lead
        for i, bi in enumerate(bc):
            r[shift + i] = r[shift + i] - lead * bi
        r = r[:-1]
        steps += 1
    target = max(da - db + 1, 0)
    if steps < target:
        pad = lcb ** (target - steps)
        r = [ci * pad for ci in r]
        q = [qi * pad for qi in q]
    zero = MultiPoly.zero(a.ring)
    rem = zero.from_coeffs_in(var, r) if r else zero
    quo = zero.from_coeffs_in(var, q) if q else zero
    return quo, rem, max(steps, target)


def pseudo_rem(a, b, var):
    return pseudo_divmod(a, b, var)[1]


def poly_resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant w.r.t. var via the subresultant PRS (fraction-free).

    The result is free of var.  Raises if var occurs in neither input.
    """
    if p.ring != q.ring:
        q = q.extend_into(p.ring)
    dp, dq = p.degree(var), q.degree(var)
    if dp <= 0 and dq <= 0:
        raise WalkPolyError(f"resultant: {var} absent from both inputs")
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.ring)
    ring = p.ring
    one = MultiPoly.const(ring, 1)
    if dp < dq:
        res = poly_resultant(q, p, var)
        if (dp * dq) % 2:
            res = -res
        return res
    if dq == 0:
        # Res(p, c) = c**deg(p)
        return q ** max(dp, 0)
    a, b = p, q
    da, db = dp, dq
    g, h = one, one
    sign = 1
    while True:
        delta = da - db
        if (da % 2) and (db % 2):
            sign = -sign
        r = pseudo_rem(a, b, var)
        if r.is_zero():
            return MultiPoly.zero(ring)
        dr = r.degree(var)
        a, da = b, db
        divisor = g * h ** delta
        b = exact_div(r, divisor)
        db = dr
        g = a.leading_coeff(var)
        if delta >= 1:
            h = exact_div(g ** delta, h ** (delta - 1))
        if db == 0:
            lead = b  # degree-0 remainder: a poly free of var
            res = exact_div(lead ** da, h ** (da - 1)) if da >= 1 else one
            return res if sign == 1 else -res


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """Res_var(p, dp/dvar) / lc_var(p)."""
    dp = p.derivative(var)
    if dp.is_zero():
        return MultiPoly.zero(p.ring)
    res = poly_resultant(p, dp, var)
    return exact_div(res, p.leading_coeff(var))
