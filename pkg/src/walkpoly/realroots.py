"""Exact real-root isolation by Sturm sequences and rational bisection.

Roots come back ascending, each with a rational isolating interval refined
below the requested decimal width, plus the multiplicity in the original
polynomial (read off the square-free decomposition).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import WalkPolyError
from .qnum import QQ, Q0, Q1, qq_str
from .unipoly import UniPoly


@dataclass(frozen=True)
class IsolatedRoot:
    approx: float
    lower: object  # QQ
    upper: object  # QQ
    multiplicity: int

    def as_strings(self):
        return qq_str(self.lower), qq_str(self.upper)


def squarefree_part(p: UniPoly) -> UniPoly:
    g = p.gcd(p.derivative())
    if g.degree <= 0:
        return p
    return p.exact_div(g)


def yun_decomposition(p: UniPoly):
    """[(factor, multiplicity)] with p = lc * prod factor_i^mult_i, factors squarefree."""
    out = []
    g = p.gcd(p.derivative())
    if g.degree == 0:
        return [(p * (Q1 / p.lc()), 1)]
    w = p.exact_div(g)
    y = p.derivative().exact_div(g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        f = w.gcd(z)
        if f.degree > 0:
            out.append((f, i))
        w = w.exact_div(f) if f.degree > 0 else w
        y = z.exact_div(f) if f.degree > 0 else z
        i += 1
    return out


def sturm_chain(p: UniPoly):
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return [q for q in chain if not q.is_zero()]


def _sign_changes(chain, x):
    signs = []
    for q in chain:
        v = q.eval(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            changes += 1
    return changes


def sturm_count(p: UniPoly, lo, hi) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi]."""
    chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def root_bound(p: UniPoly):
    """Cauchy bound: all real roots lie in (-B, B)."""
    lc = abs(p.lc())
    m = max((abs(c) for c in p.coeffs[:-1]), default=Q0)
    return Q1 + m / lc


def real_roots(p: UniPoly, precision: int = 12):
    """All distinct real roots with isolating intervals of width < 10^-precision.

    Degree-0 (and zero) input yields an empty list.
    """
    if p.is_zero() or p.degree <= 0:
        return []
    sf = squarefree_part(p)
    chain = sturm_chain(sf)
    bound = root_bound(sf)
    width_goal = QQ(1, 10 ** precision)

    intervals = []

    def isolate(lo, hi, nlo, nhi):
        count = nlo - nhi
        if count == 0:
            return
        if count == 1:
            intervals.append((lo, hi))
            return
        mid = (lo + hi) / 2
        while sf.eval(mid) == 0:
            # nudge the cut off of a root
            mid = (lo + mid) / 2
        nmid = _sign_changes(chain, mid)
        isolate(lo, mid, nlo, nmid)
        isolate(mid, hi, nmid, nhi)

    isolate(-bound, bound, _sign_changes(chain, -bound), _sign_changes(chain, bound))
    intervals.sort()

    factors = yun_decomposition(p)

    roots = []
    for lo, hi in intervals:
        # refine by bisection; exact hit on a root ends refinement early
        exact = None
        while hi - lo >= width_goal:
            mid = (lo + hi) / 2
            v = sf.eval(mid)
            if v == 0:
                exact = mid
                half = width_goal / 4
                lo, hi = mid - half, mid + half
                break
            if (sf.eval(lo) > 0) == (v > 0):
                lo = mid
            else:
                hi = mid
        point = exact if exact is not None else (lo + hi) / 2
        mult = 1
        for f, m in factors:
            flo, fhi = f.eval(lo), f.eval(hi)
            if flo == 0 or fhi == 0 or (flo > 0) != (fhi > 0):
                mult = m
                break
        roots.append(IsolatedRoot(float(QQ(point)), lo, hi, mult))
    return roots


def smallest_positive_real_root(p: UniPoly, precision: int = 12):
    """Smallest strictly positive real root, or None.

    A root exactly at 0 does not count as positive and is stripped first.
    """
    val = p.valuation
    if val is None:
        raise WalkPolyError("zero polynomial has no roots")
    if val > 0:
        p = UniPoly(p.var, p.coeffs[val:])
    sf = squarefree_part(p)
    for r in real_roots(p, precision):
        lo, hi = r.lower, r.upper
        if hi <= 0:
            continue
        # interval may straddle 0; p(0) != 0 so bisection separates it
        while lo < 0 < hi:
            mid = (lo + hi) / 2
            if sf.eval(mid) == 0:
                lo = hi = mid
                break
            if (sf.eval(lo) > 0) == (sf.eval(mid) > 0):
                lo = mid
            else:
                hi = mid
        if hi <= 0:
            continue
        if lo < 0:  # landed exactly on the root
            lo = hi
        return IsolatedRoot(float(QQ(lo + hi) / 2), lo, hi, r.multiplicity)
    return None
