"""Coefficient extraction by fixed-point iteration.

Whole systems iterate Jacobi-style from the seed (walks that can be
stationary start at 1, everything else at 0) until a sweep changes nothing
mod t^(N+1).  Single minimal polynomials iterate through the shifted
contraction E -> -(p0 + sum_{i>=2} c_i E^i)/c1 after peeling off the
constant term of the root; this needs a linear term whose coefficient has a
nonzero constant, otherwise the caller is pointed at the system iterator.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NonConvergingError, WalkPolyError
from .multipoly import MultiPoly
from .qnum import QQ, Q0, Q1
from .systems import GfSystem
from .unipoly import PowerSeries, UniPoly


@dataclass
class SeriesSolution:
    series: dict  # variable -> PowerSeries
    sweeps: int
    converged: bool

    def __getitem__(self, name):
        return self.series[name]


def _seed(system: GfSystem, order):
    out = {}
    for name in system.equations:
        if name == "G" or name.startswith("k[") or (
            name.startswith("f[") and _same_indices(name)
        ):
            out[name] = PowerSeries.const(1, order)
        else:
            out[name] = PowerSeries.zero(order)
    return out


def _same_indices(fname):
    a, b = fname[2:-1].split(",")
    return a == b


def iterate_system_series(system: GfSystem, order: int, trace=None) -> SeriesSolution:
    """Vector fixed point of the defining equations mod t^(order+1).

    trace, when given a list, receives the target series after every sweep.
    """
    system.check_closed()
    values = _seed(system, order)
    cap = order + len(system.equations) + 5
    changed = None
    for sweep in range(1, cap + 1):
        changed = None
        # in-place updates: new coefficients propagate through the whole
        # dependency chain within a single sweep
        for name, rhs in system.equations.items():
            nv = rhs.eval_series(values, order)
            if changed is None and nv.coeffs != values[name].coeffs:
                changed = name
            values[name] = nv
        if trace is not None:
            trace.append(values[system.target])
        if changed is None:
            return SeriesSolution(values, sweep, True)
    raise NonConvergingError(
        f"non-converging iteration after {cap} sweeps", variable=changed
    )


def series_of_target(system: GfSystem, order: int) -> PowerSeries:
    return iterate_system_series(system, order)[system.target]


def _poly_coeffs_in_target(p: MultiPoly, target: str):
    """[c_0(t), ..., c_d(t)] as UniPoly coefficients of target powers."""
    out = []
    for cp in p.coeffs_in(target):
        out.append(cp.to_unipoly("t"))
    return out


def minpoly_constant_root(p: MultiPoly, target: str):
    """Rational constant term candidates for the series root of p(t, F) = 0.

    Prefers 1, then 0, then any simple rational root of p(0, F).
    """
    coeffs = _poly_coeffs_in_target(p, target)
    p0 = UniPoly("F", [c.eval(Q0) for c in coeffs])
    if p0.is_zero():
        return Q1  # any constant works at order 0; pick the counting default
    dp0 = p0.derivative()
    for cand in (Q1, Q0):
        if p0.eval(cand) == 0 and dp0.eval(cand) != 0:
            return cand
    # rational root scan on the integer-primitive version
    c, prim = p0.primitive()
    a0 = prim.coeffs[0].numerator if prim.coeffs else 0
    an = prim.lc().numerator
    for pnum in _divisors(a0):
        for pden in _divisors(an):
            for sign in (1, -1):
                cand = QQ(sign * pnum, pden)
                if p0.eval(cand) == 0 and dp0.eval(cand) != 0:
                    return cand
    raise WalkPolyError("no simple rational constant root; cannot iterate")


def _divisors(n):
    n = abs(int(n))
    if n == 0:
        return [0]
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def iterate_minpoly_series(p, order: int, target=None) -> PowerSeries:
    """Series root of a single polynomial p(t, F) = 0 to the given order.

    Requires a linear term in the target whose coefficient has nonzero
    constant term (otherwise: "requires linear term", use the system
    iterator).  Convergence is watched mechanically: a sweep that fixes no
    new coefficient aborts with "non-contracting".
    """
    poly = getattr(p, "poly", p)
    if target is None:
        target = getattr(p, "target", None)
        if target is None:
            target = [v for v in poly.ring if v != "t"][0]
    coeffs = _poly_coeffs_in_target(poly, target)
    if len(coeffs) < 2 or coeffs[1].eval(Q0) == 0:
        raise WalkPolyError(
            "requires linear term: no target-degree-1 term with nonzero constant; "
            "use iterate_system_series instead"
        )
    c0 = minpoly_constant_root(poly, target)
    # shift F = c0 + E, collect q(E) = p(t, c0 + E); E has valuation >= 1
    d = len(coeffs) - 1
    from math import comb

    shifted = [UniPoly.zero("t") for _ in range(d + 1)]
    for i, ci in enumerate(coeffs):
        for j in range(i + 1):
            shifted[j] = shifted[j] + ci * (comb(i, j) * c0 ** (i - j))
    c1 = shifted[1]
    if c1.eval(Q0) == 0:
        raise WalkPolyError("non-contracting: constant root is not simple")
    inv_c1 = _series_inverse(c1, order)
    e = PowerSeries.zero(order)
    prev_agree = -1
    for _ in range(order + 2):
        rhs = _poly_series(shifted[0], order)
        for i in range(2, d + 1):
            if shifted[i].is_zero():
                continue
            rhs = rhs + _poly_series(shifted[i], order) * _series_pow(e, i, order)
        nxt = -1 * (rhs * inv_c1)
        agree = nxt.agreement_order(e)
        if agree >= order:
            e = nxt
            break
        if agree <= prev_agree:
            raise WalkPolyError("non-contracting iteration; use iterate_system_series")
        prev_agree = agree
        e = nxt
    out = [c0 + e.coeffs[0]] + list(e.coeffs[1:])
    result = PowerSeries("t", out)
    # final check: p(t, F) must vanish mod t^(order+1)
    check = poly.eval_series({target: result}, order)
    if any(c != 0 for c in check.coeffs):
        raise WalkPolyError("iteration did not reach a root; non-contracting")
    return result


def _poly_series(p: UniPoly, order):
    return PowerSeries("t", [p[i] for i in range(order + 1)])


def _series_pow(s: PowerSeries, k, order):
    acc = PowerSeries.const(1, order)
    base = s
    while k:
        if k & 1:
            acc = acc * base
        base = base * base
        k >>= 1
    return acc


def _series_inverse(p: UniPoly, order):
    if p.eval(Q0) == 0:
        raise ZeroDivisionError("series inverse needs nonzero constant term")
    inv = [Q1 / p[0]]
    for n in range(1, order + 1):
        acc = Q0
        for k in range(1, min(n, p.degree) + 1):
            acc += p[k] * inv[n - k]
        inv.append(-acc / p[0])
    return PowerSeries("t", inv)
