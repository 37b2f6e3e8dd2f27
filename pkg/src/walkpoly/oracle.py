"""Brute-force counting by dynamic programming over (length used, altitude).

This is the ground truth every generating-function route is checked against.
The DP walks forward: layer[u][alt] = weighted number of length-u prefixes
ending at altitude alt.  Vertical steps (dx = 0) stay inside a length layer;
a valid problem only carries verticals of one sign, so sweeping each layer
in the right altitude order keeps the in-layer recursion acyclic.

Altitude windows keep the tables finite: class bounds where present,
reachability from the start (climb/descent rate is finite whenever the
matching vertical direction is absent), and for returning walks the
requirement that the remaining length suffices to get back to the endpoint.
"""
from __future__ import annotations

from .errors import ResourceCapError, ValidationError
from .qnum import QQ, Q0, Q1
from .steps import CountTable, StepSet, WalkProblem

DEFAULT_CELL_CAP = 10 ** 8


def _floor(q):
    q = QQ(q)
    return q.numerator // q.denominator


def _ceil(q):
    q = QQ(q)
    return -((-q.numerator) // q.denominator)


def _windows(steps, N, start, end, lower, upper):
    """Per-layer altitude windows [lo(u), hi(u)] keeping every state that can
    still finish a valid walk of some length <= N (conservative)."""
    up_rate = max((QQ(s.dy, s.dx) for s in steps if s.dx > 0 and s.dy > 0), default=None)
    down_rate = max((QQ(-s.dy, s.dx) for s in steps if s.dx > 0 and s.dy < 0), default=None)
    has_vup = any(s.dx == 0 and s.dy > 0 for s in steps)
    has_vdown = any(s.dx == 0 and s.dy < 0 for s in steps)

    los, his = [], []
    for u in range(N + 1):
        rem = N - u
        hi_cand, lo_cand = [], []
        if upper is not None:
            hi_cand.append(upper)
        if lower is not None:
            lo_cand.append(lower)
        if not has_vup:  # ascent rate finite: reachability bound from above
            hi_cand.append(start + (_ceil(u * up_rate) if up_rate is not None else 0))
        if not has_vdown:
            lo_cand.append(start - (_ceil(u * down_rate) if down_rate is not None else 0))
        if end is not None:
            if has_vdown:
                pass  # free descent: no co-reachability bound from above
            elif down_rate is not None:
                hi_cand.append(_floor(end + rem * down_rate))
            else:  # walk can never descend
                hi_cand.append(end)
            if has_vup:
                pass
            elif up_rate is not None:
                lo_cand.append(_ceil(end - rem * up_rate))
            else:
                lo_cand.append(end)
        if not hi_cand or not lo_cand:
            raise ValidationError("cannot bound the altitude range; invalid problem")
        his.append(min(hi_cand))
        los.append(max(lo_cand))
    return los, his


def count_paths(
    steps,
    N,
    start=0,
    end=None,
    lower=None,
    upper=None,
    forbid_interior=None,
    cap=DEFAULT_CELL_CAP,
):
    """counts[n] = weighted number of length-n walks start->end (end=None: free).

    forbid_interior(alt) -> bool marks altitudes every point except the two
    endpoints must avoid.  Counts are exact rationals.
    """
    if isinstance(steps, StepSet):
        steps = list(steps)
    integer_weights = all(QQ(s.weight).denominator == 1 for s in steps)
    zero = 0 if integer_weights else Q0
    one = 1 if integer_weights else Q1
    wts = {s: (int(s.weight) if integer_weights else QQ(s.weight)) for s in steps}

    los, his = _windows(steps, N, start, end, lower, upper)
    verticals = [s for s in steps if s.dx == 0]
    horizontals = [s for s in steps if s.dx > 0]
    vsign = 1 if any(s.dy > 0 for s in verticals) else -1

    def blocked(alt):
        return forbid_interior is not None and forbid_interior(alt)

    layers = []
    counts = []
    updates = 0

    def finish(n):
        """Assemble counts[n] once layer n is complete."""
        layer = layers[n]
        if end is None:
            return sum(layer.values(), zero)
        if forbid_interior is None:
            return layer.get(end, zero)
        acc = one if (n == 0 and start == end) else zero
        for s in steps:
            pu = n - s.dx
            if pu < 0:
                continue
            src_layer = layers[pu]
            v = src_layer.get(end - s.dy)
            if v is not None:
                acc = acc + v * wts[s]
        return acc

    for u in range(N + 1):
        lo, hi = los[u], his[u]
        layer = {}
        if u == 0:
            if lo <= start <= hi:
                layer[start] = one
        else:
            for s in horizontals:
                pu = u - s.dx
                if pu < 0:
                    continue
                w = wts[s]
                for alt, v in layers[pu].items():
                    na = alt + s.dy
                    if lo <= na <= hi and not blocked(na):
                        layer[na] = layer.get(na, zero) + v * w
                updates += len(layers[pu])
        if verticals and layer:
            # single-sign verticals: sweep so sources are finished first
            sweep = range(lo, hi + 1) if vsign > 0 else range(hi, lo - 1, -1)
            for na in sweep:
                if blocked(na):
                    continue
                acc = layer.get(na, zero)
                hit = False
                for s in verticals:
                    v = layer.get(na - s.dy)
                    if v is not None:
                        acc = acc + v * wts[s]
                        hit = True
                        updates += 1
                if hit and acc != 0:
                    layer[na] = acc
        layers.append(layer)
        counts.append(finish(u))
        if updates > cap:
            raise ResourceCapError(
                f"cell-update cap {cap} exceeded at length {u}",
                partial=[QQ(c) for c in counts],
            )
    return [QQ(c) for c in counts]


def count_walks(problem: WalkProblem, N: int, cap=DEFAULT_CELL_CAP) -> CountTable:
    """Weighted walk counts for the problem's class, lengths 0..N."""
    cls = problem.walk_class
    end = 0 if cls in ("bounded-bridge", "excursion", "bridge") else None
    counts = count_paths(
        problem.steps,
        N,
        start=problem.start_altitude,
        end=end,
        lower=problem.lower,
        upper=problem.upper,
        cap=cap,
    )
    return CountTable(problem, tuple(counts))


def count_irreducible(problem: WalkProblem, N: int, start=0, end=0, cap=DEFAULT_CELL_CAP):
    """Walks start->end whose interior stays strictly above min(start, end).

    The stationary walk and single steps straight to the right are excluded
    when start == end (their interior is not above anything).
    """
    if problem.walk_class not in ("bounded-bridge", "excursion", "bridge"):
        raise ValidationError("irreducible counts need a returning class")
    floor_level = min(start, end)
    counts = count_paths(
        problem.steps,
        N,
        start=start,
        end=end,
        lower=problem.lower,
        upper=problem.upper,
        forbid_interior=lambda a: a <= floor_level,
        cap=cap,
    )
    if start == end:
        counts[0] = Q0  # stationary
        for s in problem.steps:
            if s.dy == 0 and 0 < s.dx <= N:
                counts[s.dx] -= QQ(s.weight)  # single rightward step
    return CountTable(problem, tuple(counts))


def count_axis_avoiding(steps, N, start, end=0, cap=DEFAULT_CELL_CAP):
    """Unbounded walks start->end that never touch altitude `end` in between
    (the h-walks of the bridge system: crossing by a jump is allowed).
    """
    counts = count_paths(
        steps,
        N,
        start=start,
        end=end,
        forbid_interior=lambda a: a == end,
        cap=cap,
    )
    if start == end:
        counts[0] = Q0
        for s in steps:
            if s.dy == 0 and 0 < s.dx <= N:
                counts[s.dx] -= QQ(s.weight)
    return counts
