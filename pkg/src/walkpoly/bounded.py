"""Exact rational generating functions for walks bounded above and below.

Free-endpoint walks satisfy f_{a,b} = 1 + sum_steps w*t^dx*f_{a-dy,b-dy}
with out-of-range f set to 0: a linear system over QQ[t] along the single
diagonal a-b = const.  Bridges use the first-return variables e_c (walks
from altitude c back to 0 that avoid 0 in between), whose system is linear
as well, after which the bridge g.f. is a single division.

Linear solves are fraction-free (Bareiss) on polynomial numerators; the one
normalization to a reduced RationalFunction happens at the end.
"""
from __future__ import annotations

from .errors import ValidationError, WalkPolyError
from .qnum import QQ, Q0, Q1
from .steps import WalkProblem
from .unipoly import RationalFunction, UniPoly


def _bareiss_solve(A, b):
    """Solve A x = b exactly over QQ[t], A nonsingular; returns RationalFunctions.

    Pivoting prefers the candidate whose numerator has the lowest trailing
    degree (ties broken by column order) to keep intermediate degrees small.
    """
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    var = None
    for row in M:
        for p in row:
            var = p.var
            break
        break
    one = UniPoly.one(var)
    prev = one
    perm = list(range(n))
    for k in range(n):
        pivot = None
        best = None
        for r in range(k, n):
            p = M[r][k]
            if p.is_zero():
                continue
            key = (p.valuation, p.degree, r)
            if best is None or key < best:
                best, pivot = key, r
        if pivot is None:
            raise WalkPolyError("singular bounded system")
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
        for r in range(k + 1, n):
            for c in range(k + 1, n + 1):
                M[r][c] = (M[k][k] * M[r][c] - M[r][k] * M[k][c]).exact_div(prev)
            M[r][k] = UniPoly.zero(var)
        prev = M[k][k]
    # back-substitution over the fraction field
    xs = [None] * n
    for i in range(n - 1, -1, -1):
        acc = RationalFunction(M[i][n])
        for j in range(i + 1, n):
            acc = acc - RationalFunction(M[i][j]) * xs[j]
        xs[i] = acc / RationalFunction(M[i][i])
    return xs


def _step_poly(s):
    return UniPoly.monomial(QQ(s.weight), s.dx, "t")


def _maybe_compress(rf: RationalFunction, scale: int):
    """Report in the original variable when fractional dx was pre-scaled and
    the support allows substituting back."""
    if scale > 1 and rf.supports_compress(scale):
        return rf.compress(scale)
    return rf


def bounded_free_gf(problem: WalkProblem) -> RationalFunction:
    """Exact g.f. for walks inside [lower, upper] with free endpoint."""
    if problem.walk_class != "bounded-free":
        raise ValidationError("bounded_free_gf needs a bounded-free problem")
    a, b = problem.upper, problem.lower
    W = a - b
    zero = UniPoly.zero("t")
    one = UniPoly.one("t")
    # unknown m = 0..W stands for f with upper room m (i.e. f_{m, m-W})
    A = [[zero for _ in range(W + 1)] for _ in range(W + 1)]
    rhs = [one for _ in range(W + 1)]
    for m in range(W + 1):
        A[m][m] = A[m][m] + one
        for s in problem.steps:
            m2 = m - s.dy
            if 0 <= m2 <= W:
                A[m][m2] = A[m][m2] - _step_poly(s)
    xs = _bareiss_solve(A, rhs)
    target = (a - problem.start_altitude)
    return _maybe_compress(xs[target], problem.scale)


def bounded_bridge_gf(problem: WalkProblem) -> RationalFunction:
    """Exact g.f. for walks inside [lower, upper] ending back at altitude 0."""
    if problem.walk_class != "bounded-bridge":
        raise ValidationError("bounded_bridge_gf needs a bounded-bridge problem")
    if problem.start_altitude != 0:
        raise ValidationError("bounded bridges start at altitude 0")
    a, b = problem.upper, problem.lower
    levels = [c for c in range(b, a + 1) if c != 0]
    index = {c: i for i, c in enumerate(levels)}
    zero = UniPoly.zero("t")
    one = UniPoly.one("t")
    n = len(levels)
    A = [[zero for _ in range(n)] for _ in range(n)]
    rhs = [zero for _ in range(n)]
    for c in levels:
        i = index[c]
        A[i][i] = A[i][i] + one
        for s in problem.steps:
            if s.dy == -c:
                rhs[i] = rhs[i] + _step_poly(s)
            else:
                c2 = c + s.dy
                if b <= c2 <= a and c2 != 0:
                    A[i][index[c2]] = A[i][index[c2]] - _step_poly(s)
    es = _bareiss_solve(A, rhs) if n else []
    denom = RationalFunction(one)
    for s in problem.steps:
        if s.dy == 0:
            denom = denom - RationalFunction(_step_poly(s))
        elif b <= s.dy <= a:
            denom = denom - RationalFunction(_step_poly(s)) * es[index[s.dy]]
    f = denom.inverse()
    return _maybe_compress(f, problem.scale)


def bounded_gf(problem: WalkProblem) -> RationalFunction:
    if problem.walk_class == "bounded-free":
        return bounded_free_gf(problem)
    if problem.walk_class == "bounded-bridge":
        return bounded_bridge_gf(problem)
    raise ValidationError(f"not a bounded class: {problem.walk_class}")
