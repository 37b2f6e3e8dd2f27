import itertools

import pytest

from walkpoly.qnum import QQ, Q0


def exhaustive_count(steps, N, start=0, end=None, lower=None, upper=None):
    """Independent oracle: enumerate every step sequence outright.

    Exponential; only usable for small N.  Completely separate from the DP
    the package uses.
    """
    counts = [Q0 for _ in range(N + 1)]
    # depth-first over (length used, altitude, weight)
    stack = [(0, start, QQ(1))]
    while stack:
        used, alt, w = stack.pop()
        if end is None or alt == end:
            counts[used] += w
        for s in steps:
            nu = used + s.dx
            na = alt + s.dy
            if nu > N:
                continue
            if lower is not None and na < lower:
                continue
            if upper is not None and na > upper:
                continue
            if s.dx == 0 and nu == used and _vertical_budget_exceeded(alt, na, N, used, steps):
                continue
            stack.append((nu, na, w * QQ(s.weight)))
    return counts


def _vertical_budget_exceeded(alt, na, N, used, steps):
    # crude guard: vertical moves beyond any possible compensation are dead
    cap = sum(abs(s.dy) for s in steps) * (N + 2) + abs(alt) + 4
    return abs(na) > cap


@pytest.fixture(scope="session")
def football_steps():
    ys = (2, 3, 4, 5, 6, 7, 8)
    return [(1, y) for y in ys] + [(1, -y) for y in ys]
