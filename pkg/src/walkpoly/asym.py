"""Leading-order growth analysis.

The exponential base comes from the discriminant recipe: discriminant of
the minimal polynomial (resultant with the target-derivative over the
leading coefficient), smallest positive real root, reciprocal.  The recipe
is heuristic (recorded as such in the certificate); the empirical fit and
the excursion/bridge ratio provide the cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import WalkPolyError
from .multipoly import MultiPoly, discriminant
from .qnum import QQ, Q0
from .realroots import smallest_positive_real_root
from .steps import CountTable, validate
from .unipoly import UniPoly


def _log_q(x):
    """Natural log of a positive rational/int of any size."""
    x = QQ(x)
    if x <= 0:
        raise WalkPolyError("log of non-positive value")
    num, den = int(x.numerator), int(x.denominator)
    return _log_int(num) - _log_int(den)


def _log_int(n):
    if n < 10 ** 300:
        return math.log(n)
    bl = n.bit_length() - 60
    return math.log(n >> bl) + bl * math.log(2)


@dataclass
class BaseCertificate:
    base: float
    error_bound: float
    discriminant: UniPoly
    root_interval: tuple  # (lo, hi) rational strings
    method: str = "discriminant-reciprocal (heuristic)"


def asymptotic_base(p, precision: int = 8) -> BaseCertificate:
    """Reciprocal of the smallest positive real root of disc_target(p)."""
    poly = getattr(p, "poly", p)
    target = getattr(p, "target", None) or [v for v in poly.ring if v != "t"][0]
    disc = discriminant(poly, target)
    if disc.is_zero():
        # repeated factors: reduce and retry once
        from .recurrence import _squarefree_in_target

        poly = _squarefree_in_target(poly, target)
        disc = discriminant(poly, target)
        if disc.is_zero():
            raise WalkPolyError("discriminant vanished identically")
    dpoly = disc.to_unipoly("t")
    dpoly = UniPoly("z", dpoly.coeffs)
    root = smallest_positive_real_root(dpoly, precision + 4)
    if root is None:
        raise WalkPolyError("no positive discriminant root")
    lo, hi = QQ(root.lower), QQ(root.upper)
    if lo <= 0:
        lo = (lo + hi) / 2
    inv_lo, inv_hi = 1 / hi, 1 / lo
    base = float((inv_lo + inv_hi) / 2)
    err = float(inv_hi - inv_lo) / 2 + 10.0 ** (-precision)
    from .qnum import qq_str

    return BaseCertificate(base, err, dpoly, (qq_str(lo), qq_str(hi)))


@dataclass
class GrowthEstimate:
    base: float
    alpha: float
    const: float
    residual: float
    terms_used: int
    period: int = 1
    offset: int = 0
    reliable: bool = True


RESIDUAL_THRESHOLD = 1e-3


def fit_growth(table, min_terms: int = 40) -> GrowthEstimate:
    """Least-squares fit log B(n) ~ n log b + alpha log n + log C on the tail
    half of the (periodicity-stripped) counts."""
    counts = list(table.counts) if isinstance(table, CountTable) else [QQ(c) for c in table]
    support = [n for n, c in enumerate(counts) if c != 0]
    if any(QQ(counts[n]) < 0 for n in support):
        raise WalkPolyError("not eventually positive")
    if len(support) < min_terms:
        raise WalkPolyError(f"need at least {min_terms} nonzero terms")
    offset = support[0]
    period = 0
    for n in support:
        period = math.gcd(period, n - offset)
    period = period or 1
    idx = [(n - offset) // period for n in support]
    if idx != list(range(len(support))):
        raise WalkPolyError("support is not an arithmetic progression")
    data = [counts[offset + k * period] for k in range(len(support))]

    ks = [k for k in range(len(data)) if k >= 1]
    tail = ks[len(ks) // 2 :]
    # one parity class only: meander-type counts carry parity-oscillating
    # 1/n corrections that would otherwise leak into alpha and C
    tail = tail[len(tail) % 2 :: 2]
    import numpy as np

    # a 1/k nuisance column soaks up the first subleading correction, which
    # otherwise leaks into alpha and (badly, via extrapolation to k=1) into C
    A = np.array([[k, math.log(k), 1.0, 1.0 / k] for k in tail])
    y = np.array([_log_q(data[k]) for k in tail])
    sol, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    fitted = A @ sol
    residual = float(np.sqrt(np.mean((fitted - y) ** 2)))
    return GrowthEstimate(
        base=float(math.exp(sol[0])),
        alpha=float(sol[1]),
        const=float(math.exp(sol[2])),
        residual=residual,
        terms_used=len(tail),
        period=period,
        offset=offset,
        reliable=residual < RESIDUAL_THRESHOLD,
    )


@dataclass
class RatioEstimate:
    constant: float
    diagnostic: float  # |last extrapolation step|; small means converged
    terms_used: int


def excursion_bridge_ratio(steps, N: int = 200) -> RatioEstimate:
    """Estimate c in  excursions(n)/bridges(n) ~ c/n.

    Fits n*B(n)/C(n) on the tail with one Richardson extrapolation step
    (the sequence is c + O(1/n)).
    """
    from .oracle import count_walks

    exc = count_walks(validate(steps, "excursion", lower=0), N).counts
    bri = count_walks(validate(steps, "bridge"), N).counts
    pairs = [
        (n, QQ(exc[n]) / QQ(bri[n]))
        for n in range(1, N + 1)
        if bri[n] != 0 and exc[n] != 0
    ]
    if len(pairs) < 8:
        raise WalkPolyError("degenerate: too few nonzero bridge terms")
    # lengths live on an arithmetic progression; the 1/n law is cleanest in
    # units of the period (one "effective step" per period of length)
    ns = [n for n, _ in pairs]
    offset = ns[0]
    period = 0
    for n in ns:
        period = math.gcd(period, n - offset)
    period = period or 1
    ks = [n / period for n in ns]
    seq = [float(QQ(k_num) / period * r) for k_num, (n, r) in zip(ns, pairs)]
    k1, x1 = ks[-1], seq[-1]
    mid = len(seq) // 2 - 1
    k2, x2 = ks[mid], seq[mid]
    # x(k) = c + d/k: eliminate d from the two samples
    constant = (k1 * x1 - k2 * x2) / (k1 - k2)
    return RatioEstimate(
        constant=constant,
        diagnostic=abs(x1 - x2),
        terms_used=len(seq),
    )
