"""Dense exact polynomials in q and the symmetry/unimodality testers.

Internally most of the heavy work runs on plain int coefficient lists
(numpy int64 convolutions when a value bound proves them overflow-safe);
QPoly is the exact-arithmetic face of those lists.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WalkPolyError
from .qnum import QQ, Q0, qq, qq_str

_INT64_SAFE = 2 ** 62


def pstrip(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def pmul(a, b):
    """Exact product of int coefficient lists; numpy when provably safe."""
    a = pstrip(a)
    b = pstrip(b)
    if not a or not b:
        return []
    sa = sum(abs(c) for c in a)
    sb = sum(abs(c) for c in b)
    if sa * sb < _INT64_SAFE:
        return np.convolve(
            np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)
        ).tolist()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def pones_mul(a, m):
    """a * (1 + q + ... + q^m) by a sliding window sum."""
    if m < 0:
        return []
    a = list(a)
    out = []
    acc = 0
    for i in range(len(a) + m):
        if i < len(a):
            acc += a[i]
        if i - m - 1 >= 0 and i - m - 1 < len(a):
            acc -= a[i - m - 1]
        out.append(acc)
    return out


def pshift(a, k):
    if not a:
        return []
    return [0] * k + list(a)


def ones(m):
    """1 + q + ... + q^m as a list (empty for m < 0)."""
    return [1] * (m + 1) if m >= 0 else []


class QPoly:
    """Dense polynomial in q, lowest degree first, exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [qq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if all(c.denominator == 1 for c in cs):
            cs = [int(c) for c in cs]
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ints):
        p = cls.__new__(cls)
        lst = pstrip(list(ints))
        object.__setattr__(p, "coeffs", tuple(int(c) for c in lst))
        return p

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def low_degree(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return [qq(c) for c in self.coeffs] == [qq(c) for c in other.coeffs]
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return QPoly(padd(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        return QPoly(padd(list(self.coeffs), [-c for c in other.coeffs]))

    def __mul__(self, other):
        if isinstance(other, QPoly):
            if all(isinstance(c, int) for c in self.coeffs + other.coeffs):
                return QPoly(pmul(list(self.coeffs), list(other.coeffs)))
            out = [Q0] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
            for i, x in enumerate(self.coeffs):
                for j, y in enumerate(other.coeffs):
                    out[i + j] += qq(x) * qq(y)
            return QPoly(out)
        return QPoly([qq(c) * qq(other) for c in self.coeffs])

    __rmul__ = __mul__

    def shift(self, k):
        return QPoly(pshift(list(self.coeffs), k))

    def eval_at_one(self):
        return sum(self.coeffs, 0 if all(isinstance(c, int) for c in self.coeffs) else Q0)

    def to_json(self):
        return [qq_str(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mon:
                parts.append(qq_str(qq(c)))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{qq_str(qq(c))}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


@dataclass
class PolyReport:
    darga: object  # int or None for the zero polynomial
    symmetric: bool
    unimodal: bool
    log_concave: bool
    gamma_vector: object  # list or None (only present when symmetric)


def darga(p: QPoly):
    """Sum of the lowest and highest exponents; None for 0."""
    if p.is_zero():
        return None
    return p.low_degree + p.degree


def is_symmetric(p: QPoly) -> bool:
    if p.is_zero():
        return True
    cs = list(p.coeffs[p.low_degree :])
    return cs == cs[::-1]


def is_unimodal(p: QPoly) -> bool:
    cs = [qq(c) for c in p.coeffs]
    rising = True
    for a, b in zip(cs, cs[1:]):
        if rising:
            if b < a:
                rising = False
        elif b > a:
            return False
    return True


def is_log_concave(p: QPoly) -> bool:
    cs = [qq(c) for c in p.coeffs]
    for i in range(1, len(cs) - 1):
        if cs[i] * cs[i] < cs[i - 1] * cs[i + 1]:
            return False
    return True


def gamma_vector(p: QPoly):
    """Coefficients in the basis q^k (1+q)^(m-2k) for symmetric p of darga m.

    Entries may be negative; gamma-nonnegativity is their nonnegativity.
    """
    if p.is_zero():
        return []
    m = darga(p)
    low = p.low_degree
    rest = [qq(c) for c in p.coeffs]
    out = []
    for k in range(low, m // 2 + 1):
        gk = rest[k] if k < len(rest) else Q0
        out.append(gk)
        if gk != 0:
            basis = pshift(_binom_poly(m - 2 * k), k)
            for i, c in enumerate(basis):
                if i < len(rest):
                    rest[i] -= gk * c
                elif gk * c != 0:
                    rest.extend([Q0] * (i - len(rest) + 1))
                    rest[i] -= gk * c
    if any(c != 0 for c in rest):
        raise WalkPolyError("gamma extraction failed: polynomial not symmetric")
    return [Q0] * low + out if low else out


def _binom_poly(m):
    row = [1]
    for _ in range(m):
        row = padd(pshift(row, 1), row)
    return row


def analyze_qpoly(p: QPoly) -> PolyReport:
    sym = is_symmetric(p)
    gv = None
    if sym and not p.is_zero():
        gv = [qq(c) for c in gamma_vector(p)]
    return PolyReport(
        darga=darga(p),
        symmetric=sym,
        unimodal=is_unimodal(p),
        log_concave=is_log_concave(p),
        gamma_vector=gv,
    )
