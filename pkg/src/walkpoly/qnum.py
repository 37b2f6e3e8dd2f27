"""Arbitrary-precision rational arithmetic backend.

All exact coefficients in this package are `QQ` values: gmpy2.mpq when
available (much faster on large numerators), fractions.Fraction otherwise.
Both expose .numerator/.denominator, reduce automatically, and keep the
denominator positive, which is the invariant the rest of the code relies on.
"""
from __future__ import annotations

try:
    from gmpy2 import mpq as QQ, mpz as ZZ  # type: ignore

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ  # type: ignore

    ZZ = int
    HAVE_GMPY2 = False

Q0 = QQ(0)
Q1 = QQ(1)


def qq(x, y=None):
    """Coerce to QQ.  Accepts ints, rationals, and 'a/b' strings."""
    if y is not None:
        return QQ(x, y)
    if isinstance(x, str):
        return QQ(x.strip())
    return QQ(x)


def qq_str(q) -> str:
    """Decimal-free rational rendering: '3', '-1/2'."""
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_integer(q) -> bool:
    return QQ(q).denominator == 1


def igcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(int(a), int(b))


def ilcm(a: int, b: int) -> int:
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // igcd(a, b)


def content(coeffs) -> "QQ":
    """Rational content of a coefficient list: gcd(numerators)/lcm(denominators).

    content([]) = 0.  Dividing by it makes the list integral and primitive.
    """
    gn = 0
    ld = 1
    for c in coeffs:
        c = QQ(c)
        gn = igcd(gn, c.numerator)
        ld = ilcm(ld, c.denominator)
    if gn == 0:
        return Q0
    return QQ(gn, ld)
