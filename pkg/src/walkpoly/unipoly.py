"""Dense univariate polynomials, reduced rational functions, truncated series.

Coefficients are exact rationals (qnum.QQ), stored lowest degree first with
the trailing (highest-degree) coefficient nonzero.  The zero polynomial has
an empty coefficient tuple.
"""
from __future__ import annotations

from .errors import WalkPolyError
from .qnum import QQ, Q0, Q1, content, qq, qq_str


def _strip(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return coeffs[:i]


class UniPoly:
    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs=()):
        self.var = var
        self.coeffs = tuple(_strip([QQ(c) for c in coeffs]))

    @classmethod
    def zero(cls, var="t"):
        return cls(var, ())

    @classmethod
    def one(cls, var="t"):
        return cls(var, (Q1,))

    @classmethod
    def const(cls, c, var="t"):
        return cls(var, (QQ(c),))

    @classmethod
    def x(cls, var="t"):
        return cls(var, (Q0, Q1))

    @classmethod
    def monomial(cls, c, k, var="t"):
        return cls(var, (Q0,) * k + (QQ(c),))

    # -- basic structure ---------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def valuation(self):
        """Lowest exponent with nonzero coefficient; None for zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q0

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Q0

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if self.var != other.var:
            raise WalkPolyError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other, self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly.const(other, self.var) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = QQ(other)
            return UniPoly(self.var, [c * a for a in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero(self.var)
        out = [Q0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k):
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return UniPoly(self.var, (Q0,) * k + self.coeffs)

    def divmod(self, other):
        """Exact field division with remainder over QQ."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = [Q0] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        dlc = other.lc()
        dd = other.degree
        while len(r) - 1 >= dd and _strip(r):
            r = _strip(r)
            if len(r) - 1 < dd:
                break
            k = len(r) - 1 - dd
            c = r[-1] / dlc
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] -= c * b
        return UniPoly(self.var, q), UniPoly(self.var, r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise WalkPolyError("inexact polynomial division")
        return q

    def gcd(self, other):
        """Monic gcd over QQ."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * (Q1 / a.lc())

    def derivative(self):
        return UniPoly(self.var, [QQ(i) * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        acc = Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self):
        return content(self.coeffs)

    def primitive(self):
        """(content, primitive integral part with the same sign)."""
        c = self.content()
        if c == 0:
            return Q0, self
        return c, UniPoly(self.var, [a / c for a in self.coeffs])

    def compress(self, m):
        """Substitute var**m -> var; requires support contained in m*Z."""
        if m == 1:
            return self
        out = []
        for i, c in enumerate(self.coeffs):
            if c != 0 and i % m != 0:
                raise WalkPolyError(f"support not divisible by {m}")
            if i % m == 0:
                out.append(c)
        return UniPoly(self.var, out)

    def supports_compress(self, m):
        return all(c == 0 or i % m == 0 for i, c in enumerate(self.coeffs))

    def decompress(self, m):
        """Substitute var -> var**m."""
        if m == 1:
            return self
        out = [Q0] * (m * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return UniPoly(self.var, out)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(qq_str(c))
            else:
                mon = self.var if i == 1 else f"{self.var}^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{qq_str(c)}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def poly_from_ints(coeffs, var="t"):
    return UniPoly(var, coeffs)


class RationalFunction:
    """Reduced num/den pair over QQ[t].

    Normal form: gcd(num, den) = 1, num and den jointly integral and
    primitive, den with positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var="t"):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num, var)
        if den is None:
            den = UniPoly.one(num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            self.num = UniPoly.zero(num.var)
            self.den = UniPoly.one(num.var)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        joint = content(list(num.coeffs) + list(den.coeffs))
        if den.lc() < 0:
            joint = -joint
        num = num * (Q1 / joint)
        den = den * (Q1 / joint)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, var="t"):
        return cls(UniPoly.zero(var))

    @classmethod
    def one(cls, var="t"):
        return cls(UniPoly.one(var))

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(UniPoly.const(other, self.var))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(UniPoly.const(other, self.var))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, UniPoly):
                other = RationalFunction(other)
            else:
                return RationalFunction(self.num * QQ(other), self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, UniPoly):
                other = RationalFunction(other)
            else:
                return RationalFunction(self.num, self.den * QQ(other))
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k):
        return RationalFunction(self.num ** k, self.den ** k)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RationalFunction(self.den, self.num)

    def compress(self, m):
        return RationalFunction(self.num.compress(m), self.den.compress(m))

    def supports_compress(self, m):
        return self.num.supports_compress(m) and self.den.supports_compress(m)

    def series(self, order):
        return series_of_ratfun(self, order)

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


class PowerSeries:
    """Truncated power series: coefficients c_0..c_order, all exact."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        self.var = var
        self.coeffs = tuple(QQ(c) for c in coeffs)
        if not self.coeffs:
            raise WalkPolyError("series needs at least the constant term")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order, var="t"):
        return cls(var, (Q0,) * (order + 1))

    @classmethod
    def const(cls, c, order, var="t"):
        return cls(var, (QQ(c),) + (Q0,) * order)

    def truncate(self, order):
        if order >= self.order:
            return self
        return PowerSeries(self.var, self.coeffs[: order + 1])

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __add__(self, other):
        n = min(self.order, other.order)
        return PowerSeries(self.var, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other):
        n = min(self.order, other.order)
        return PowerSeries(self.var, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __neg__(self):
        return PowerSeries(self.var, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = QQ(other)
            return PowerSeries(self.var, [c * a for a in self.coeffs])
        n = min(self.order, other.order)
        out = [Q0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return PowerSeries(self.var, out)

    __rmul__ = __mul__

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def agreement_order(self, other):
        """Largest k such that the two series agree through t**k; -1 if none."""
        n = min(self.order, other.order)
        for i in range(n + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return i - 1
        return n

    def __repr__(self):
        return f"PowerSeries({[qq_str(c) for c in self.coeffs]})"


def ratfun_normalize(num, den):
    """Reduced, jointly-primitive representative of num/den."""
    return RationalFunction(num, den)


def series_of_ratfun(rf, order):
    """Exact expansion of a rational function with den(0) != 0."""
    den = rf.den
    if den.eval(Q0) == 0:
        raise WalkPolyError("pole at origin")
    d0 = den[0]
    out = []
    for n in range(order + 1):
        acc = rf.num[n]
        for k in range(1, min(n, den.degree) + 1):
            acc -= den[k] * out[n - k]
        out.append(acc / d0)
    return PowerSeries(rf.var, out)
