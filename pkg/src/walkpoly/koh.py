"""The q-binomial recurrence engine and its perturbations.

qbin computes Gaussian polynomials by the Pascal-type recurrence
    G(n, k) = q^k G(n-1, k) + G(n, k-1),   G(n, 0) = G(0, k) = 1,
with the product formula available as an independent cross-check.

koh_general evaluates the partition-sum recurrence with all supported
perturbations: shifts (a, b) in the recursive call, an initial-condition
multiplier nu, a per-partition weight rho, and a partition constraint.
With the default options it reproduces qbin exactly; with any nonnegative
perturbation the output is zero or symmetric unimodal of darga n*k, which
is the whole point of the construction.

gs is the size-restricted family: inside its sum every factor has second
argument <= s, where restricted and unrestricted values coincide, so the
factors are plain q-binomials and the recursion is one level deep.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from math import comb

from .errors import WalkPolyError
from .partitions import PartitionConstraint, UNCONSTRAINED, frequency, partitions_cached
from .qnum import QQ, Q0, Q1, qq
from .qpoly import QPoly, ones, padd, pmul, pones_mul, pshift, pstrip

sys.setrecursionlimit(100000)

_qbin_memo = {}


def qbin_ints(n, k):
    """Gaussian polynomial as an int list (empty for negative arguments)."""
    if n < 0 or k < 0:
        return []
    if n == 0 or k == 0:
        return [1]
    if k > n:
        n, k = k, n
    key = (n, k)
    got = _qbin_memo.get(key)
    if got is not None:
        return got
    # iterative fill along the first row/column to keep recursion shallow
    stack = [key]
    while stack:
        a, b = stack[-1]
        if b > a:
            a, b = b, a
        if (a, b) in _qbin_memo or a == 0 or b == 0:
            stack.pop()
            continue
        left = _qbin_memo.get((a - 1, b) if a - 1 >= b else (b, a - 1))
        down = _qbin_memo.get((a, b - 1) if a >= b - 1 else (b - 1, a))
        if a - 1 == 0 or b == 0:
            left = [1]
        if b - 1 == 0:
            down = [1]
        missing = False
        if left is None:
            stack.append((a - 1, b))
            missing = True
        if down is None:
            stack.append((a, b - 1))
            missing = True
        if missing:
            continue
        _qbin_memo[(a, b)] = padd(pshift(left, b), down)
        stack.pop()
    return _qbin_memo[key]


def qbin(n, k) -> QPoly:
    """The Gaussian polynomial G(n, k) = [n+k choose k]_q."""
    return QPoly.from_ints(qbin_ints(n, k))


def qbin_product(n, k) -> QPoly:
    """Cross-check via prod_{i=1..k} (1 - q^(n+i)) / (1 - q^i)."""
    if n < 0 or k < 0:
        return QPoly()
    num = [1]
    for i in range(1, k + 1):
        term = [0] * (n + i + 1)
        term[0] = 1
        term[n + i] = -1
        num = pmul(num, term)
    den = [1]
    for i in range(1, k + 1):
        term = [0] * (i + 1)
        term[0] = 1
        term[i] = -1
        den = pmul(den, term)
    quo, rem = _pdivmod(num, den)
    if pstrip(rem):
        raise WalkPolyError("q-binomial product did not divide exactly")
    return QPoly.from_ints(quo)


def _pdivmod(a, b):
    a = list(a)
    b = pstrip(list(b))
    if not b:
        raise ZeroDivisionError
    q = [0] * max(0, len(a) - len(b) + 1)
    a = pstrip(a)
    while len(a) >= len(b) and a:
        f, r = divmod(a[-1], b[-1])
        if r:
            raise WalkPolyError("inexact integer polynomial division")
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = pstrip(a)
    return q, a


# -- options ------------------------------------------------------------------


@dataclass(frozen=True)
class KohOptions:
    a: int = 0
    b: int = 0
    nu: object = 1
    rho: object = ("const", 1)  # ("const", c) | ("by_size", ((size, val), ...)) | ("table", ((partition, val), ...))
    constraint: PartitionConstraint = UNCONSTRAINED
    normalize: bool = False

    def __post_init__(self):
        if int(self.a) != self.a or int(self.b) != self.b:
            raise WalkPolyError("shift parameters must be integers")
        rho = self.rho
        if not isinstance(rho, tuple) or rho[0] not in ("const", "by_size", "table"):
            rho = ("const", rho)
        if rho[0] == "by_size" and not isinstance(rho[1], tuple):
            rho = ("by_size", tuple(sorted(dict(rho[1]).items())))
        if rho[0] == "table" and not isinstance(rho[1], tuple):
            rho = ("table", tuple(sorted(dict(rho[1]).items())))
        object.__setattr__(self, "rho", rho)

    def rho_value(self, partition):
        kind, data = self.rho
        if kind == "const":
            return data
        if kind == "by_size":
            return dict(data).get(len(partition), 1)
        return dict(data).get(tuple(partition), 1)

    def rho_is_constant(self):
        return self.rho[0] == "const"


DEFAULT_OPTIONS = KohOptions()

_koh_memo = {}


def _pair_penalty(freq):
    """sum_{1<=j<i<=k} (i-j) d_i d_j over part values."""
    vals = sorted(freq)
    total = 0
    for x in range(len(vals)):
        for y in range(x + 1, len(vals)):
            total += (vals[y] - vals[x]) * freq[vals[x]] * freq[vals[y]]
    return total


def _koh_lists(n, k, opt: KohOptions, memo):
    """Unnormalized recurrence value as a coefficient list (ints when
    possible, rationals otherwise)."""
    nu = opt.nu
    if n < 0 or k < 0:
        return []
    if n == 0 or k == 0:
        return [nu]
    if k == 1:
        return [nu] * (n + 1)
    key = (n, k)
    got = memo.get(key)
    if got is not None:
        return got
    total = []
    for lam in partitions_cached(k, opt.constraint):
        freq = frequency(lam)
        size = len(lam)
        expo = (k + opt.b) * size + k * (opt.a - 1) - _pair_penalty(freq)
        factors = []  # ("ones", n') or ("poly", list)
        nu_count = 0  # bare-nu factors: empty boxes and the nu inside G(n', 1)
        dead = False
        S = 0  # sum_{j<i} (i-j) d_{k-j}, updated via the running part count
        cnt = 0
        for i in range(k):
            nprime = (k - i) * (n - 2 * opt.a) - 2 * (i + opt.b) + 2 * S
            d = freq.get(k - i, 0)
            if nprime < 0:
                dead = True
                break
            if d == 0:
                nu_count += 1
            elif d == 1:
                factors.append(("ones", nprime))
                nu_count += 1
            else:
                sub = _koh_lists(nprime, d, opt, memo)
                if not pstrip(list(sub)):
                    dead = True
                    break
                factors.append(("poly", sub))
            cnt += d
            S += cnt
        if dead:
            continue
        if expo < 0:
            raise WalkPolyError("negative q-exponent; shifts out of range")
        scalar = qq(opt.rho_value(lam)) * qq(nu) ** nu_count
        if scalar == 0:
            continue
        term = [1]
        for kind, val in factors:
            term = pones_mul(term, val) if kind == "ones" else pmul(term, list(val))
        if scalar != 1:
            if _is_int(scalar):
                si = int(scalar)
                term = [si * c for c in term]
            else:
                term = [qq(scalar) * qq(c) for c in term]
        total = padd(total, pshift(term, expo))
    total = pstrip(total)
    memo[key] = total
    return total


def _is_int(x):
    return qq(x).denominator == 1


def koh_general(n, k, options: KohOptions = DEFAULT_OPTIONS) -> QPoly:
    """Value of the (perturbed) partition-sum recurrence.

    With default options this equals qbin(n, k).  normalize=True divides by
    nu^k, and additionally by rho when rho is a constant.
    """
    memo = _koh_memo.setdefault(options, {})
    val = _koh_lists(n, k, options, memo)
    poly = QPoly(val)
    if options.normalize:
        scale = qq(options.nu) ** k
        if options.rho_is_constant():
            scale = scale * qq(options.rho[1])
        if scale == 0:
            raise WalkPolyError("cannot normalize by zero")
        poly = poly * (Q1 / scale)
    return poly


def koh(n, k) -> QPoly:
    return koh_general(n, k, DEFAULT_OPTIONS)


# -- size-restricted family -----------------------------------------------------

_gs_memo = {}


def gs_ints(s, n, k):
    if s < 1:
        raise WalkPolyError("size bound must be >= 1")
    if n < 0 or k < 0:
        return []
    if k <= s:
        return qbin_ints(n, k)
    if n == 0:
        return [1]
    key = (s, n, k)
    got = _gs_memo.get(key)
    if got is not None:
        return got
    constraint = PartitionConstraint(max_size=s)
    total = []
    for lam in partitions_cached(k, constraint):
        freq = frequency(lam)
        size = len(lam)
        expo = k * size - k - _pair_penalty(freq)
        term = [1]
        dead = False
        S = 0
        cnt = 0
        for i in range(k):
            nprime = (k - i) * n - 2 * i + 2 * S
            d = freq.get(k - i, 0)
            if nprime < 0:
                dead = True
                break
            if d == 1:
                term = pones_mul(term, nprime)
            elif d > 1:
                sub = qbin_ints(nprime, d)  # d <= size <= s: restriction-free
                if not sub:
                    dead = True
                    break
                term = pmul(term, sub)
            cnt += d
            S += cnt
        if dead:
            continue
        total = padd(total, pshift(term, expo))
    _gs_memo[key] = total
    return total


def gs(s, n, k) -> QPoly:
    """q-binomial restricted to partitions of size <= s."""
    return QPoly.from_ints(gs_ints(s, n, k))


# -- explicit forms for s = 1, 2, 3 ----------------------------------------------


def gs1_explicit(n, k) -> QPoly:
    return QPoly.from_ints(ones(n * k))


def _qpow(e):
    return pshift([1], e)


def gs2_explicit(n, k) -> QPoly:
    """Closed form for the size<=2 restriction, valid for n >= 1."""
    if n == 0:
        return QPoly([1])
    if n < 0 or k < 0:
        return QPoly()
    if k <= 2:
        return qbin(n, k)
    num = []
    for sign, e in [
        (1, n * k + n + 4),
        (-1, n * k + n + 3),
        (1, n * k + n + 1),
        (-1, n * k + 4),
        (-1, (n - 1) * k + n + 3),
        (1, (n - 1) * k + 3),
        (1, k + n + 1),
        (-1, k + 1),
        (-1, n),
        (1, 3),
        (-1, 1),
        (1, 0),
    ]:
        num = padd(num, [sign * c for c in _qpow(e)])
    den = pmul(pmul(_one_minus(1), _one_minus(1)), pmul(_one_minus(2), _one_minus(n)))
    quo, rem = _pdivmod(num, den)
    if pstrip(rem):
        raise WalkPolyError("explicit size-2 form did not divide exactly")
    return QPoly.from_ints(quo)


def _one_minus(e):
    out = [0] * (e + 1)
    out[0] = 1
    out[e] = -1
    return out


def gs3_explicit(n, k) -> QPoly:
    """Closed form for the size<=3 restriction, valid for n >= 2.

    For n < 2 the size-3 contributions vanish and the value equals the
    size<=2 one.
    """
    if n < 2:
        return gs2_explicit(n, k)
    if k <= 3:
        return qbin(n, k)

    def P(*pairs):
        out = []
        for coeff, e in pairs:
            out = padd(out, [coeff * c for c in _qpow(e)])
        return out

    one_minus_qn = _one_minus(n)
    q_minus_qn = padd(_qpow(1), [-c for c in _qpow(n)])
    one_plus_q = padd(_qpow(0), _qpow(1))

    # q^(4k) * q^3 (1-q^n)(q-q^n)
    t1 = pshift(pmul(pmul(one_minus_qn, q_minus_qn), _qpow(3)), 4 * k)
    # - q^(3k) * q (1+q)(1-q^n)(q - q^2 + q^5 - q^n)
    inner2 = P((1, 1), (-1, 2), (1, 5), (-1, n))
    t2 = pshift(pmul(pmul(pmul(one_plus_q, one_minus_qn), inner2), _qpow(1)), 3 * k)
    t2 = [-c for c in t2]
    # - q^(2k) * (q^(nk) * (q^(2n) A - q^n B + q^10) - q^(2n) + q^n C - D)
    A = P((1, 9), (-1, 8), (-1, 7), (1, 6), (1, 5), (-1, 3), (1, 1))
    B = P((1, 10), (-1, 8), (1, 6), (1, 5))
    C = P((1, 5), (1, 4), (-1, 2), (1, 0))
    D = P((1, 9), (-1, 7), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1))
    inner3 = padd(
        pshift(
            padd(
                padd(pmul(_qpow(2 * n), A), [-c for c in pmul(_qpow(n), B)]),
                _qpow(10),
            ),
            n * k,
        ),
        padd(padd([-c for c in _qpow(2 * n)], pmul(_qpow(n), C)), [-c for c in D]),
    )
    t3 = [-c for c in pshift(inner3, 2 * k)]
    # + q^k * q^(nk) q^3 (1+q)(1-q^n)(q^5 - q^n + q^(n+3) - q^(n+4))
    inner4 = P((1, 5), (-1, n), (1, n + 3), (-1, n + 4))
    t4 = pshift(pmul(pmul(pmul(one_plus_q, one_minus_qn), inner4), _qpow(3)), k + n * k)
    # - q^(nk) q^6 (1-q^n)(q-q^n)
    t5 = [-c for c in pshift(pmul(pmul(one_minus_qn, q_minus_qn), _qpow(6)), n * k)]

    num = padd(padd(padd(padd(t1, t2), t3), t4), t5)
    den = pmul(
        pmul(pmul(_one_minus(1), _one_minus(1)), pmul(_one_minus(2), _one_minus(2))),
        pmul(_one_minus(3), pmul(_one_minus(n - 1), _one_minus(n))),
    )
    den = pshift(den, 2 * k + 1)
    # numerator must carry the q^(2k+1) factor for the division to be exact
    quo, rem = _pdivmod(num, den)
    if pstrip(rem):
        raise WalkPolyError("explicit size-3 form did not divide exactly")
    return QPoly.from_ints(quo)


def gs_explicit(s, n, k) -> QPoly:
    if s == 1:
        return gs1_explicit(n, k)
    if s == 2:
        return gs2_explicit(n, k)
    if s == 3:
        return gs3_explicit(n, k)
    raise WalkPolyError("explicit forms exist for s = 1, 2, 3 only")


# -- the conjectured recurrence across the family ---------------------------------


@dataclass
class VerificationReport:
    passed: bool
    checked: int
    counterexample: object = None  # (s, n, k) or None


def verify_size_s_recurrence(s_max, n_max, k_max, gs_func=None) -> VerificationReport:
    """Check  q^n (q^(k+s)-1) G_s(n+1,k) - q^(k+1)(q^n - q^(s-2)) G_s(n,k+1)
    + (q^n - q^(k+s-1)) G_s(n+1,k+1) = 0  on the whole grid.

    gs_func(s, n, k) -> int list overrides the evaluator (test hook).
    """
    fn = gs_func or gs_ints
    checked = 0
    for s in range(1, s_max + 1):
        c = max(0, 2 - s)  # clear q^(s-2) for s = 1
        for n in range(0, n_max + 1):
            for k in range(0, k_max + 1):
                A = fn(s, n + 1, k)
                B = fn(s, n, k + 1)
                C = fn(s, n + 1, k + 1)
                lhs = []
                lhs = padd(lhs, pshift(A, n + k + s + c))
                lhs = padd(lhs, [-x for x in pshift(A, n + c)])
                lhs = padd(lhs, [-x for x in pshift(B, n + k + 1 + c)])
                lhs = padd(lhs, pshift(B, k + s - 1 + c))
                lhs = padd(lhs, pshift(C, n + c))
                lhs = padd(lhs, [-x for x in pshift(C, k + s - 1 + c)])
                checked += 1
                if pstrip(lhs):
                    return VerificationReport(False, checked, (s, n, k))
    return VerificationReport(True, checked)


# -- recursion depth ----------------------------------------------------------------

_depth_memo = {}


def koh_depth_brute(n, k) -> int:
    """Depth of the recursion tree of the partition-sum recurrence.

    A zero summand (some factor with negative first argument) never gets
    evaluated further, so its calls do not count; each factor call of a
    surviving summand costs one level, initial conditions terminate.
    """
    if n < 0 or k < 0 or n == 0 or k <= 1:
        return 0
    key = (n, k)
    got = _depth_memo.get(key)
    if got is not None:
        return got
    best = 0
    for lam in partitions_cached(k):
        freq = frequency(lam)
        calls = []
        S = 0
        cnt = 0
        alive = True
        for i in range(k):
            nprime = (k - i) * n - 2 * i + 2 * S
            if nprime < 0:
                alive = False
                break
            calls.append((nprime, freq.get(k - i, 0)))
            cnt += freq.get(k - i, 0)
            S += cnt
        if not alive:
            continue
        for nprime, d in calls:
            sub = koh_depth_brute(nprime, d)
            if sub > best:
                best = sub
    _depth_memo[key] = 1 + best
    return 1 + best


def koh_depth_formula(n, k) -> int:
    """Closed form: ceil(floor(k/2) n / 2) - ceil(k/2) + 1 on the proven
    ranges, ceil(n/4) for k = 3, and 1 on the small-n strip."""
    if n < 0 or k < 0:
        raise WalkPolyError("formula precondition: n, k >= 0")
    if n == 0 or k <= 1:
        return 0
    if k == 2:
        return -(-n // 2)
    if k == 3:
        return -(-n // 4)
    ceil_half_k = (k + 1) // 2
    lemma = -(-(k // 2) * n // 2) - ceil_half_k + 1
    if k % 2 == 0:
        return 1 if n == 1 else lemma  # n = 2 agrees with the lemma value
    # k odd >= 5: the lemma needs n >= 4; below that the depth is 1
    return 1 if n <= 3 else lemma


def koh_depth(n, k, mode="brute") -> int:
    if mode == "brute":
        return koh_depth_brute(n, k)
    if mode == "formula":
        return koh_depth_formula(n, k)
    raise WalkPolyError(f"unknown mode {mode!r}")


# -- q -> 1 limits --------------------------------------------------------------------


def q_one_limit(s, n_max):
    """gs(s, n, n) evaluated at q = 1 for n = 0..n_max."""
    return [sum(gs_ints(s, n, n)) for n in range(n_max + 1)]


def g1_limit(n, k):
    return n * k + 1


def g2_limit(n, k):
    return (
        (k + 1)
        * (k * k * n * n - 3 * k * k * n - k * n * n + 2 * k * k + 9 * k * n - 8 * k + 12)
    ) // 12


def g3_limit(n, k):
    inner = (
        k ** 3 * n ** 3
        - 9 * k ** 3 * n ** 2
        - 3 * k ** 2 * n ** 3
        + 26 * k ** 3 * n
        + 42 * k ** 2 * n ** 2
        + 2 * k * n ** 3
        - 24 * k ** 3
        - 153 * k ** 2 * n
        - 33 * k * n ** 2
        + 162 * k ** 2
        + 247 * k * n
        - 378 * k
        + 360
    )
    return ((k + 2) * (k + 1) * inner) // 720
