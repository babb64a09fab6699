"""Arbitrary-precision numeric kernel.

Working contexts, error-carrying real/complex values, and the classical
constants and L-series everything else reduces to: pi, log 2, log 3,
Catalan's constant, integer zeta values, Hurwitz zeta at rational shifts,
and the Dirichlet L-values of the quadratic character mod 3.

Error model: every result is a value together with a rigorous absolute
error bound ``err`` such that ``|true - value| <= err``.  Arithmetic
computes majorants, adding a small ulp allowance for mpmath rounding at
the current working precision.  Nothing here is an interval in the
directed-rounding sense; the bounds are plain majorants, which is what the
relation-detection layer needs for trustworthy residual thresholds.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

__all__ = [
    "Context",
    "ApproxR",
    "ApproxC",
    "const_eval",
    "zeta",
    "hurwitz_zeta",
    "dirichlet_L_chi3",
    "polylog_root_of_unity",
    "sqrt3",
    "bernoulli",
]

CONSTANT_NAMES = ("pi", "log2", "log3", "catalan")


@dataclass(frozen=True)
class Context:
    """Working-precision configuration.

    ``precision_digits`` is the accuracy contract of results (absolute
    error at most 10**-precision_digits); ``guard_digits`` is headroom the
    internal computations run with.
    """

    precision_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self) -> None:
        if self.precision_digits < 10:
            raise ValueError("precision_digits must be >= 10")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")

    @property
    def dps(self) -> int:
        return self.precision_digits + self.guard_digits

    def workdps(self, extra: int = 0):
        return mp.workdps(self.dps + extra)

    @property
    def target_err(self) -> mp.mpf:
        with mp.workdps(20):
            return mp.mpf(10) ** (-self.precision_digits)


def _to_mpf(value) -> mp.mpf:
    # Keep existing mpf objects bit-exact; mp.mpf(x) would re-round to the
    # ambient precision.
    if isinstance(value, mp.mpf):
        return value
    return mp.mpf(value)


def _to_mpc(value) -> mp.mpc:
    if isinstance(value, mp.mpc):
        return value
    if isinstance(value, mp.mpf):
        return mp.mp.make_mpc((value._mpf_, mp.libmp.fzero))
    return mp.mpc(value)


def _ulp_allowance(*magnitudes) -> mp.mpf:
    # A few ulp at the current precision, scaled by the largest magnitude
    # involved.  Covers mpmath's rounding of one arithmetic step.
    m = 0
    for v in magnitudes:
        a = abs(v)
        if a > m:
            m = a
    if m == 0:
        return mp.mpf(0)
    return m * mp.mpf(2) ** (4 - mp.mp.prec)


class ApproxR:
    """A real value with a rigorous absolute error bound."""

    __slots__ = ("value", "err", "heuristic")

    def __init__(self, value, err=0, heuristic: bool = False):
        self.value = _to_mpf(value)
        self.err = _to_mpf(err)
        if not (self.err >= 0 and mp.isfinite(self.err)):
            raise ValueError("error bound must be finite and nonnegative")
        self.heuristic = heuristic

    @classmethod
    def exact(cls, v) -> "ApproxR":
        if isinstance(v, Fraction):
            # Fractions convert via a correctly rounded division.
            val = mp.mpf(v.numerator) / v.denominator
            return cls(val, _ulp_allowance(val))
        return cls(mp.mpf(v), 0)

    def __add__(self, other: "ApproxR") -> "ApproxR":
        v = self.value + other.value
        return ApproxR(v, self.err + other.err + _ulp_allowance(v),
                       self.heuristic or other.heuristic)

    def __sub__(self, other: "ApproxR") -> "ApproxR":
        v = self.value - other.value
        return ApproxR(v, self.err + other.err + _ulp_allowance(v),
                       self.heuristic or other.heuristic)

    def __mul__(self, other: "ApproxR") -> "ApproxR":
        v = self.value * other.value
        e = (abs(self.value) * other.err + abs(other.value) * self.err
             + self.err * other.err + _ulp_allowance(v))
        return ApproxR(v, e, self.heuristic or other.heuristic)

    def __neg__(self) -> "ApproxR":
        return ApproxR(-self.value, self.err, self.heuristic)

    def scale(self, c) -> "ApproxR":
        """Multiply by an exact rational or integer."""
        if isinstance(c, Fraction):
            v = self.value * c.numerator / c.denominator
            cm = abs(mp.mpf(c.numerator)) / c.denominator
        else:
            v = self.value * c
            cm = abs(mp.mpf(c))
        return ApproxR(v, cm * self.err + _ulp_allowance(v), self.heuristic)

    def agrees_with(self, other: "ApproxR") -> bool:
        return abs(self.value - other.value) <= self.err + other.err

    def __repr__(self) -> str:
        return f"ApproxR({mp.nstr(self.value, 12)} +/- {mp.nstr(self.err, 3)})"


class ApproxC:
    """A complex value with a rigorous absolute error bound on |true - value|."""

    __slots__ = ("value", "err", "heuristic")

    def __init__(self, value, err=0, heuristic: bool = False):
        self.value = _to_mpc(value)
        self.err = _to_mpf(err)
        if not (self.err >= 0 and mp.isfinite(self.err)):
            raise ValueError("error bound must be finite and nonnegative")
        self.heuristic = heuristic

    @classmethod
    def exact(cls, v) -> "ApproxC":
        return cls(mp.mpc(v), 0)

    @classmethod
    def from_real(cls, r: ApproxR) -> "ApproxC":
        return cls(mp.mpc(r.value), r.err, r.heuristic)

    def __add__(self, other: "ApproxC") -> "ApproxC":
        v = self.value + other.value
        return ApproxC(v, self.err + other.err + _ulp_allowance(v),
                       self.heuristic or other.heuristic)

    def __sub__(self, other: "ApproxC") -> "ApproxC":
        v = self.value - other.value
        return ApproxC(v, self.err + other.err + _ulp_allowance(v),
                       self.heuristic or other.heuristic)

    def __mul__(self, other: "ApproxC") -> "ApproxC":
        v = self.value * other.value
        e = (abs(self.value) * other.err + abs(other.value) * self.err
             + self.err * other.err + _ulp_allowance(v, self.value, other.value))
        return ApproxC(v, e, self.heuristic or other.heuristic)

    def __neg__(self) -> "ApproxC":
        return ApproxC(-self.value, self.err, self.heuristic)

    def real_part(self) -> ApproxR:
        return ApproxR(self.value.real, self.err, self.heuristic)

    def imag_part(self) -> ApproxR:
        return ApproxR(self.value.imag, self.err, self.heuristic)

    def abs_upper(self) -> mp.mpf:
        return abs(self.value) + self.err

    def __repr__(self) -> str:
        return f"ApproxC({mp.nstr(self.value, 12)} +/- {mp.nstr(self.err, 3)})"


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact), via the tangent-number triangle.

_bernoulli_cache: dict[int, Fraction] = {}
_bernoulli_lock = threading.Lock()


def _tangent_numbers(n: int) -> list[int]:
    # T[k] = k-th tangent number, 1-indexed; integer triangle recurrence.
    T = [0] * (n + 1)
    T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    return T


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2 == 1:
        return Fraction(0)
    with _bernoulli_lock:
        if m not in _bernoulli_cache:
            n = m // 2
            T = _tangent_numbers(n)
            for i in range(1, n + 1):
                mm = 2 * i
                sign = 1 if i % 2 == 1 else -1
                _bernoulli_cache[mm] = Fraction(sign * mm * T[i],
                                                4**i * (4**i - 1))
        return _bernoulli_cache[m]


# ---------------------------------------------------------------------------
# Constants.

_const_cache: dict[tuple[str, int], tuple] = {}
_const_lock = threading.Lock()


def const_eval(name: str, ctx: Context) -> ApproxR:
    """One of the classical constants pi, log2, log3, catalan.

    Deterministic for fixed (name, precision); cached per working precision.
    """
    if name not in CONSTANT_NAMES:
        raise ValueError(f"unknown constant {name!r}")
    key = (name, ctx.dps)
    with _const_lock:
        hit = _const_cache.get(key)
    if hit is not None:
        return ApproxR(mp.mpf(hit[0]), mp.mpf(hit[1]))
    with ctx.workdps(3):
        if name == "pi":
            v = +mp.pi
        elif name == "log2":
            v = mp.log(2)
        elif name == "log3":
            v = mp.log(3)
        else:
            v = +mp.catalan
        e = _ulp_allowance(v)
        v = mp.mpf(v)
        e = mp.mpf(e)
    with _const_lock:
        _const_cache[key] = (v, e)
    return ApproxR(v, e)


def sqrt3(ctx: Context) -> ApproxR:
    with ctx.workdps(3):
        v = mp.sqrt(3)
        return ApproxR(mp.mpf(v), mp.mpf(_ulp_allowance(v)))


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin with an explicit remainder majorant.

_zeta_cache: dict[tuple[int, Fraction, int], tuple] = {}
_zeta_lock = threading.Lock()


def hurwitz_zeta(s: int, a: Fraction, ctx: Context) -> ApproxR:
    """zeta(s, a) for integer s >= 2 and rational 0 < a <= 1.

    Euler-Maclaurin: direct sum to M, integral and midpoint terms at M,
    Bernoulli corrections until the next term falls below target.  For
    f(x) = (x+a)^-s with s real positive, the derivatives of f alternate
    in sign, so the remainder after q correction terms is bounded in
    magnitude by the first omitted term; that bound is what ``err`` carries
    (plus a rounding allowance).
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    a = Fraction(a)
    if not (0 < a <= 1):
        raise ValueError("a must satisfy 0 < a <= 1")
    key = (s, a, ctx.dps)
    with _zeta_lock:
        hit = _zeta_cache.get(key)
    if hit is not None:
        return ApproxR(mp.mpf(hit[0]), mp.mpf(hit[1]))

    extra = 8
    dps_work = ctx.dps + extra
    target = mp.mpf(10) ** (-(ctx.dps + 3))
    M = max(s, int(0.6 * dps_work) + 8)
    result = None
    while result is None:
        with mp.workdps(dps_work):
            av = mp.mpf(a.numerator) / a.denominator
            S = mp.mpf(0)
            for n in range(M):
                S += (n + av) ** (-s)
            w = M + av
            total = S + w ** (1 - s) / (s - 1) + w ** (-s) / 2
            # Bernoulli corrections; rising(s, 2j-1) = s (s+1) ... (s+2j-2)
            rising = 1
            wpow = w ** (-s - 1)
            w2 = w * w
            prev_mag = mp.inf
            q = 0
            bound = None
            while True:
                q += 1
                rising *= (s + 2 * q - 2) * (s + 2 * q - 3) if q > 1 else s
                if q > 1:
                    wpow /= w2
                b = bernoulli(2 * q)
                term = (mp.mpf(b.numerator) / b.denominator
                        / math.factorial(2 * q) * rising * wpow)
                mag = abs(term)
                if mag <= target:
                    bound = mag
                    break
                if mag >= prev_mag or q > dps_work:
                    break  # asymptotic series bottomed out; need larger M
                total += term
                prev_mag = mag
            if bound is None:
                M *= 2
                continue
            total += term * 0  # remainder majorant carried in ``bound``
            ops = M + 6 * q + 16
            round_err = mp.mpf(ops) * _ulp_allowance(total, 1)
            result = (mp.mpf(total), mp.mpf(bound + round_err))
    with _zeta_lock:
        _zeta_cache[key] = result
    return ApproxR(result[0], result[1])


def zeta(s: int, ctx: Context) -> ApproxR:
    """Riemann zeta at an integer s >= 2."""
    if s < 2:
        raise ValueError("s must be >= 2")
    return hurwitz_zeta(s, Fraction(1), ctx)


def dirichlet_L_chi3(s: int, ctx: Context) -> ApproxR:
    """L(s, chi_-3) = 3^-s (zeta(s,1/3) - zeta(s,2/3)) for integer s >= 2."""
    if s < 2:
        raise ValueError("s must be >= 2")
    with ctx.workdps(8):
        d = hurwitz_zeta(s, Fraction(1, 3), ctx) - hurwitz_zeta(s, Fraction(2, 3), ctx)
        return d.scale(Fraction(1, 3**s))


def polylog_root_of_unity(k: int, r: int, N: int, ctx: Context) -> ApproxC:
    """Li_k(xi_N^r) via Hurwitz zeta character sums (k >= 2) or a direct
    logarithm (k = 1, xi_N^r != 1).

    Li_k(z) = N^-k sum_{j=1..N} z^j zeta(k, j/N) for z an N-th root of
    unity and k >= 2.  Independent of the iterated-integral evaluator, so
    it can serve as the second route in polylog cross-checks.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    r %= N
    if k == 1:
        if r == 0:
            raise ValueError("Li_1(1) diverges")
        with ctx.workdps(8):
            z = mp.e ** (2j * mp.pi * r / N)
            v = -mp.log(1 - z)
            return ApproxC(v, 8 * _ulp_allowance(v, 1))
    if k < 1:
        raise ValueError("k must be >= 1")
    with ctx.workdps(8):
        acc = ApproxC(0)
        for j in range(1, N + 1):
            hz = hurwitz_zeta(k, Fraction(j, N), ctx)
            ang = 2 * mp.pi * r * j / N
            root = ApproxC(mp.mpc(mp.cos(ang), mp.sin(ang)), _ulp_allowance(1, 1))
            acc = acc + root * ApproxC.from_real(hz)
        scaled = ApproxC(acc.value / N**k, acc.err / mp.mpf(N) ** k
                         + _ulp_allowance(acc.value))
        return scaled
