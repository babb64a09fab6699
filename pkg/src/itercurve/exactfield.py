"""Exact arithmetic in Q, Q(z4) and Q(z6).

Elements are a + b * z_N with rational a, b, where z_N = exp(2 pi i / N)
and N is 4 or 6.  Reduction rules: z4^2 = -1 and z6^2 = z6 - 1.  The cube
root z3 = z6^2 and sqrt(-3) = 2 z6 - 1 live inside the level-6 field, so
one quadratic field per curve suffices.

Also provides the weight-one regularized value of a length-one iterated
integral between possibly coinciding endpoints, and the S-unit membership
test used to discharge the ramification hypothesis of the motivic lifting
criterion.  ``s_unit_check`` relies only on norm support: Z[z4] and Z[z6]
are PIDs and each rational prime allowed here ramifies or is inert into a
single prime ideal, so the support of the norm determines the support of
the ideal over those primes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .numkernel import ApproxC, Context, _ulp_allowance, sqrt3

__all__ = [
    "Rat",
    "Cyc",
    "zeta4",
    "zeta6",
    "xi3",
    "sqrt_minus3",
    "mu",
    "tilde_I",
    "s_unit_check",
]

Rat = Fraction

_CURVE_PRIMES = {"g": (2,), "h": (2, 3)}


@dataclass(frozen=True)
class Cyc:
    """a + b * z_N in Q(z_N), N in {4, 6}, coordinates always reduced."""

    level: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.level not in (4, 6):
            raise ValueError("level must be 4 or 6")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rat(cls, level: int, r) -> "Cyc":
        return cls(level, Fraction(r), Fraction(0))

    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.level != self.level:
                raise ValueError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.from_rat(self.level, other)
        raise TypeError(f"cannot coerce {other!r} to Cyc")

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> "Cyc":
        o = self._coerce(other)
        return Cyc(self.level, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> "Cyc":
        o = self._coerce(other)
        return Cyc(self.level, self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> "Cyc":
        return self._coerce(other) - self

    def __neg__(self) -> "Cyc":
        return Cyc(self.level, -self.a, -self.b)

    def __mul__(self, other) -> "Cyc":
        o = self._coerce(other)
        ac, bd = self.a * o.a, self.b * o.b
        cross = self.a * o.b + self.b * o.a
        if self.level == 4:
            # z4^2 = -1
            return Cyc(4, ac - bd, cross)
        # z6^2 = z6 - 1
        return Cyc(6, ac - bd, cross + bd)

    __rmul__ = __mul__

    def conj(self) -> "Cyc":
        """The nontrivial field automorphism: z4 -> -z4, z6 -> 1 - z6."""
        if self.level == 4:
            return Cyc(4, self.a, -self.b)
        return Cyc(6, self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        """Field norm to Q: a^2 + b^2 (level 4) or a^2 + ab + b^2 (level 6)."""
        if self.level == 4:
            return self.a * self.a + self.b * self.b
        return self.a * self.a + self.a * self.b + self.b * self.b

    def inv(self) -> "Cyc":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Cyc")
        c = self.conj()
        return Cyc(self.level, c.a / n, c.b / n)

    def __truediv__(self, other) -> "Cyc":
        return self * self._coerce(other).inv()

    def __pow__(self, e: int) -> "Cyc":
        if e < 0:
            return self.inv() ** (-e)
        out = Cyc.from_rat(self.level, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- predicates / views -------------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, Cyc):
            return NotImplemented
        return (self.level, self.a, self.b) == (other.level, other.a, other.b)

    def __hash__(self):
        return hash((self.level, self.a, self.b))

    # -- numeric embedding, z_N = exp(2 pi i / N) ----------------------
    def embed(self, ctx: Context) -> ApproxC:
        with ctx.workdps(5):
            av = mp.mpf(self.a.numerator) / self.a.denominator
            bv = mp.mpf(self.b.numerator) / self.b.denominator
            if self.level == 4:
                v = mp.mpc(av, bv)
                return ApproxC(v, 2 * _ulp_allowance(v, 1))
            # z6 = 1/2 + sqrt(3)/2 i
            s3 = sqrt3(ctx)
            v = mp.mpc(av + bv / 2, s3.value * bv / 2)
            e = abs(bv) * s3.err + 4 * _ulp_allowance(v, 1)
            return ApproxC(v, e)

    # -- canonical text form -------------------------------------------
    def __str__(self) -> str:
        return f"{self.a}+{self.b}*z{self.level}"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Cyc":
        m = re.fullmatch(r"\s*(-?\d+(?:/\d+)?)\+(-?\d+(?:/\d+)?)\*z([46])\s*", text)
        if not m:
            raise ValueError(f"cannot parse Cyc from {text!r}")
        return cls(int(m.group(3)), Fraction(m.group(1)), Fraction(m.group(2)))


def zeta4() -> Cyc:
    return Cyc(4, Fraction(0), Fraction(1))


def zeta6() -> Cyc:
    return Cyc(6, Fraction(0), Fraction(1))


def xi3() -> Cyc:
    """z3 = z6^2 = z6 - 1 inside the level-6 field."""
    return Cyc(6, Fraction(-1), Fraction(1))


def sqrt_minus3() -> Cyc:
    """sqrt(-3) = 2 z6 - 1."""
    return Cyc(6, Fraction(-1), Fraction(2))


def mu(level: int) -> tuple[Cyc, ...]:
    """The level-th roots of unity (1, z, z^2, ...) inside Q(z_level)."""
    z = zeta4() if level == 4 else zeta6()
    out = []
    cur = Cyc.from_rat(level, 1)
    for _ in range(level):
        out.append(cur)
        cur = cur * z
    return tuple(out)


def tilde_I(a: Cyc, b, c) -> Cyc:
    """Regularized weight-one integral datum for the endpoint triple (a, b, c).

    Total on all inputs:
        (c-b)/(a-b)  if a != b and b != c
        c-b          if a == b and b != c
        (a-b)^-1     if a != b and b == c
        1            if a == b == c
    """
    b = a._coerce(b)
    c = a._coerce(c)
    if a != b and b != c:
        return (c - b) / (a - b)
    if a == b and b != c:
        return c - b
    if a != b and b == c:
        return (a - b).inv()
    return Cyc.from_rat(a.level, 1)


def _support_only(n: int, primes: tuple[int, ...]) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def s_unit_check(x: Cyc, curve: str) -> bool:
    """Whether x lies in the group of S-units, S the primes over 2 (curve g)
    or over 2 and 3 (curve h).

    x is cleared to a quotient alpha / d with alpha of integer coordinates
    and d a rational integer; membership holds iff both norms factor over
    the allowed primes (norm support determines ideal support here).
    """
    if curve not in _CURVE_PRIMES:
        raise ValueError(f"unknown curve {curve!r}")
    if x.is_zero():
        raise ValueError("s_unit_check requires a nonzero element")
    primes = _CURVE_PRIMES[curve]
    d = math.lcm(x.a.denominator, x.b.denominator)
    alpha = x * d
    n_alpha = alpha.norm()
    assert n_alpha.denominator == 1
    return _support_only(n_alpha.numerator, primes) and _support_only(d * d, primes)
