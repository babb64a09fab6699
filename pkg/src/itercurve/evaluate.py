"""Numerical evaluation of the iterated integrals.

Two routes:

* ``eval_curve_direct``: the iterated-sum representation of a curve word,
  truncated at a caller-chosen block count.  Cheap, float-precision, with
  a heuristic tail estimate.  Useful as a sanity oracle, never for
  acceptance thresholds.

* ``eval_curve_word``: pull the word back to projective-line words and
  evaluate each one to arbitrary precision by splitting the unit path at
  1/2.  On [0, 1/2] a word of letters a_1..a_m (nonzero letters of modulus
  >= 1) has the absolutely convergent expansion

      I(0; a_1..a_m; 1/2) = sum_{0 < n_1 <= ... <= n_m}
          prod_j gamma(n_j - n_{j-1}, a_j) (1/2)^{n_m} prod_j (1/n_j),

  gamma(r, 0) = [r == 0], gamma(r, a) = -a^-r for r >= 1 and a != 0,
  gamma(0, a != 0) = 0, evaluated by an O(N m) accumulator recurrence.
  The second half is folded onto [0, 1/2] by path reversal and t -> 1 - t,
  which maps letters a to 1 - a:

      I(0; a_1..a_k; 1) = sum_s I(0; a_1..a_s; 1/2)
                          * (-1)^(k-s) I(0; 1-a_k, .., 1-a_{s+1}; 1/2).

  Truncation error bound used (proved in ``_tail_bound``): with f_m(n) the
  coefficient of (1/2)^n in the expansion, |f_m(n)| <= (1 + ln n)^(m-1) / n
  by induction over letters (|gamma| <= 1, each level divides by n or
  prefix-sums against a geometric weight), and consecutive bounding terms
  decay by at least a factor 0.57 once n >= max(16, 2(m-1)), so

      |tail after N| <= 3 (1 + ln(N+1))^(m-1) 2^-N / (N+1).

Closed forms: exact rational combinations over the weight-graded constant
monomials pi^a log2^b log3^c prod zeta(odd) prod L(even, chi_-3), with an
extra sqrt(3) half-power marker needed on curve h.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .descent import P1Comb, pullback_word
from .exactfield import Cyc, mu
from .numkernel import (ApproxC, ApproxR, Context, _ulp_allowance,
                        const_eval, dirichlet_L_chi3, sqrt3, zeta)
from .words import CurveLetter, CurveWord, is_admissible

__all__ = [
    "SeriesPlan",
    "plan_series",
    "eval_p1_half",
    "eval_p1_full",
    "eval_curve_word",
    "eval_curve_direct",
    "coeff_c",
    "mlv",
    "polylog_ii",
    "ttilde",
    "ConstMonomial",
    "ClosedForm",
    "closed_form_special",
    "curve_generator_value",
    "clear_value_cache",
]


# ---------------------------------------------------------------------------
# Iterated-sum coefficients of the curve letters (exact).

def _central_binom_half(n: int, scale: Fraction) -> Fraction:
    return scale ** n * math.comb(n, n // 2)


def coeff_c(n: int, letter: CurveLetter) -> Fraction:
    """Exact coefficient c(n, w_s) of the power-series expansion
    w_s = sum_n c(n, w_s) x^(n-1) dx of a curve letter.

    The w4/w5 coefficients carry the factor 1/2 forced by the generating
    identities 1/(x+2y) = 1/sqrt(4-3x^2) = (1/2)(1-(3/4)x^2)^(-1/2); see
    the generating-identity tests.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    letter = CurveLetter(*letter).validate()
    idx = letter.index
    if idx == 0:
        return Fraction(1 if n == 0 else 0)
    if idx == 1:
        return Fraction(0 if n == 0 else 1)
    if idx == 2:
        if n % 2 == 1:
            return _central_binom_half(n - 1, Fraction(1, 2))
        return Fraction(0)
    if idx == 3:
        if n % 2 == 0:
            return _central_binom_half(n, Fraction(1, 2))
        return Fraction(0)
    if idx == 4:
        if n % 2 == 1:
            return Fraction(1, 2) * (Fraction(3, 16) ** ((n - 1) // 2)
                                     * math.comb(n - 1, (n - 1) // 2))
        return Fraction(0)
    if idx == 5:
        if n % 2 == 0:
            return Fraction(1, 2) * (Fraction(3, 16) ** (n // 2)
                                     * math.comb(n, n // 2))
        return Fraction(0)
    # w6
    total = Fraction(0)
    for m in range((n - 1) // 2 + 1) if n >= 1 else []:
        total += Fraction(3, 16) ** m * math.comb(2 * m, m)
    return total / 2


# ---------------------------------------------------------------------------
# Accelerated projective-line evaluation at the split point 1/2.

@dataclass(frozen=True)
class SeriesPlan:
    """Truncation plan for one half-path expansion."""

    letters: tuple
    n_terms: int
    work_dps: int
    tail: mp.mpf
    z: Fraction = field(default=Fraction(1, 2))


def _tail_bound(n: int, m: int) -> mp.mpf:
    # Valid for n >= max(16, 2(m-1)); see the module docstring for the proof
    # sketch of the two inequalities this combines.
    with mp.workdps(20):
        return 3 * mp.mpf(1 + mp.log(n + 1)) ** (m - 1) / (n + 1) * mp.mpf(2) ** (-n)


def plan_series(letters: tuple, ctx: Context) -> SeriesPlan:
    m = len(letters)
    if m == 0:
        return SeriesPlan((), 0, ctx.dps, mp.mpf(0))
    level = letters[0].level
    zero = Cyc.from_rat(level, 0)
    if letters[0] == zero:
        raise ValueError("leading letter 0 diverges at the basepoint")
    for a in letters:
        if a != zero and a.norm() < 1:
            raise ValueError(f"letter {a} has modulus < 1; series at 1/2 invalid")
    with mp.workdps(20):
        target = mp.mpf(10) ** (-(ctx.dps + 3))
    n = max(16, 2 * (m - 1))
    while _tail_bound(n, m) > target:
        n += 16
        if n > 10**7:
            raise ValueError("truncation length overflow before target precision")
    mstar = max(1.0, float((1 + math.log(n)) ** (m - 1)))
    ops = 12 * m * n + 16
    extra = int(math.ceil(math.log10(40 * ops * mstar))) + 3
    return SeriesPlan(tuple(letters), n, ctx.dps + extra, _tail_bound(n, m))


# In-memory value caches, keyed by (letters, working digits).  Deterministic
# values, so concurrent recomputation is benign; the lock only protects the
# dict structure.
_half_cache: dict = {}
_full_cache: dict = {}
_cache_lock = threading.Lock()


def clear_value_cache() -> None:
    with _cache_lock:
        _half_cache.clear()
        _full_cache.clear()


def eval_p1_half(letters: tuple, ctx: Context) -> ApproxC:
    """I(0; letters; 1/2) with a rigorous error bound."""
    letters = tuple(letters)
    if not letters:
        return ApproxC(1, 0)
    key = (letters, ctx.dps)
    with _cache_lock:
        hit = _half_cache.get(key)
    if hit is not None:
        return ApproxC(hit[0], hit[1])

    plan = plan_series(letters, ctx)
    m = len(letters)
    n_max = plan.n_terms
    embed_ctx = Context(plan.work_dps, 0)
    with mp.workdps(plan.work_dps):
        embedded = [a.embed(embed_ctx) for a in letters]
        embed_err = max(e.err for e in embedded)
        # layer 1
        a1 = embedded[0].value
        inv_a = 1 / a1
        f = [mp.mpc(0)] * (n_max + 1)
        p = mp.mpc(1)
        for n in range(1, n_max + 1):
            p *= inv_a
            f[n] = -p / n
        # layers 2..m
        zero = Cyc.from_rat(letters[0].level, 0)
        for j in range(1, m):
            if letters[j] == zero:
                for n in range(1, n_max + 1):
                    f[n] = f[n] / n
            else:
                inv_a = 1 / embedded[j].value
                g = [mp.mpc(0)] * (n_max + 1)
                s = mp.mpc(0)
                for n in range(1, n_max + 1):
                    s = (s + f[n - 1]) * inv_a
                    g[n] = -s / n
                f = g
        half = mp.mpf(1) / 2
        total = mp.mpc(0)
        zpow = mp.mpf(1)
        for n in range(1, n_max + 1):
            zpow *= half
            total += f[n] * zpow
        mstar = max(1.0, float((1 + math.log(n_max)) ** (m - 1)))
        ops = 12 * m * n_max + 16
        round_err = mp.mpf(40 * ops) * mstar * (mp.mpf(2) ** (4 - mp.mp.prec)
                                                + embed_err)
        err = plan.tail + round_err
        value = mp.mpc(total)
        err = mp.mpf(err)
    with _cache_lock:
        _half_cache[key] = (value, err)
    return ApproxC(value, err)


def _validate_full_letters(letters: tuple) -> None:
    if not letters:
        return
    level = letters[0].level
    zero = Cyc.from_rat(level, 0)
    one = Cyc.from_rat(level, 1)
    if letters[0] == zero:
        raise ValueError("leading letter 0: integral diverges at 0")
    if letters[-1] == one:
        raise ValueError("trailing letter 1: integral diverges at 1")
    for a in letters:
        if a.level != level:
            raise ValueError("mixed letter levels")
        for b in (a, one - a):
            if b != zero and b.norm() < 1:
                raise ValueError(
                    f"letter {a} leaves the supported universe "
                    "(it or its flip has modulus < 1)")


def eval_p1_full(letters: tuple, ctx: Context) -> ApproxC:
    """I(0; letters; 1) by path splitting at 1/2, rigorous error propagation."""
    letters = tuple(letters)
    _validate_full_letters(letters)
    if not letters:
        return ApproxC(1, 0)
    key = (letters, ctx.dps)
    with _cache_lock:
        hit = _full_cache.get(key)
    if hit is not None:
        return ApproxC(hit[0], hit[1])
    k = len(letters)
    one = Cyc.from_rat(letters[0].level, 1)
    with ctx.workdps(8):
        total = ApproxC(0)
        for s in range(k + 1):
            left = eval_p1_half(letters[:s], ctx)
            flipped = tuple(one - a for a in reversed(letters[s:]))
            right = eval_p1_half(flipped, ctx)
            term = left * right
            if (k - s) % 2 == 1:
                term = -term
            total = total + term
        value, err = mp.mpc(total.value), mp.mpf(total.err)
    with _cache_lock:
        _full_cache[key] = (value, err)
    return ApproxC(value, err)


def eval_curve_word(w: CurveWord, ctx: Context) -> ApproxR:
    """The iterated integral of an admissible curve word, as a real number.

    The imaginary part of the assembled value must vanish within the error
    bound (the pullback is Galois-invariant); a larger residual is a bug.
    """
    if w.weight == 0:
        return ApproxR(1, 0)
    if not is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    comb = pullback_word(w)
    return eval_p1_comb_real(comb, ctx)


def eval_p1_comb_real(comb: P1Comb, ctx: Context) -> ApproxR:
    acc = eval_p1_comb(comb, ctx)
    if abs(acc.value.imag) > acc.err:
        raise ArithmeticError(
            f"imaginary residual {mp.nstr(acc.value.imag, 5)} exceeds error "
            f"bound {mp.nstr(acc.err, 5)}; this indicates a bug")
    return ApproxR(acc.value.real, acc.err)


def eval_p1_comb(comb: P1Comb, ctx: Context) -> ApproxC:
    with ctx.workdps(8):
        acc = ApproxC(0)
        for word, coeff in comb.items():
            acc = acc + coeff.embed(ctx) * eval_p1_full(word, ctx)
        return acc


def polylog_ii(k: int, alpha: Cyc, ctx: Context) -> ApproxC:
    """Li_k at a root of unity via its iterated-integral representation."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if alpha not in mu(alpha.level):
        raise ValueError("alpha must be a root of unity of the letter field")
    if k == 1 and alpha == 1:
        raise ValueError("Li_1(1) diverges")
    zero = Cyc.from_rat(alpha.level, 0)
    letters = (alpha.inv(),) + (zero,) * (k - 1)
    return -eval_p1_full(letters, ctx)


def mlv(ks, alphas, level: int, ctx: Context) -> ApproxC:
    """Shuffle-type multiple L-value of the given level.

    ks are positive integers, alphas roots of unity (as exact field
    elements), with (k_d, alpha_d) != (1, 1).
    """
    ks = list(ks)
    alphas = list(alphas)
    if len(ks) != len(alphas) or not ks:
        raise ValueError("ks and alphas must be nonempty, equal length")
    roots = mu(level)
    zero = Cyc.from_rat(level, 0)
    letters = []
    for k, a in zip(ks, alphas):
        if k < 1:
            raise ValueError("indices must be >= 1")
        if a not in roots:
            raise ValueError(f"{a} is not a level-{level} root of unity")
        letters.append(a.inv())
        letters.extend([zero] * (k - 1))
    if ks[-1] == 1 and alphas[-1] == 1:
        raise ValueError("the pair (k_d, alpha_d) = (1, 1) diverges")
    v = eval_p1_full(tuple(letters), ctx)
    return -v if len(ks) % 2 == 1 else v


def ttilde(ks, ctx: Context) -> ApproxR:
    """Multiple T-tilde value: the curve-g word w2 w3^(k1-1) ... w2 w3^(kd-1)."""
    ks = list(ks)
    if not ks or any(k < 1 for k in ks):
        raise ValueError("indices must be positive integers")
    letters: list[int] = []
    for k in ks:
        letters.append(2)
        letters.extend([3] * (k - 1))
    return eval_curve_word(CurveWord("g", tuple(letters)), ctx)


# ---------------------------------------------------------------------------
# Direct iterated-sum evaluation (float precision, heuristic error).

def _coeff_array(letter: CurveLetter, n_max: int) -> np.ndarray:
    """c(0..n_max, letter) as float64, built by stable ratio recurrences."""
    idx = letter.index
    c = np.zeros(n_max + 1)
    if idx == 0:
        c[0] = 1.0
    elif idx == 1:
        c[1:] = 1.0
    elif idx in (2, 3, 4, 5):
        start = 1 if idx in (2, 4) else 0
        val = 1.0 if idx in (2, 3) else 0.5
        ratio3 = idx in (4, 5)
        n = start
        while n <= n_max:
            c[n] = val
            if idx in (2, 4):
                val *= n / (n + 1)
            else:
                val *= (n + 1) / (n + 2)
            if ratio3:
                val *= 0.75
            n += 2
    else:  # w6: half the partial sums of (3/16)^m binom(2m, m)
        run = 0.0
        term = 1.0
        mm = 0
        for n in range(1, n_max + 1):
            if (n - 1) % 2 == 0:
                run += term
                term *= 0.375 * (2 * mm + 1) / (mm + 1)
                mm += 1
            c[n] = 0.5 * run
    return c


def eval_curve_direct(w: CurveWord, n_terms: int, ctx: Context) -> ApproxR:
    """Truncated iterated-sum value of an admissible word.

    The value is the plain partial sum over blocks n_k <= n_terms; ``err``
    is a heuristic last-block extrapolation (plus a float roundoff
    allowance) and is flagged as such.  Words whose final letter is w0 or
    w5 converge fast; words ending in the square-root letters only like
    n^(-1/2), and the heuristic bound reports that honestly.
    """
    if not is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    if n_terms < 10:
        raise ValueError("n_terms must be >= 10")
    if w.weight == 0:
        return ApproxR(1, 0)
    n = int(n_terms)
    f = None
    for letter in w.letter_objects():
        idx = letter.index
        if f is None:
            c = _coeff_array(letter, n)
            f = c.copy()
            f[0] = 0.0
            f[1:] /= np.arange(1, n + 1)
            continue
        if idx == 0:
            f[1:] /= np.arange(1, n + 1)
        elif idx == 1:
            g = np.cumsum(f)
            g[1:] = g[:-1] / np.arange(1, n + 1)
            g[0] = 0.0
            f = g
        else:
            from scipy.signal import fftconvolve
            c = _coeff_array(letter, n)
            g = fftconvolve(f, c)[:n + 1]
            g[1:] /= np.arange(1, n + 1)
            g[0] = 0.0
            f = g
    blocks = np.add.reduceat(f, [0, (9 * n) // 10])
    value = float(blocks.sum())
    last_block = abs(float(blocks[-1]))
    # last 10% of blocks, extrapolated as if the terms kept that density
    tail_est = last_block * 10.0 * 2.0
    round_est = 1e-15 * n * max(1.0, abs(value)) * w.weight
    return ApproxR(value, tail_est + round_est, heuristic=True)


# ---------------------------------------------------------------------------
# Exact closed forms over the constant basis.

@dataclass(frozen=True)
class ConstMonomial:
    """pi^a log2^b log3^c prod zeta(j) prod L(j', chi_-3) sqrt3^s."""

    pi_pow: int = 0
    log2_pow: int = 0
    log3_pow: int = 0
    zeta_args: tuple[int, ...] = ()
    l_args: tuple[int, ...] = ()
    sqrt3_pow: int = 0

    def __post_init__(self):
        if any(j < 3 or j % 2 == 0 for j in self.zeta_args):
            raise ValueError("zeta arguments must be odd and >= 3")
        if any(j < 2 or j % 2 == 1 for j in self.l_args):
            raise ValueError("L arguments must be even and >= 2")
        if self.sqrt3_pow not in (0, 1):
            raise ValueError("sqrt3 power must be 0 or 1")
        object.__setattr__(self, "zeta_args", tuple(sorted(self.zeta_args)))
        object.__setattr__(self, "l_args", tuple(sorted(self.l_args)))

    @property
    def weight(self) -> int:
        return (self.pi_pow + self.log2_pow + self.log3_pow
                + sum(self.zeta_args) + sum(self.l_args))

    def mul(self, other: "ConstMonomial") -> tuple["ConstMonomial", Fraction]:
        s = self.sqrt3_pow + other.sqrt3_pow
        extra = Fraction(3) ** (s // 2)
        mono = ConstMonomial(self.pi_pow + other.pi_pow,
                             self.log2_pow + other.log2_pow,
                             self.log3_pow + other.log3_pow,
                             self.zeta_args + other.zeta_args,
                             self.l_args + other.l_args,
                             s % 2)
        return mono, extra

    def evaluate(self, ctx: Context) -> ApproxR:
        with ctx.workdps(8):
            out = ApproxR(1, 0)
            for _ in range(self.pi_pow):
                out = out * const_eval("pi", ctx)
            for _ in range(self.log2_pow):
                out = out * const_eval("log2", ctx)
            for _ in range(self.log3_pow):
                out = out * const_eval("log3", ctx)
            for j in self.zeta_args:
                out = out * zeta(j, ctx)
            for j in self.l_args:
                out = out * dirichlet_L_chi3(j, ctx)
            if self.sqrt3_pow:
                out = out * sqrt3(ctx)
            return out

    def __str__(self) -> str:
        parts = []
        if self.pi_pow:
            parts.append("pi" + (f"^{self.pi_pow}" if self.pi_pow > 1 else ""))
        if self.log2_pow:
            parts.append("log2" + (f"^{self.log2_pow}" if self.log2_pow > 1 else ""))
        if self.log3_pow:
            parts.append("log3" + (f"^{self.log3_pow}" if self.log3_pow > 1 else ""))
        parts.extend(f"zeta({j})" for j in self.zeta_args)
        parts.extend(f"L({j},chi3)" for j in self.l_args)
        if self.sqrt3_pow:
            parts.append("sqrt3")
        return "*".join(parts) if parts else "1"


class ClosedForm:
    """Finite Q-linear combination of constant monomials."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[ConstMonomial, Fraction] | None = None):
        self.coeffs: dict[ConstMonomial, Fraction] = {}
        if coeffs:
            for m, c in coeffs.items():
                self._accumulate(m, c)

    def _accumulate(self, mono: ConstMonomial, c: Fraction) -> None:
        c = Fraction(c)
        if c == 0:
            return
        new = self.coeffs.get(mono, Fraction(0)) + c
        if new == 0:
            self.coeffs.pop(mono, None)
        else:
            self.coeffs[mono] = new

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        out = ClosedForm(dict(self.coeffs))
        for m, c in other.coeffs.items():
            out._accumulate(m, c)
        return out

    def scale(self, c) -> "ClosedForm":
        c = Fraction(c)
        return ClosedForm({m: v * c for m, v in self.coeffs.items()})

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        return self + other.scale(-1)

    def mul(self, other: "ClosedForm") -> "ClosedForm":
        out = ClosedForm()
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono, extra = m1.mul(m2)
                out._accumulate(mono, c1 * c2 * extra)
        return out

    def coefficient(self, mono: ConstMonomial) -> Fraction:
        return self.coeffs.get(mono, Fraction(0))

    def log2_part(self) -> "ClosedForm":
        return ClosedForm({m: c for m, c in self.coeffs.items() if m.log2_pow})

    def weights(self) -> set[int]:
        return {m.weight for m in self.coeffs}

    def evaluate(self, ctx: Context) -> ApproxR:
        with ctx.workdps(8):
            out = ApproxR(0, 0)
            for mono, c in self.coeffs.items():
                out = out + mono.evaluate(ctx).scale(c)
            return out

    def __eq__(self, other) -> bool:
        return isinstance(other, ClosedForm) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda t: str(t[0]))
        return " + ".join(f"({c})*{m}" for m, c in items) if items else "0"


def _neg_one_pow(e: int) -> int:
    return -1 if e % 2 else 1


def _inv_sqrt3_pow(e: int) -> tuple[Fraction, int]:
    # 1/sqrt(3)^e as (rational, sqrt3 flag)
    return Fraction(1, 3 ** ((e + 1) // 2)), e % 2


def curve_generator_value(curve: str) -> ClosedForm:
    """Closed form of the weight-1 generator: I_g(w2) = pi/2,
    I_h(w4) = pi/(3 sqrt 3) = sqrt(3) pi / 9."""
    if curve == "g":
        return ClosedForm({ConstMonomial(pi_pow=1): Fraction(1, 2)})
    if curve == "h":
        return ClosedForm({ConstMonomial(pi_pow=1, sqrt3_pow=1): Fraction(1, 9)})
    raise ValueError(f"unknown curve {curve!r}")


def _trailing_closed_form(curve: str, k: int) -> ClosedForm:
    # The word phi^(k-1) w0 with phi = w2 (g) or w4 (h).
    out = ClosedForm()
    if curve == "g":
        for j in range(3, k + 1, 2):
            c = (-_neg_one_pow((1 - j) // 2) * Fraction(1, math.factorial(k - j))
                 * Fraction(1, 2 ** (k - j)) * Fraction(1, 2 ** (j - 1))
                 * (Fraction(1, 2 ** (j - 1)) - 1))
            out._accumulate(ConstMonomial(pi_pow=k - j, zeta_args=(j,)), c)
        out._accumulate(ConstMonomial(pi_pow=k - 1, log2_pow=1),
                        Fraction(1, math.factorial(k - 1) * 2 ** (k - 1)))
        if k % 2 == 1:
            out._accumulate(ConstMonomial(zeta_args=(k,)),
                            _neg_one_pow((1 - k) // 2) * Fraction(1, 2 ** (k - 1)))
        return out
    # curve h
    r, s = _inv_sqrt3_pow(k - 1)
    out._accumulate(ConstMonomial(pi_pow=k - 1, log3_pow=1, sqrt3_pow=s),
                    r * Fraction(1, math.factorial(k - 1))
                    * Fraction(1, 3 ** (k - 1)) * Fraction(1, 2))
    if k % 2 == 1:
        r, s = _inv_sqrt3_pow(k - 1)
        assert s == 0
        out._accumulate(ConstMonomial(zeta_args=(k,)),
                        _neg_one_pow((1 - k) // 2) * r * Fraction(1, 2 ** (k - 1)))
    for j in range(2, k + 1, 2):
        r, s = _inv_sqrt3_pow(k - 2)
        c = (r * _neg_one_pow((2 - j) // 2) * Fraction(1, math.factorial(k - j))
             * Fraction(1, 3 ** (k - j)) * Fraction(1, 2 ** j))
        out._accumulate(ConstMonomial(pi_pow=k - j, l_args=(j,), sqrt3_pow=s), c)
    for j in range(3, k + 1, 2):
        r, s = _inv_sqrt3_pow(k - 1)
        c = (-r * _neg_one_pow((1 - j) // 2) * Fraction(1, math.factorial(k - j))
             * Fraction(1, 3 ** (k - j)) * Fraction(1, 2 ** j)
             * (Fraction(1, 3 ** (j - 1)) - 1))
        out._accumulate(ConstMonomial(pi_pow=k - j, zeta_args=(j,), sqrt3_pow=s), c)
    return out


_cf_cache: dict[tuple[str, int, int], ClosedForm] = {}


def closed_form_special(curve: str, j: int, k: int) -> ClosedForm:
    """Exact closed form of I(phi^j w0 phi^(k-j-1)), phi the square-root
    letter of the curve, for k >= 2 and 1 <= j <= k-1.

    j = k-1 is the trailing-w0 base case; smaller j follows from the
    one-letter shuffle recursion
        I(phi^j eta phi^(k-j-1)) = ( I(phi^j eta phi^(k-j-2)) I(phi)
                                     - (j+1) I(phi^(j+1) eta phi^(k-j-2)) )
                                   / (k-j-1).
    """
    if curve not in ("g", "h"):
        raise ValueError(f"unknown curve {curve!r}")
    if k < 2 or j < 1 or j > k - 1:
        raise ValueError(f"(j, k) = ({j}, {k}) out of range (need k>=2, 1<=j<=k-1)")
    key = (curve, j, k)
    if key in _cf_cache:
        return _cf_cache[key]
    if j == k - 1:
        out = _trailing_closed_form(curve, k)
    else:
        lower = closed_form_special(curve, j, k - 1)
        upper = closed_form_special(curve, j + 1, k)
        out = (lower.mul(curve_generator_value(curve))
               + upper.scale(-(j + 1))).scale(Fraction(1, k - j - 1))
    _cf_cache[key] = out
    return out


def special_word(curve: str, j: int, k: int) -> CurveWord:
    """The word phi^j w0 phi^(k-j-1) matching ``closed_form_special``."""
    phi = 2 if curve == "g" else 4
    return CurveWord(curve, (phi,) * j + (0,) + (phi,) * (k - j - 1))
