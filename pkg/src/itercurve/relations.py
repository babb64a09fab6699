"""Integer-relation detection and the dimension experiments.

PSLQ is implemented directly (fixed-point, one-level) so that the
no-relation exit can report a certified exclusion bound: at every step,
1 / max |H entries| is a lower bound on the Euclidean norm of any integer
relation among the inputs.  Found relations are never trusted at a single
precision: ``rank_estimate`` demands confirmation of each candidate
relation on re-evaluated inputs at doubled precision before it counts.

The resulting dimension tables reproduce a numerical experiment; their
status field says "experimental" because that is what they are.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp

from .descent import parity_component
from .exactfield import Cyc, mu, zeta4, xi3
from .numkernel import ApproxR, Context, dirichlet_L_chi3, sqrt3, zeta
from .words import CurveWord, enumerate_admissible, shuffle

__all__ = [
    "RelationReport",
    "PrecisionExhausted",
    "pslq",
    "rank_estimate",
    "ShuffleIdentity",
    "shuffle_relations",
    "shuffle_relation_rank",
    "dim_series",
    "verify_distribution",
    "DimRow",
    "DimTable",
    "reproduce_dim_table",
    "KNOWN_DIM_ESTIMATES",
]

PSLQ_GAMMA = 2 / math.sqrt(3)
PSLQ_MAX_ITER = 10**6
DETECTION_EXPONENT = 0.6  # threshold 10^(-0.6 P)


class PrecisionExhausted(RuntimeError):
    """PSLQ or a confirmation step ran out of meaningful digits."""


@dataclass(frozen=True)
class RelationReport:
    coeffs: tuple[int, ...] | None
    residual: float | None
    confirmed: bool
    exclusion_bound: float
    precision: int

    @property
    def found(self) -> bool:
        return self.coeffs is not None


def _nint_fixed(x: int, prec: int) -> int:
    return ((x + (1 << (prec - 1))) >> prec) << prec


def pslq(xs: Sequence[ApproxR], ctx: Context, max_norm: float = 1e12,
         gamma: float = PSLQ_GAMMA, max_iter: int = PSLQ_MAX_ITER,
         detection_exponent: float = DETECTION_EXPONENT) -> RelationReport:
    """One-level fixed-point PSLQ on the values of ``xs``.

    Returns a report with either an integer vector r, |sum r_i x_i| below
    10^(-detection_exponent * P) and |r|_inf <= max_norm, or coeffs=None
    together with a certified lower bound on the Euclidean norm of any
    relation.  Inputs must carry error bounds below the detection
    threshold, else the search is meaningless.
    """
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two values")
    P = ctx.precision_digits
    with mp.workdps(P + 20):
        tol = mp.mpf(10) ** (-detection_exponent * P)
        for x in xs:
            if not x.err <= tol / 100:
                raise ValueError(
                    "input error bounds exceed the PSLQ detection threshold")
        prec_bits = int((P + 10) * 3.33) + 53
        scale = 1 << prec_bits
        xf = [int(mp.floor(x.value * scale)) for x in xs]
        minx = min(abs(v) for v in xf)
        if minx == 0:
            # a numerically zero input is the trivial relation on that slot
            idx = [abs(v) for v in xf].index(0)
            coeffs = tuple(1 if i == idx else 0 for i in range(n))
            return RelationReport(coeffs, float(abs(xs[idx].value)), False,
                                  0.0, P)
        tol_fixed = int(tol * scale)
        if tol_fixed <= 0:
            tol_fixed = 1

        def sqrt_fixed(v: int) -> int:
            return int(math.isqrt(v << prec_bits)) if v >= 0 else 0

        # One-based dict-indexed state, following the classical fixed-point
        # formulation step by step.
        g_fixed = int(mp.mpf(gamma) * scale)
        A, B, H = {}, {}, {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                A[i, j] = B[i, j] = (i == j) * scale
                H[i, j] = 0
        x1 = [None] + xf
        s = [None] + [0] * n
        for k in range(1, n + 1):
            t = 0
            for j in range(k, n + 1):
                t += (x1[j] * x1[j]) >> prec_bits
            s[k] = sqrt_fixed(t)
        t = s[1]
        y = x1[:]
        for k in range(1, n + 1):
            y[k] = (x1[k] << prec_bits) // t
            s[k] = (s[k] << prec_bits) // t
        for i in range(1, n + 1):
            for j in range(i + 1, n):
                H[i, j] = 0
            if i <= n - 1:
                H[i, i] = (s[i + 1] << prec_bits) // s[i] if s[i] else 0
            for j in range(1, i):
                sjj1 = s[j] * s[j + 1]
                H[i, j] = ((-y[i] * y[j]) << prec_bits) // sjj1 if sjj1 else 0
        for i in range(2, n + 1):
            for j in range(i - 1, 0, -1):
                if not H[j, j]:
                    continue
                t = _nint_fixed((H[i, j] << prec_bits) // H[j, j], prec_bits)
                if not t:
                    continue
                y[j] = y[j] + ((t * y[i]) >> prec_bits)
                for k in range(1, j + 1):
                    H[i, k] = H[i, k] - ((t * H[j, k]) >> prec_bits)
                for k in range(1, n + 1):
                    A[i, k] = A[i, k] - ((t * A[j, k]) >> prec_bits)
                    B[k, j] = B[k, j] + ((t * B[k, i]) >> prec_bits)

        bound = 0.0
        for _ in range(max_iter):
            m, best = -1, -1
            gpow = scale
            for i in range(1, n):
                gpow = (gpow * g_fixed) >> prec_bits
                sz = (gpow * abs(H[i, i])) >> prec_bits
                if sz > best:
                    m, best = i, sz
            y[m], y[m + 1] = y[m + 1], y[m]
            for i in range(1, n):
                H[m, i], H[m + 1, i] = H[m + 1, i], H[m, i]
            for i in range(1, n + 1):
                A[m, i], A[m + 1, i] = A[m + 1, i], A[m, i]
                B[i, m], B[i, m + 1] = B[i, m + 1], B[i, m]
            if m <= n - 2:
                t0 = sqrt_fixed((H[m, m] ** 2 + H[m, m + 1] ** 2) >> prec_bits)
                if not t0:
                    raise PrecisionExhausted(
                        "PSLQ rotation collapsed; raise precision")
                t1 = (H[m, m] << prec_bits) // t0
                t2 = (H[m, m + 1] << prec_bits) // t0
                for i in range(m, n + 1):
                    t3, t4 = H[i, m], H[i, m + 1]
                    H[i, m] = (t1 * t3 + t2 * t4) >> prec_bits
                    H[i, m + 1] = (-t2 * t3 + t1 * t4) >> prec_bits
            for i in range(m + 1, n + 1):
                for j in range(min(i - 1, m + 1), 0, -1):
                    if not H[j, j]:
                        continue
                    t = _nint_fixed((H[i, j] << prec_bits) // H[j, j], prec_bits)
                    if not t:
                        continue
                    y[j] = y[j] + ((t * y[i]) >> prec_bits)
                    for k in range(1, j + 1):
                        H[i, k] = H[i, k] - ((t * H[j, k]) >> prec_bits)
                    for k in range(1, n + 1):
                        A[i, k] = A[i, k] - ((t * A[j, k]) >> prec_bits)
                        B[k, j] = B[k, j] + ((t * B[k, i]) >> prec_bits)
            for i in range(1, n + 1):
                if abs(y[i]) < tol_fixed:
                    vec = [_nint_fixed(B[j, i], prec_bits) >> prec_bits
                           for j in range(1, n + 1)]
                    if all(v == 0 for v in vec):
                        raise PrecisionExhausted(
                            "PSLQ produced the zero vector; raise precision")
                    if max(abs(v) for v in vec) <= max_norm:
                        resid = ApproxR(0, 0)
                        for v, x in zip(vec, xs):
                            resid = resid + x.scale(v)
                        return RelationReport(tuple(vec), float(abs(resid.value)),
                                              False, bound, P)
            hmax = max(abs(h) for h in H.values())
            if hmax:
                # certified: any relation r has |r|_2 >= 1/max|H_ij|; halve
                # for fixed-point rounding slack
                bound = float(mp.mpf(scale) / hmax / 2)
            if bound > max_norm:
                return RelationReport(None, None, False, bound, P)
        raise PrecisionExhausted("PSLQ iteration cap reached without decision")


def _confirm(coeffs: tuple[int, ...], values_hi: Sequence[ApproxR],
             P: int) -> bool:
    with mp.workdps(2 * P + 20):
        resid = ApproxR(0, 0)
        for v, x in zip(coeffs, values_hi):
            resid = resid + x.scale(v)
        thresh = mp.mpf(10) ** (-1.2 * P)
        return bool(abs(resid.value) <= thresh)


def rank_estimate(values: Sequence[ApproxR], ctx: Context,
                  values_hi: Sequence[ApproxR] | None = None,
                  max_norm: float = 1e8) -> tuple[int, list[RelationReport]]:
    """Greedy heuristic rank of the Q-span of ``values``.

    Walks the values in order, testing each against the current
    independent set with PSLQ; every found relation must confirm at
    doubled precision on ``values_hi`` (mandatory when supplied; when
    omitted, confirmation re-checks the residual on the inputs and the
    result is weaker).  The result is explicitly heuristic: it can only
    overcount relations that PSLQ found and undercount ones beyond
    max_norm or the working precision.
    """
    P = ctx.precision_digits
    independent: list[int] = []
    reports: list[RelationReport] = []
    for idx, v in enumerate(values):
        with mp.workdps(P + 20):
            is_zero = abs(v.value) < mp.mpf(10) ** (-DETECTION_EXPONENT * P)
        if is_zero:
            coeffs = (0,) * len(independent) + (1,)
            reports.append(RelationReport(coeffs, float(abs(v.value)),
                                          True, 0.0, P))
            continue
        if not independent:
            independent.append(idx)
            continue
        sub = [values[i] for i in independent] + [v]
        rep = pslq(sub, ctx, max_norm=max_norm)
        if not rep.found:
            independent.append(idx)
            continue
        if rep.coeffs[-1] == 0:
            raise PrecisionExhausted(
                "candidate relation skips the new value; the current "
                "independent set was not independent at this precision")
        if values_hi is not None:
            hi = [values_hi[i] for i in independent] + [values_hi[idx]]
            if not _confirm(rep.coeffs, hi, P):
                raise PrecisionExhausted(
                    f"relation {rep.coeffs} failed confirmation at 2P")
            rep = RelationReport(rep.coeffs, rep.residual, True,
                                 rep.exclusion_bound, P)
        reports.append(rep)
    return len(independent), reports


# ---------------------------------------------------------------------------
# Exact shuffle relations.

@dataclass(frozen=True)
class ShuffleIdentity:
    """I(left) I(right) = sum of the shuffle expansion, as exact data."""

    left: CurveWord
    right: CurveWord
    expansion: tuple[tuple[CurveWord, Fraction], ...]

    def residual(self, evaluator: Callable[[CurveWord], ApproxR]) -> ApproxR:
        lhs = evaluator(self.left) * evaluator(self.right)
        rhs = ApproxR(0, 0)
        for w, c in self.expansion:
            rhs = rhs + evaluator(w).scale(c)
        return lhs - rhs


def shuffle_relations(curve: str, k: int) -> list[ShuffleIdentity]:
    """All shuffle identities between admissible words of total weight k,
    deduplicated over unordered pairs."""
    if k < 2:
        raise ValueError("k must be >= 2")
    out = []
    seen = set()
    for k1 in range(1, k // 2 + 1):
        k2 = k - k1
        for u in enumerate_admissible(curve, k1):
            for v in enumerate_admissible(curve, k2):
                key = frozenset({(u.letters, v.letters)}) \
                    if u.letters == v.letters else frozenset({u.letters, v.letters})
                if key in seen:
                    continue
                seen.add(key)
                comb = shuffle(u, v)
                out.append(ShuffleIdentity(u, v, tuple(comb.items())))
    return out


def _fraction_free_rank(rows: list[list[Fraction]]) -> int:
    """Exact rank by fraction-free (Bareiss-style) elimination over Z."""
    if not rows:
        return 0
    lcm = 1
    for row in rows:
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    m = [[int(x * lcm) for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nrows:
            break
    return rank


def shuffle_relation_rank(curve: str, k: int) -> int:
    """Exact Q-rank of the span of the shuffle identities at weight k, in
    the free module over the weight-k words plus one product symbol per
    unordered pair."""
    idents = shuffle_relations(curve, k)
    words = {w: i for i, w in enumerate(enumerate_admissible(curve, k))}
    pairs = {}
    rows = []
    for ident in idents:
        key = tuple(sorted((ident.left.letters, ident.right.letters)))
        if key not in pairs:
            pairs[key] = len(pairs)
    width = len(words) + len(pairs)
    for ident in idents:
        row = [Fraction(0)] * width
        for w, c in ident.expansion:
            row[words[w]] += c
        key = tuple(sorted((ident.left.letters, ident.right.letters)))
        row[len(words) + pairs[key]] -= 1
        rows.append(row)
    return _fraction_free_rank(rows)


# ---------------------------------------------------------------------------
# Dimension generating series (exact integer Taylor coefficients).

def _taylor_rational(numer: list[int], denom: list[int], kmax: int) -> list[int]:
    # denom[0] must be +-1 for integer output
    coeffs = []
    for k in range(kmax + 1):
        acc = Fraction(numer[k]) if k < len(numer) else Fraction(0)
        for j in range(1, min(k, len(denom) - 1) + 1):
            acc -= denom[j] * coeffs[k - j]
        acc /= denom[0]
        assert acc.denominator == 1
        coeffs.append(acc)
    return [int(c) for c in coeffs]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def dim_series(which: str, kmax: int, r1: int = 0, r2: int = 0,
               dim_r: int = 0) -> list[int]:
    """Taylor coefficients 0..kmax of one of the dimension series.

    Fixed ids: D_g = 1/(1-2t); D_h = 1/(1-3t+t^2); parity refinements
    D_g0 = (1-t)/(1-2t), D_g1 = t/(1-2t),
    D_h0 = (1-t)/((1-3t+t^2)(1+t-t^2)),
    D_h1 = t(2-t)/((1-3t+t^2)(1+t-t^2)); mzv_d = 1/(1-t^2-t^3).
    Parametrized ids: A_FR and H_FR, the graded dimensions
    (1 - dim_r t - (r2 t^2 + (r1+r2) t^3)/(1-t^2))^-1, the latter times
    1/(1-t).
    """
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    fixed = {
        "D_g": ([1], [1, -2]),
        "D_h": ([1], [1, -3, 1]),
        "D_g0": ([1, -1], [1, -2]),
        "D_g1": ([0, 1], [1, -2]),
        "D_h0": ([1, -1], _poly_mul([1, -3, 1], [1, 1, -1])),
        "D_h1": ([0, 2, -1], _poly_mul([1, -3, 1], [1, 1, -1])),
        "mzv_d": ([1], [1, 0, -1, -1]),
    }
    if which in fixed:
        numer, denom = fixed[which]
    elif which in ("A_FR", "H_FR"):
        # (1-t^2) / ((1 - dim_r t)(1-t^2) - r2 t^2 - (r1+r2) t^3)
        numer = [1, 0, -1]
        denom = _poly_mul([1, -dim_r], [1, 0, -1])
        denom[2] -= r2
        denom[3] -= r1 + r2
        if which == "H_FR":
            denom = _poly_mul(denom, [1, -1])
            numer = _poly_mul(numer, [1])
    else:
        raise ValueError(f"unknown series id {which!r}")
    return _taylor_rational(numer, denom, kmax)


# ---------------------------------------------------------------------------
# Distribution / parity polylogarithm identities (numeric shadows).

def verify_distribution(kmax: int, level: int, ctx: Context) -> list[dict]:
    """Numeric residuals of the distribution and parity identities among
    Li_k at level-4 / level-6 roots of unity, 2 <= k <= kmax.

    Returns one row per identity: name, k, residual, threshold, passed.
    """
    from .evaluate import polylog_ii
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    if level not in (4, 6):
        raise ValueError("level must be 4 or 6")
    rows = []
    with ctx.workdps(10):
        thresh = float(mp.mpf(10) ** (-(ctx.precision_digits - 10)))
        one = Cyc.from_rat(level, 1)
        m_one = Cyc.from_rat(level, -1)

        def li(k: int, a: Cyc):
            return polylog_ii(k, a, ctx).value

        def emit(name, k, lhs, rhs):
            resid = float(abs(lhs - rhs))
            rows.append({"identity": name, "level": level, "k": k,
                         "residual": resid, "threshold": thresh,
                         "passed": resid <= thresh})

        for k in range(2, kmax + 1):
            zk = zeta(k, ctx).value
            two = mp.mpf(2)
            if level == 4:
                i_ = zeta4()
                # square distribution at delta = -1 and delta = 1
                emit("Li_k(-1) = 2^(k-1)(Li_k(i)+Li_k(-i))", k,
                     li(k, m_one), two ** (k - 1) * (li(k, i_) + li(k, -i_)))
                emit("zeta(k) = 2^(k-1)(zeta(k)+Li_k(-1))", k,
                     zk, two ** (k - 1) * (zk + li(k, m_one)))
                # parity closed forms
                emit("Li_k(i)+Li_k(-i) = 2^(1-k)(2^(1-k)-1) zeta(k)", k,
                     li(k, i_) + li(k, -i_),
                     two ** (1 - k) * (two ** (1 - k) - 1) * zk)
                emit("Li_k(1)+Li_k(-1) = 2^(1-k) zeta(k)", k,
                     zk + li(k, m_one), two ** (1 - k) * zk)
            else:
                z3 = xi3()
                z6 = -z3.inv()   # zeta_6 = -z3^-1 = -conj(z3)
                # square distribution for delta in mu_3
                for w, wname in ((one, "1"), (z3, "z3"), (z3.inv(), "z3c")):
                    v = next(v for v in mu(6) if v * v == w)
                    emit(f"Li_k({wname}) = 2^(k-1)(Li_k(v)+Li_k(-v)), v^2={wname}",
                         k, li(k, w) if w != one else zk,
                         two ** (k - 1) * (li(k, v) + li(k, -v)))
                # cube distribution for delta in mu_2
                for w, wname in ((one, "1"), (m_one, "-1")):
                    cubes = [v for v in mu(6) if v * v * v == w]
                    emit(f"Li_k({wname}) = 3^(k-1) sum_(v^3={wname}) Li_k(v)",
                         k, li(k, w) if w != one else zk,
                         mp.mpf(3) ** (k - 1)
                         * sum((li(k, v) if v != one else zk) for v in cubes))
                # parity closed form with sqrt(-3) L-value
                lk = dirichlet_L_chi3(k, ctx).value
                s3 = sqrt3(ctx).value
                emit("Li_k(z6)+Li_k(-z6) = 2^-k(3^(1-k)-1)zeta(k)"
                     " + 2^-k sqrt(-3) L(k,chi3)", k,
                     li(k, z6) + li(k, -z6),
                     two ** (-k) * ((mp.mpf(3) ** (1 - k) - 1) * zk
                                    + mp.mpc(0, s3) * lk))
    return rows


# ---------------------------------------------------------------------------
# Dimension tables.

KNOWN_DIM_ESTIMATES = {
    # weight k: 0..5, from previously reported numerical experiments
    "g": {
        "rank": [1, 1, 3, 7, 15, 31],
        "rank0": [1, 0, 1, 3, 7, 15],
        "rank1": [0, 1, 2, 4, 8, 16],
    },
    "h": {
        "rank": [1, 1, 5, 15, 46, 105],
        "rank0": [1, 0, 3, 8, 25, 53],
        "rank1": [0, 1, 2, 7, 21, 52],
    },
}

TABLE_SCHEMA_VERSION = 1
CSV_HEADER = "curve,k,count_B,D,rank,rank_parity0,rank_parity1,precision,status"


@dataclass(frozen=True)
class DimRow:
    curve: str
    k: int
    count_B: int
    D: int
    rank: int
    rank_parity0: int
    rank_parity1: int
    precision: int
    status: str = "experimental"

    def as_dict(self) -> dict:
        return {"curve": self.curve, "k": self.k, "count_B": self.count_B,
                "D": self.D, "rank": self.rank,
                "rank_parity0": self.rank_parity0,
                "rank_parity1": self.rank_parity1,
                "precision": self.precision, "status": self.status}


@dataclass
class DimTable:
    curve: str
    rows: list[DimRow] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            d = r.as_dict()
            lines.append(",".join(str(d[c]) for c in CSV_HEADER.split(",")))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"schema_version": TABLE_SCHEMA_VERSION,
                           "rows": [r.as_dict() for r in self.rows]}, indent=2)

    def diff_against_reference(self) -> list[str]:
        ref = KNOWN_DIM_ESTIMATES[self.curve]
        out = []
        for r in self.rows:
            if r.k < len(ref["rank"]):
                exp = (ref["rank"][r.k], ref["rank0"][r.k], ref["rank1"][r.k])
                got = (r.rank, r.rank_parity0, r.rank_parity1)
                mark = "match" if exp == got else f"MISMATCH (reference {exp})"
            else:
                mark = "no reference"
            out.append(f"{self.curve} k={r.k}: rank={r.rank} "
                       f"parity=({r.rank_parity0},{r.rank_parity1}) {mark}")
        return out


def _weight_precision(curve: str, k: int) -> int:
    if k <= 2:
        return 150
    if k == 3:
        return 150 if curve == "g" else 200
    return 250


def reproduce_dim_table(curve: str, kmax: int, ctx: Context | None = None,
                        progress: Callable[[str], None] | None = None,
                        allow_heavy: bool = False) -> DimTable:
    """Heuristic dimension table for weights 0..kmax.

    Evaluates every admissible word at a weight-dependent precision (at
    least 150 digits), estimates ranks by the greedy PSLQ protocol with
    doubled-precision confirmation, and splits by parity class.  Guard:
    curve h is capped at kmax 3 and curve g at 4 unless ``allow_heavy``.
    """
    from .evaluate import eval_curve_word
    cap = 4 if curve == "g" else 3
    if kmax > cap and not allow_heavy:
        raise ValueError(
            f"kmax={kmax} exceeds the default guard for curve {curve} "
            f"({cap}); pass allow_heavy to override")
    series = dim_series("D_g" if curve == "g" else "D_h", max(kmax, 0))
    table = DimTable(curve)
    table.rows.append(DimRow(curve, 0, 1, series[0], 1, 1, 0,
                             ctx.precision_digits if ctx else 0))
    for k in range(1, kmax + 1):
        P = max(_weight_precision(curve, k),
                ctx.precision_digits if ctx else 0)
        lo = Context(P, 10)
        hi = Context(2 * P, 10)
        words = enumerate_admissible(curve, k)
        if progress:
            progress(f"{curve} weight {k}: evaluating {len(words)} words at "
                     f"{P} digits (+ confirmation at {2 * P})")
        vals = [eval_curve_word(w, lo) for w in words]
        vals_hi = [eval_curve_word(w, hi) for w in words]
        rank, _ = rank_estimate(vals, lo, vals_hi)
        split = {0: [], 1: []}
        for w, v, vh in zip(words, vals, vals_hi):
            split[parity_component(w)].append((v, vh))
        ranks = {}
        for delta in (0, 1):
            if split[delta]:
                ranks[delta], _ = rank_estimate(
                    [v for v, _ in split[delta]], lo,
                    [vh for _, vh in split[delta]])
            else:
                ranks[delta] = 0
        table.rows.append(DimRow(curve, k, len(words), series[k], rank,
                                 ranks[0], ranks[1], P))
    return table
