"""Independent quadrature oracle for low-weight iterated integrals.

Nested composite Gauss-Legendre integration over piecewise paths (straight
chords and circular arcs).  Each layer of the iterated integral is carried
as a per-cell Legendre expansion whose antiderivative is evaluated exactly
at the cell nodes, so layer j+1 samples layer j without re-quadrature.
Partitions are dyadically graded toward both endpoints of every segment,
which resolves the integrable logarithmic endpoint singularities the inner
layers develop.

Cells in the right half of a segment are anchored at the far endpoint and
carry the offset u = 1 - t directly; pole differences are then formed as
(endpoint - a) - u * direction without catastrophic cancellation, and the
grading can go far below the float64 spacing around t = 1.

Error is estimated, not proven: the value is computed on a partition and
on its once-refined version and the reported error is their disagreement
(plus a small floor).  That is adequate for an oracle aimed at 12-15
digits; the arbitrary-precision evaluator owns rigor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exactfield import Cyc, mu
from .numkernel import ApproxC, Context

__all__ = [
    "Chord",
    "ArcSeg",
    "PathSpec",
    "quad_iterated",
    "verify_arc_lemma",
]

_GL_ORDER = 24
_GRADE_LEVELS = 48  # finest cell 2^-48 of a segment


@dataclass(frozen=True)
class Chord:
    """Straight path t -> start + t (end - start)."""

    start: complex
    end: complex

    def point(self, t):
        return self.start + np.asarray(t) * (self.end - self.start)


@dataclass(frozen=True)
class ArcSeg:
    """Circular arc around ``center`` from ``q1`` to ``q2`` (equal radii),
    sweeping the principal-branch angle difference."""

    center: complex
    q1: complex
    q2: complex

    def __post_init__(self):
        r1 = abs(self.q1 - self.center)
        r2 = abs(self.q2 - self.center)
        if abs(r1 - r2) > 1e-12 * max(r1, r2, 1.0):
            raise ValueError("arc endpoints must be equidistant from the center")

    @property
    def radius(self) -> float:
        return abs(self.q1 - self.center)

    @property
    def theta0(self) -> float:
        return cmath.phase(self.q1 - self.center)

    @property
    def sweep(self) -> float:
        return cmath.phase((self.q2 - self.center) / (self.q1 - self.center))

    def point(self, t):
        ang = self.theta0 + np.asarray(t) * self.sweep
        return self.center + self.radius * np.exp(1j * ang)


@dataclass(frozen=True)
class PathSpec:
    """A chain of segments with matching endpoints."""

    segments: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("path must have at least one segment")
        for a, b in zip(segs, segs[1:]):
            if abs(complex(a.point(1.0)) - complex(b.point(0.0))) > 1e-12:
                raise ValueError("consecutive segment endpoints do not match")

    @property
    def start(self) -> complex:
        return complex(self.segments[0].point(0.0))

    @property
    def end(self) -> complex:
        return complex(self.segments[-1].point(1.0))

    @classmethod
    def line(cls, p: complex, q: complex) -> "PathSpec":
        return cls((Chord(p, q),))

    @classmethod
    def unit(cls) -> "PathSpec":
        return cls((Chord(0.0, 1.0),))

    @classmethod
    def arc(cls, center: complex, q1: complex, q2: complex) -> "PathSpec":
        return cls((ArcSeg(center, q1, q2),))

    def check_poles_off(self, poles) -> None:
        ts = np.linspace(1e-6, 1 - 1e-6, 257)
        for seg in self.segments:
            pts = seg.point(ts)
            for a in poles:
                if np.min(np.abs(pts - a)) < 1e-9:
                    raise ValueError(f"pole {a} lies on the integration path")


class _GLBasis:
    def __init__(self, q: int):
        x, w = np.polynomial.legendre.leggauss(q)
        self.x, self.w = x, w
        P = np.zeros((q + 1, q))
        P[0] = 1.0
        P[1] = x
        for l in range(1, q):
            P[l + 1] = ((2 * l + 1) * x * P[l] - l * P[l - 1]) / (l + 1)
        # coefficient extraction c_l = (2l+1)/2 sum_i w_i P_l(x_i) f(x_i),
        # then antiderivative via int P_0 = x+1, int P_l = (P_{l+1}-P_{l-1})/(2l+1)
        C = (np.arange(q)[:, None] * 2 + 1) / 2 * (P[:q] * w)
        A = np.outer(x + 1, C[0])
        for l in range(1, q):
            A += np.outer((P[l + 1] - P[l - 1]) / (2 * l + 1), C[l])
        self.antider = A
        self.full = w.copy()


_BASIS = _GLBasis(_GL_ORDER)


class _SegGrid:
    """Graded discretization of one segment.

    Rows are cells in path order; for cells in the right half the node
    offsets ``s`` measure the distance to the segment end (u = 1 - t), so
    endpoint-pole differences stay cancellation-free.
    """

    def __init__(self, seg, levels: int):
        left = np.array([0.5 ** j for j in range(levels, 0, -1)])
        breaks_lo = np.concatenate(([0.0], left[:-1]))
        breaks_hi = left
        q = _BASIS.x
        # left half: t in [lo, hi]; right half mirrored
        n = len(left)
        self.half = np.concatenate([(breaks_hi - breaks_lo) / 2,
                                    (breaks_hi - breaks_lo)[::-1] / 2])
        mid = np.concatenate([(breaks_hi + breaks_lo) / 2,
                              (breaks_hi + breaks_lo)[::-1] / 2])
        self.is_right = np.concatenate([np.zeros(n, bool), np.ones(n, bool)])
        # node offsets: t for left cells, u = 1-t (descending in t) for right
        self.s = np.where(self.is_right[:, None],
                          mid[:, None] - self.half[:, None] * q[None, :],
                          mid[:, None] + self.half[:, None] * q[None, :])
        self.seg = seg
        if isinstance(seg, Chord):
            d = seg.end - seg.start
            self.pts = np.where(self.is_right[:, None],
                                seg.end - self.s * d, seg.start + self.s * d)
            self.der = np.full_like(self.pts, d)
        elif isinstance(seg, ArcSeg):
            theta1 = seg.theta0 + seg.sweep
            ang = np.where(self.is_right[:, None],
                           theta1 - self.s * seg.sweep,
                           seg.theta0 + self.s * seg.sweep)
            rot = np.exp(1j * ang)
            self.ang = ang
            self.pts = seg.center + seg.radius * rot
            self.der = 1j * seg.sweep * seg.radius * rot
        else:
            raise TypeError(f"unknown segment type {type(seg)!r}")

    def diff(self, a: complex) -> np.ndarray:
        """pts - a, stable near segment endpoints."""
        seg = self.seg
        if isinstance(seg, Chord):
            d = seg.end - seg.start
            return np.where(self.is_right[:, None],
                            (seg.end - a) - self.s * d,
                            (seg.start - a) + self.s * d)
        # arc: if the pole sits on the circle, difference of phases
        if abs(abs(a - seg.center) - seg.radius) < 1e-12 * max(1.0, seg.radius):
            phi = cmath.phase(a - seg.center)
            return (2j * seg.radius * np.sin((self.ang - phi) / 2)
                    * np.exp(1j * (self.ang + phi) / 2))
        return self.pts - a


def _layers_on_grids(grids: list[_SegGrid], letters) -> complex:
    G_nodes = [np.ones_like(g.pts) for g in grids]
    running = 0.0 + 0.0j
    for a in letters:
        new_nodes = []
        running = 0.0 + 0.0j
        for g, prev in zip(grids, G_nodes):
            integrand = prev * g.der / g.diff(a)
            F = (integrand @ _BASIS.antider.T) * g.half[:, None]
            cell_totals = (integrand @ _BASIS.full) * g.half
            starts = running + np.concatenate(([0.0], np.cumsum(cell_totals[:-1])))
            new_nodes.append(F + starts[:, None])
            running = starts[-1] + cell_totals[-1]
        G_nodes = new_nodes
    return complex(running)


def quad_iterated(path: PathSpec, letters, ctx: Context) -> ApproxC:
    """Iterated integral of the forms dz/(z - a_j) along the path.

    ``letters`` may be exact field elements or plain complex numbers;
    weight at most 4; the context may ask for at most 30 digits since this
    runs in double precision.  The error is a refinement-agreement
    estimate, flagged heuristic.
    """
    if ctx.precision_digits > 30:
        raise ValueError("quadrature oracle supports at most 30 digits")
    letters = [complex(a.embed(Context(16, 4)).value) if isinstance(a, Cyc)
               else complex(a) for a in letters]
    if len(letters) > 4:
        raise ValueError("quadrature oracle supports weight <= 4")
    if len(letters) == 0:
        return ApproxC(1, 0)
    if abs(path.start - letters[0]) < 1e-12:
        raise ValueError("first letter equals the path start; divergent")
    if abs(path.end - letters[-1]) < 1e-12:
        raise ValueError("last letter equals the path end; divergent")
    path.check_poles_off(letters)
    coarse = _layers_on_grids(
        [_SegGrid(s, _GRADE_LEVELS - 6) for s in path.segments], letters)
    fine = _layers_on_grids(
        [_SegGrid(s, _GRADE_LEVELS) for s in path.segments], letters)
    err = abs(fine - coarse) + 1e-14 * (1 + abs(fine))
    return ApproxC(fine, err, heuristic=True)


def _lemma_lhs(sweep: float, sign: int, levels: int = 90) -> complex:
    """The arc integral on the left of the two lemma identities, for the
    arc z = e^(i theta), theta from 0 to ``sweep`` (0 < |sweep| <= pi/2).

    sign = -1 is the regular case int log(1+z)/z dz, via the stable branch
    log(1 + e^(i t)) = log(2 cos(t/2)) + i t/2.

    sign = +1 is the regularized case.  The inner weight-one integral from
    the basepoint 1 is the regularized logarithm log(z - 1) (trivialized
    endpoint datum z - 1), carried along the arc on the continuous branch

        log(e^(i t) - 1) = log(2 |sin(t/2)|) + i (t/2 + sgn(t) pi/2),

    and the finite part of the dropped divergence at the arc start
    contributes -(i pi / 2) sgn(sweep) log z0, which the caller adds.
    Here only the quadrature runs, with a start inset t0 = 1e-25 * sweep
    restored to first order by the analytic tail

        int_0^{t0} log(e^(i theta) - 1) i dtheta
            ~ i t0 (log|t0| - 1) - (pi/2) |t0| ;

    the dropped remainder is O(t0^2 log t0), far below the 1e-12 target.
    """
    if abs(sweep) < 1e-30:
        return 0.0 + 0.0j
    if sign == +1:
        t0 = sweep * 1e-25
        tail = 1j * t0 * (math.log(abs(t0)) - 1) - (math.pi / 2) * abs(t0)
        lo = 1e-25
    else:
        tail = 0.0 + 0.0j
        lo = 0.0
    grid = _SegGrid(Chord(lo, 1.0), levels)
    theta = grid.pts.real * sweep
    if sign == +1:
        vals = np.log(2 * np.abs(np.sin(theta / 2))) \
            + 1j * (theta / 2 + np.copysign(math.pi / 2, sweep))
    else:
        vals = np.log(2 * np.cos(theta / 2)) + 1j * theta / 2
    integrand = 1j * sweep * (1 - lo) * vals
    total = np.sum((integrand @ _BASIS.full) * grid.half)
    return complex(total) + tail


def verify_arc_lemma(z0: Cyc, ctx: Context) -> tuple[float, float]:
    """Residuals of the two arc identities

        reg int_gamma log(1-z)/z dz = -Li_2(z0) + (pi i / 2) log z0 + pi^2 / 6
        int_gamma log(1+z)/z dz     = -Li_2(-z0) - pi^2 / 12

    with gamma the arc from 1 to z0 around 0, |z0| = 1, 0 <= arg z0 <= pi/2.
    The first left-hand side is the shuffle-regularized double integral
    (see ``_lemma_lhs``); the plain principal-branch integral satisfies the
    identity without the (pi i / 2) log z0 term, which is bookkeeping for
    the regularized basepoint datum.  Points with arg z0 < 0 are folded to
    their conjugates first (both residuals are reflection-invariant).
    Right-hand polylogarithms come from the Hurwitz-zeta character route,
    so both sides are independent of the series evaluator.
    """
    import mpmath as mp

    from .numkernel import polylog_root_of_unity
    if z0.norm() != 1:
        raise ValueError("z0 must have modulus 1")
    n = z0.level
    r = next((j for j, root in enumerate(mu(n)) if root == z0), None)
    if r is None:
        raise ValueError("z0 must be a root of unity of its field")
    rr = r if r <= n // 2 else r - n
    if abs(rr) * 4 > n:
        raise ValueError("z0 must satisfy |arg z0| <= pi/2")
    rr = abs(rr)

    with ctx.workdps(5):
        sweep = float(2 * mp.pi * rr / n)
        log_z0 = mp.mpc(0, 2 * mp.pi * rr / n)
        lhs1 = mp.mpc(_lemma_lhs(sweep, +1)) - mp.mpc(0, mp.pi / 2) * log_z0
        lhs2 = mp.mpc(_lemma_lhs(sweep, -1))
        li_z0 = polylog_root_of_unity(2, rr, n, ctx).value
        li_mz0 = polylog_root_of_unity(2, rr + n // 2, n, ctx).value
        rhs1 = -li_z0 + mp.mpc(0, mp.pi / 2) * log_z0 + mp.pi ** 2 / 6
        rhs2 = -li_mz0 - mp.pi ** 2 / 12
        res1 = float(abs(lhs1 - rhs1))
        res2 = float(abs(lhs2 - rhs2))
    return res1, res2
