"""Bounds on the extreme eigenvalues from a truncated moment sequence.

At level s, the largest c keeping the localizing matrix H_s(c) PSD is an
upper bound on the smallest support point, and the smallest c making -H_s(c)
PSD is a lower bound on the largest one.  Because dH/dc = -R_{2s} is negative
semidefinite, both extreme eigenvalues of H_s(c) are nonincreasing in c, so
each threshold is found by bisection on a monotone predicate.  For s = 1 the
threshold pair solves a quadratic; for s = 2, the cubic det H_2(c) = 0.  The
bisection path is treated as ground truth and the polynomial path as the fast
route; the test suite asserts their agreement rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InfeasibleMomentsError, ValidationError
from .hankel import is_feasible_hamburger, localizing_matrix, psd_tolerance
from .moments import MomentSequence

_MAX_BRACKET_GROWTH = 60


@dataclass(frozen=True)
class SupportBounds:
    """Inner approximation [lower, upper] of the spectral support interval.

    ``lower`` is an upper bound on the smallest eigenvalue and ``upper`` a
    lower bound on the spectral radius.  ``residual`` is the PSD margin of
    the localizing matrix at the returned endpoints (near zero by
    construction); ``bracket`` records the initial search interval when the
    bisection path produced the result.
    """

    level: int
    lower: float
    upper: float
    method: str
    residual: float
    bracket: tuple[float, float] | None = None


def solve_cubic(d3: float, d2: float, d1: float, d0: float) -> list[float]:
    """All real roots of d3*c^3 + d2*c^2 + d1*c + d0, ascending.

    Roots come from the companion-matrix eigenvalues and get one Newton
    polish each; floating-point Cardano loses digits on nearly-degenerate
    cubics, which is exactly the regime two-atom spectra produce.  Leading
    zero coefficients fall back to the lower-degree solve.
    """
    coeffs = np.array([d3, d2, d1, d0], dtype=float)
    if not np.any(coeffs != 0.0):
        raise DegenerateInputError("all cubic coefficients are zero")
    lead = np.nonzero(coeffs)[0][0]
    coeffs = coeffs[lead:]
    if len(coeffs) == 1:
        return []
    raw = np.roots(coeffs)
    scale = float(np.abs(raw).max(initial=0.0)) + 1.0
    real = [float(r.real) for r in raw if abs(r.imag) <= 1e-8 * scale]
    poly = np.polynomial.Polynomial(coeffs[::-1])
    dpoly = poly.deriv()
    polished = []
    for r in real:
        slope = dpoly(r)
        if abs(slope) > 1e-12 * (1.0 + abs(poly(r))):
            r = r - poly(r) / slope
        polished.append(float(r))
    return sorted(polished)


def _det_h1_coeffs(ms: MomentSequence) -> tuple[float, float, float]:
    m = ms.values
    m1, m2, m3 = m[1], m[2], m[3]
    return (m2 - m1 * m1, m1 * m2 - m3, m1 * m3 - m2 * m2)


def _det_h2_coeffs(ms: MomentSequence) -> tuple[float, float, float, float]:
    _, m1, m2, m3, m4, m5 = ms.values[:6]
    d0 = 2 * m2 * m3 * m4 - m5 * m2 ** 2 - m3 ** 3 + m1 * m5 * m3 - m1 * m4 ** 2
    d1 = (m2 * m3 ** 2 - m2 ** 2 * m4 + m1 * m5 * m2 - m1 * m3 * m4
          - m5 * m3 + m4 ** 2)
    d2 = (m4 * m1 * m2 - m5 * m1 ** 2 + m1 * m3 ** 2 - m2 ** 2 * m3
          + m5 * m2 - m4 * m3)
    d3 = m4 * m1 ** 2 - 2 * m1 * m2 * m3 + m2 ** 3 - m4 * m2 + m3 ** 2
    return d3, d2, d1, d0


def _residual(ms: MomentSequence, s: int, lower: float, upper: float) -> float:
    h_lo = localizing_matrix(ms, s, lower).matrix
    h_hi = localizing_matrix(ms, s, upper).matrix
    lo_violation = -float(np.linalg.eigvalsh(h_lo)[0])     # want H(lower) PSD
    hi_violation = float(np.linalg.eigvalsh(h_hi)[-1])     # want -H(upper) PSD
    return max(lo_violation, hi_violation, 0.0)


def _check_feasible(ms: MomentSequence, s: int) -> None:
    res = is_feasible_hamburger(ms, s)
    if not res.feasible:
        raise InfeasibleMomentsError(
            f"moment sequence is infeasible at level {s}: "
            f"Hankel minimum eigenvalue {res.min_eigenvalue:.3e}")


def bounds_s1(ms: MomentSequence) -> SupportBounds:
    """Closed-form level-1 bounds: the two roots of det H_1(c) = 0.

    For graph moments (m_1 = 0) the quadratic is m2*c^2 - m3*c - m2^2.
    Tight whenever the spectrum has exactly two distinct values, e.g.
    complete graphs.
    """
    ms.require_order(3)
    _check_feasible(ms, 1)
    if ms.values[2] <= 0:
        raise DegenerateInputError("second moment is zero (edgeless graph)")
    a, b, c = _det_h1_coeffs(ms)
    if a <= 0:
        raise DegenerateInputError("degenerate variance; spectrum has a single atom")
    disc = b * b - 4 * a * c
    if disc < 0:
        raise InfeasibleMomentsError("det H_1 has no real roots; moments inconsistent")
    sq = float(np.sqrt(disc))
    # numerically stable quadratic: q avoids cancellation in the smaller root
    q = -0.5 * (b + np.copysign(sq, b)) if b != 0 else 0.5 * sq
    if q == 0.0:
        roots = sorted((0.0, -b / a))
    else:
        roots = sorted((q / a, c / q))
    lower, upper = float(roots[0]), float(roots[1])
    return SupportBounds(level=1, lower=lower, upper=upper, method="closed_form",
                         residual=_residual(ms, 1, lower, upper))


def bounds_s2(ms: MomentSequence, tol: float = 1e-6) -> SupportBounds:
    """Level-2 bounds: extreme real roots of the cubic det H_2(c) = 0.

    Spectra with fewer than three distinct eigenvalues collapse the cubic
    (complete graphs zero out every coefficient); those fall back to the
    bisection path, as does any cubic without three real roots.
    """
    ms.require_order(5)
    _check_feasible(ms, 2)
    d3, d2, d1, d0 = _det_h2_coeffs(ms)
    scale = max(abs(d3), abs(d2), abs(d1), abs(d0))
    # the fallback runs much tighter than the user tolerance: on degenerate
    # spectra the level-1 and level-2 thresholds coincide exactly, and the
    # monotonicity between levels must survive at the 1e-9 scale
    fallback_tol = min(tol, 1e-11 * (1.0 + abs(ms.values[2])))
    if scale == 0.0 or abs(d3) <= 1e-12 * scale:
        return bounds_bisect(ms, 2, tol=fallback_tol)
    roots = solve_cubic(d3, d2, d1, d0)
    if len(roots) < 3:
        return bounds_bisect(ms, 2, tol=fallback_tol)
    lower, upper = float(roots[0]), float(roots[-1])
    return SupportBounds(level=2, lower=lower, upper=upper, method="closed_form",
                         residual=_residual(ms, 2, lower, upper))


def _default_bracket(ms: MomentSequence, s: int) -> tuple[float, float]:
    center = ms.values[1]
    width = 1.0
    for j in range(1, 2 * s + 2):
        width = max(width, abs(ms.values[j]) ** (1.0 / j))
    return center - (1.0 + width), center + (1.0 + width)


def bounds_bisect(ms: MomentSequence, s: int, tol: float = 1e-6,
                  bracket: tuple[float, float] | None = None) -> SupportBounds:
    """Bisection on the PSD certificates of the localizing matrix.

    The upper bound is the smallest shift making -H_s PSD, the lower bound
    the largest keeping H_s PSD; both predicates are monotone in the shift.
    The initial bracket comes from the moment magnitudes (callers with graph
    access may pass [-d_max, d_max]) and is doubled outward until it
    straddles each transition.
    """
    if s < 1:
        raise ValidationError(f"level must be >= 1, got {s}")
    ms.require_order(2 * s + 1)
    _check_feasible(ms, s)
    lo0, hi0 = bracket if bracket is not None else _default_bracket(ms, s)
    if not lo0 < hi0:
        raise ValidationError(f"empty bracket ({lo0}, {hi0})")

    # The PSD tests run on D H D with D built from the even-moment diagonal:
    # congruence preserves definiteness exactly, and it equalizes the wildly
    # different scales of the basis directions (on a graph with radius r the
    # raw entries grow like r^(2s+1) while the crossing eigenvalue can move
    # with unit slope, so an unscaled tolerance would displace the threshold).
    scale_diag = np.array([1.0 / np.sqrt(ms.values[2 * i]) if ms.values[2 * i] > 0
                           else 1.0 for i in range(s + 1)])

    def h(c: float) -> np.ndarray:
        raw = localizing_matrix(ms, s, c).matrix
        return raw * np.outer(scale_diag, scale_diag)

    def upper_ok(c: float) -> bool:
        m = h(c)
        return float(np.linalg.eigvalsh(m)[-1]) <= psd_tolerance(m, base=1e-13)

    def lower_ok(c: float) -> bool:
        m = h(c)
        return float(np.linalg.eigvalsh(m)[0]) >= -psd_tolerance(m, base=1e-13)

    def expand(point: float, step: float, pred, direction: float) -> float:
        for _ in range(_MAX_BRACKET_GROWTH):
            if pred(point):
                return point
            point += direction * step
            step *= 2.0
        raise InfeasibleMomentsError(
            f"no PSD transition found expanding {'up' if direction > 0 else 'down'} "
            f"from bracket ({lo0}, {hi0})")

    width0 = hi0 - lo0
    # final values are bracket midpoints, so the one-sided error is tol/2;
    # the certified-PSD endpoint would overshoot the spectrum on tight
    # instances (complete graphs), breaking the inner-approximation contract
    hi = expand(hi0, width0, upper_ok, +1.0)
    lo = expand(lo0, width0, lambda c: not upper_ok(c), -1.0)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if upper_ok(mid):
            hi = mid
        else:
            lo = mid
    upper = 0.5 * (lo + hi)

    lo = expand(lo0, width0, lower_ok, -1.0)
    hi = expand(hi0, width0, lambda c: not lower_ok(c), +1.0)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if lower_ok(mid):
            lo = mid
        else:
            hi = mid
    lower = 0.5 * (lo + hi)

    return SupportBounds(level=s, lower=float(lower), upper=float(upper),
                         method="bisection",
                         residual=_residual(ms, s, float(lower), float(upper)),
                         bracket=(float(lo0), float(hi0)))
