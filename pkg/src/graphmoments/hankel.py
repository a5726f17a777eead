"""Hankel moment matrices, Hamburger feasibility, and localizing matrices.

A truncated sequence (m_0, ..., m_2s) is the moment sequence of some positive
measure on the real line exactly when the Hankel matrix with entries m_{i+j}
is positive semidefinite; strict definiteness is what guarantees a zero
duality gap for the interval-mass programs built on top.  The localizing
matrix shifts the odd Hankel matrix by c times the even one, and its PSD
boundary in c brackets the support of the measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError
from .moments import MomentSequence


@dataclass(frozen=True)
class HankelPair:
    """Even and odd Hankel moment matrices at level s, both (s+1) x (s+1)."""

    level: int
    even: np.ndarray   # entry (i, j) = m_{i+j}
    odd: np.ndarray    # entry (i, j) = m_{i+j+1}


@dataclass(frozen=True)
class LocalizingMatrix:
    """odd - shift * even; entries are degree-1 polynomials in the shift."""

    level: int
    shift: float
    matrix: np.ndarray


class FeasibilityResult(NamedTuple):
    feasible: bool
    min_eigenvalue: float


def psd_tolerance(matrix: np.ndarray, base: float = 1e-9) -> float:
    """Scale-aware PSD tolerance: real-network moments reach 1e6, so an
    absolute threshold would misclassify; tie it to the largest entry."""
    return base * (1.0 + float(np.abs(matrix).max(initial=0.0)))


def hankel_pair(ms: MomentSequence, s: int) -> HankelPair:
    if s < 0:
        raise ValidationError(f"level must be nonnegative, got {s}")
    ms.require_order(2 * s + 1)
    m = ms.values
    even = np.array([[m[i + j] for j in range(s + 1)] for i in range(s + 1)])
    odd = np.array([[m[i + j + 1] for j in range(s + 1)] for i in range(s + 1)])
    return HankelPair(level=s, even=even, odd=odd)


def hankel_even(ms: MomentSequence, s: int) -> np.ndarray:
    """The even Hankel matrix alone (needs moments only up to 2s)."""
    if s < 0:
        raise ValidationError(f"level must be nonnegative, got {s}")
    ms.require_order(2 * s)
    m = ms.values
    return np.array([[m[i + j] for j in range(s + 1)] for i in range(s + 1)])


def is_feasible_hamburger(ms: MomentSequence, s: int,
                          tol: float | None = None) -> FeasibilityResult:
    """PSD test on the even Hankel matrix, reporting the witness eigenvalue."""
    r = hankel_even(ms, s)
    if tol is None:
        tol = psd_tolerance(r)
    lam = float(np.linalg.eigvalsh(r)[0])
    return FeasibilityResult(feasible=lam >= -tol, min_eigenvalue=lam)


def strong_duality_holds(ms: MomentSequence, s: int, tol: float | None = None) -> bool:
    """Strict positive definiteness of the even Hankel matrix.

    Fails only for degenerate spectra whose measure has at most s distinct
    atoms (complete graphs at s=2, single-atom measures at s=1, ...).
    """
    r = hankel_even(ms, s)
    if tol is None:
        tol = psd_tolerance(r)
    return float(np.linalg.eigvalsh(r)[0]) > tol


def localizing_matrix(ms: MomentSequence, s: int, c: float) -> LocalizingMatrix:
    pair = hankel_pair(ms, s)
    return LocalizingMatrix(level=s, shift=float(c),
                            matrix=pair.odd - float(c) * pair.even)
