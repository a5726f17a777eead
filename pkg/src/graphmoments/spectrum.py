"""Exact dense spectral ground truth for desk-scale graphs.

This module is the validation backbone: every moment formula and every bound
in the package is checked against these eigenvalues in the test suite.  It
deliberately refuses large graphs; for those, the moment-based machinery is
the intended path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .moments import MomentSequence, moments_from_spectrum

DEFAULT_EIG_CAP = 5000


@dataclass(frozen=True)
class SpectrumSummary:
    """Adjacency eigenvalues sorted descending, with radius and power-sum moments."""

    eigenvalues: np.ndarray
    moments: MomentSequence

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def spectral_radius(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i in range(g.n):
        a[i, g.neighbors(i)] = 1.0
    return a


def eigenvalues(g: Graph, cap: int = DEFAULT_EIG_CAP, validate: bool = False) -> SpectrumSummary:
    """Full symmetric eigendecomposition of the adjacency matrix.

    Raises when the graph exceeds ``cap`` nodes: decomposition cost grows
    cubically, and the moment-based bounds exist precisely so that large
    graphs never need this routine.  With ``validate`` set, eigenpairs at
    both spectral edges are recomputed with eigenvectors and their residuals
    checked against 1e-8 * ||A||.
    """
    if g.n > cap:
        raise ValidationError(
            f"graph has {g.n} nodes, above the dense-eigensolver cap ({cap}); "
            "use the moment-based bounds instead")
    if g.n == 0:
        raise ValidationError("spectrum of the empty graph is undefined")
    a = adjacency_matrix(g)
    eigs = np.linalg.eigvalsh(a)[::-1].copy()
    if validate:
        norm = max(1.0, float(np.abs(a).max() * g.n))
        w, v = np.linalg.eigh(a)
        for col in (0, len(w) - 1):
            resid = np.linalg.norm(a @ v[:, col] - w[col] * v[:, col])
            if resid > 1e-8 * norm:
                raise ValidationError(f"eigenpair residual {resid:.2e} out of tolerance")
    return SpectrumSummary(eigenvalues=eigs, moments=moments_from_spectrum(eigs))


def spectral_cdf(summary: SpectrumSummary, alpha: float) -> float:
    """Fraction of eigenvalues that are <= alpha (closed at alpha)."""
    ascending = summary.eigenvalues[::-1]
    return float(np.searchsorted(ascending, alpha, side="right")) / summary.n


def histogram(summary: SpectrumSummary, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width histogram of the spectrum over [min eigenvalue, radius].

    Returns (edges, counts); counts always sum to n.  A one-point spectrum
    collapses to a single bin.
    """
    if bins < 1:
        raise ValidationError(f"need at least one bin, got {bins}")
    lo, hi = summary.min_eigenvalue, summary.spectral_radius
    if hi <= lo:
        edges = np.linspace(lo - 0.5, lo + 0.5, bins + 1)
        counts = np.zeros(bins, dtype=np.int64)
        counts[bins // 2] = summary.n
        return edges, counts
    counts, edges = np.histogram(summary.eigenvalues, bins=bins, range=(lo, hi))
    return edges, counts.astype(np.int64)
