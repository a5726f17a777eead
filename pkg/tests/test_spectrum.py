import math

import numpy as np
import pytest

from graphmoments import (Graph, ValidationError, eigenvalues, generate, histogram,
                          moments_from_census, node_census, spectral_cdf)
from conftest import spectrum_scale


def test_k3_spectrum():
    s = eigenvalues(generate("complete", 3))
    assert s.eigenvalues == pytest.approx([2.0, -1.0, -1.0])
    assert s.spectral_radius == pytest.approx(2.0)
    assert s.min_eigenvalue == pytest.approx(-1.0)


def test_ring_cosine_spectrum():
    n = 12
    s = eigenvalues(generate("ring", n))
    expected = np.sort(2 * np.cos(2 * np.pi * np.arange(n) / n))[::-1]
    assert np.allclose(s.eigenvalues, expected, atol=1e-9)


def test_star_spectrum():
    s = eigenvalues(generate("star", 5))
    assert s.eigenvalues == pytest.approx([2.0, 0.0, 0.0, 0.0, -2.0], abs=1e-9)


def test_trace_is_zero(small_er_corpus):
    for g in small_er_corpus[:8]:
        s = eigenvalues(g)
        bound = 1e-8 * g.n * max(1.0, s.spectral_radius)
        assert abs(float(s.eigenvalues.sum())) <= bound


def test_radius_between_mean_and_max_degree(small_er_corpus):
    for g in small_er_corpus[:8]:
        if g.edge_count == 0:
            continue
        s = eigenvalues(g)
        assert s.spectral_radius <= float(g.degrees().max()) + 1e-9
        assert s.spectral_radius >= 2 * g.edge_count / g.n - 1e-9


def test_validated_eigenpairs():
    eigenvalues(generate("erdos_renyi", 30, p=0.3, seed=17), validate=True)


def test_cap_refusal_mentions_moments():
    g = generate("ring", 50)
    with pytest.raises(ValidationError, match="moment"):
        eigenvalues(g, cap=10)


def test_empty_graph_refused():
    with pytest.raises(ValidationError):
        eigenvalues(Graph.from_edges(0, []))


def test_master_cross_validation(small_er_corpus, named_graphs):
    """Spectrum moments match census moments on every desk-scale graph."""
    for g in small_er_corpus[:10] + list(named_graphs.values()):
        s = eigenvalues(g)
        mc = moments_from_census(node_census(g))
        for k in range(6):
            scale = max(1.0, spectrum_scale(s.eigenvalues, k))
            assert abs(mc.values[k] - s.moments.values[k]) <= 1e-9 * scale


def test_cdf_at_atoms():
    atoms = np.repeat([-2.0, -1.0, 0.0, 1.0, 2.0], [1, 2, 3, 2, 1])
    from graphmoments import moments_from_spectrum
    from graphmoments.spectrum import SpectrumSummary
    s = SpectrumSummary(eigenvalues=np.sort(atoms)[::-1],
                        moments=moments_from_spectrum(atoms))
    assert spectral_cdf(s, 0.0) == pytest.approx(6 / 9)
    assert spectral_cdf(s, -2.0) == pytest.approx(1 / 9)
    assert spectral_cdf(s, -2.5) == 0.0
    assert spectral_cdf(s, 2.0) == 1.0
    assert spectral_cdf(s, 99.0) == 1.0


def test_cdf_k3():
    # exact triangle spectrum: the computed one carries +/- 1 ulp jitter at
    # the repeated atom, which a closed-at-alpha count is sensitive to
    from graphmoments import moments_from_spectrum
    from graphmoments.spectrum import SpectrumSummary
    s = SpectrumSummary(eigenvalues=np.array([2.0, -1.0, -1.0]),
                        moments=moments_from_spectrum([2.0, -1.0, -1.0]))
    assert spectral_cdf(s, -1.0) == pytest.approx(2 / 3)
    assert spectral_cdf(s, -1.1) == 0.0
    assert spectral_cdf(s, 2.0) == 1.0


def test_cdf_monotone_right_continuous(small_er_corpus):
    s = eigenvalues(small_er_corpus[0])
    grid = np.linspace(s.min_eigenvalue - 1, s.spectral_radius + 1, 101)
    values = [spectral_cdf(s, a) for a in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[-1] == 1.0
    # right-continuity at an atom: approaching from above gives the atom value
    atom = s.spectral_radius
    assert spectral_cdf(s, atom + 1e-12) == spectral_cdf(s, atom)


def test_histogram_k3_two_bins():
    edges, counts = histogram(eigenvalues(generate("complete", 3)), 2)
    assert list(counts) == [2, 1]
    assert edges[0] == pytest.approx(-1.0) and edges[-1] == pytest.approx(2.0)


def test_histogram_single_bin():
    for g in (generate("ring", 7), generate("path", 4)):
        s = eigenvalues(g)
        _, counts = histogram(s, 1)
        assert counts.sum() == g.n


def test_histogram_ring8_symmetric_counts():
    # cosine spectrum of the 8-ring is symmetric; with 5 bins no eigenvalue
    # sits on an interior edge, so the counts mirror exactly
    s = eigenvalues(generate("ring", 8))
    _, counts = histogram(s, 5)
    assert list(counts) == [3, 0, 2, 0, 3]
    assert list(counts) == list(counts[::-1])


def test_histogram_counts_always_sum_to_n(small_er_corpus):
    for g in small_er_corpus[:6]:
        s = eigenvalues(g)
        for bins in (1, 2, 7):
            _, counts = histogram(s, bins)
            assert counts.sum() == g.n


def test_histogram_degenerate_spectrum():
    s = eigenvalues(Graph.from_edges(3, []))
    edges, counts = histogram(s, 3)
    assert counts.sum() == 3


def test_histogram_rejects_zero_bins():
    with pytest.raises(ValidationError):
        histogram(eigenvalues(generate("ring", 5)), 0)
