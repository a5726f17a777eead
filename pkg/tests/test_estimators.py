import math

import numpy as np
import pytest

from graphmoments import (CensusAggregates, DegenerateInputError, Graph, aggregates,
                          chung_lu_estimator, classical_bounds, eigenvalues,
                          estimator_report, generate, moments_from_census,
                          node_census, social_estimators)


def test_classical_bounds_k4_tight():
    u1, u2 = classical_bounds(generate("complete", 4))
    assert u1 == pytest.approx(3.0)
    assert u2 == pytest.approx(3.0)


def test_classical_bounds_ring():
    u1, u2 = classical_bounds(generate("ring", 6))
    assert u1 == pytest.approx(2.0)     # sqrt(12 - 10 + 2)
    assert u2 == pytest.approx(2.0)


def test_classical_bounds_star():
    # star on 5 nodes has radius 2; the neighbor-degree bound is tight here
    u1, u2 = classical_bounds(generate("star", 5))
    assert u2 == pytest.approx(2.0)
    assert u1 >= 2.0


def test_classical_bounds_edgeless():
    with pytest.raises(DegenerateInputError):
        classical_bounds(Graph.from_edges(3, []))


def test_classical_bounds_sound(small_er_corpus, named_graphs):
    for g in list(named_graphs.values()) + small_er_corpus[:10]:
        if g.edge_count == 0:
            continue
        rho = eigenvalues(g).spectral_radius
        u1, u2 = classical_bounds(g)
        assert u1 >= rho - 1e-8 * max(1.0, rho)
        assert u2 >= rho - 1e-8 * max(1.0, rho)


def test_chung_lu_regular():
    for k, g in ((2, generate("ring", 7)), (3, generate("complete", 4))):
        assert chung_lu_estimator(g.degrees()) == pytest.approx(k)


def test_chung_lu_star_overshoots():
    w = chung_lu_estimator(generate("star", 5).degrees())
    assert w == pytest.approx(20 / 8)
    assert w > 2.0  # true radius


def test_chung_lu_zero_degrees():
    with pytest.raises(DegenerateInputError):
        chung_lu_estimator([0, 0, 0])


def test_social_estimators_k6():
    # K6 totals: 20 triangles, 72 pentagons, degree-triangle sum 6*5*10 = 300;
    # radicand 10*72 + 10*300 - 30*20 = 3120 = trace of the 5th power
    agg = aggregates(node_census(generate("complete", 6)))
    dom, simple = social_estimators(agg)
    assert dom == pytest.approx(3120 ** 0.2)
    assert dom == pytest.approx(5.0, abs=2e-3)   # near the true radius 5
    assert simple == pytest.approx(3720 ** 0.2)
    assert simple >= dom


def test_social_estimators_facebook_published():
    n = 2404
    agg = CensusAggregates(n=n, edges=9.478 * n, triangles=28.15 * n,
                           quadrangles=825.3 * n, pentagons=31794 * n,
                           degree_square_sum=1318 * n, degree_triangle_sum=8520 * n)
    dom, _ = social_estimators(agg)
    assert dom == pytest.approx(62.6, abs=0.5)


def test_social_estimators_undefined_on_even_ring():
    agg = aggregates(node_census(generate("ring", 6)))
    assert social_estimators(agg) == (None, None)


def test_dominance_fifth_power_is_total_walks(small_er_corpus):
    for g in small_er_corpus[:10]:
        agg = aggregates(node_census(g))
        ms = moments_from_census(node_census(g))
        dom, _ = social_estimators(agg)
        if dom is None:
            continue
        assert dom ** 5 == pytest.approx(g.n * ms.values[5], rel=1e-9)


def test_simplified_dominates(small_er_corpus):
    for g in small_er_corpus:
        dom, simple = social_estimators(aggregates(node_census(g)))
        if dom is not None and simple is not None:
            assert simple >= dom


def test_estimator_report_fields():
    g = generate("erdos_renyi", 40, p=0.3, seed=9)
    rep = estimator_report(g, aggregates(node_census(g)))
    rho = eigenvalues(g).spectral_radius
    assert rep.edge_degree_bound >= rho - 1e-9
    assert rep.neighbor_degree_bound >= rho - 1e-9
    assert rep.chung_lu > 0
    assert rep.dominance is not None and rep.dominance > 0


def test_estimator_report_carries_inputs():
    g = generate("complete", 6)
    rep = estimator_report(g, aggregates(node_census(g)))
    assert rep.inputs_summary["pentagons"] == 72
    assert rep.inputs_summary["n"] == 6
