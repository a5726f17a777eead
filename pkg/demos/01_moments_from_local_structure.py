#!/usr/bin/env python3
"""Spectral moments from local structure, three ways.

The average of the k-th powers of a graph's adjacency eigenvalues equals the
number of closed k-walks divided by n, and closed walks up to length five
decompose into degrees, triangles, quadrangles, and pentagons.  This demo
computes the first five moments of several graphs by

  1. the structural census (count cycles per node, apply the formulas),
  2. raw closed-walk counting, and
  3. explicit eigendecomposition,

and shows all three agree.  It closes with a dataset-free reproduction of a
published 2404-node social-subgraph example from rounded aggregate counts.
"""

import numpy as np

from graphmoments import (CensusAggregates, aggregates, eigenvalues, generate,
                          moments_from_aggregates, moments_from_census,
                          moments_from_walks, node_census, social_estimators)


def show(title, g):
    census = node_census(g)
    by_census = moments_from_census(census)
    by_walks = moments_from_walks(g)
    by_spectrum = eigenvalues(g).moments
    print(f"\n{title}  (n={g.n}, e={g.edge_count})")
    print(f"  census route:   {np.round(by_census.values[1:], 6)}")
    print(f"  walk route:     {np.round(by_walks.values[1:], 6)}")
    print(f"  spectrum route: {np.round(by_spectrum.values[1:], 6)}")
    assert by_census.numerators == by_walks.numerators
    return by_census


print("=" * 72)
print("Three independent moment routes")
print("=" * 72)

show("complete graph K4", generate("complete", 4))
show("6-ring (fourth moment is 6 for every ring except n=2,4)", generate("ring", 6))
show("5-ring (the pentagon shows up in the fifth moment)", generate("ring", 5))
show("random graph G(24, 0.3)", generate("erdos_renyi", 24, p=0.3, seed=7))

print("\n" + "=" * 72)
print("Published social-subgraph aggregates (2404 nodes), no dataset needed")
print("=" * 72)

n = 2404
agg = CensusAggregates(n=n, edges=9.478 * n, triangles=28.15 * n,
                       quadrangles=825.3 * n, pentagons=31794 * n,
                       degree_square_sum=1318 * n, degree_triangle_sum=8520 * n)
ms = moments_from_aggregates(agg)
print(f"\n  published per-node averages: e/n=9.478, triangles/n=28.15,")
print(f"  quadrangles/n=825.3, pentagons/n=31794, sum d^2/n=1318, sum d*t/n=8520")
print(f"\n  derived moments m2..m5: {[float(f'{v:.6g}') for v in ms.values[2:]]}")
print(f"  published values:       [18.95, 168.9, 9230, 402310]")

dominance, simple = social_estimators(agg)
print(f"\n  fifth-moment radius estimate: {dominance:.1f}"
      f"   (published estimate 62.6; exact radius of that graph was 60.9)")
