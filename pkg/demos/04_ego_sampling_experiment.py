#!/usr/bin/env python3
"""Batch experiment: moment bounds as radius estimators on ego subgraphs.

Mirrors the production use case: sample many 2-hop neighborhoods from one
large graph, compute the level-1/level-2 radius bounds and the closed-form
estimators on each, and correlate everything against the exact radius.
On clustered graphs the five-moment bound tracks the radius closely, which
is what makes it usable as an estimator and not just a guarantee.
"""

import numpy as np

from graphmoments import generate, sample_ego

print("=" * 72)
print("200 ego subgraphs (radius 2) from a seeded 3000-node sparse graph")
print("=" * 72)

graph = generate("erdos_renyi", 3000, p=0.003, seed=2718)
result = sample_ego(graph, count=200, radius=2, seed=99, threads=4)

rows = [r for r in result.rows if r["rho"] is not None and r["beta2"] is not None]
print(f"\nanalyzed {len(result.rows)} subgraphs "
      f"({len(rows)} with every quantity defined)")

print(f"\n{'root':>6} {'n':>5} {'e':>6} {'radius':>8} {'beta1':>8} {'beta2':>8} "
      f"{'chung_lu':>9} {'dominance':>10}")
for row in rows[:12]:
    dom = f"{row['dominance']:10.3f}" if row["dominance"] is not None else " " * 10
    print(f"{row['root']:>6} {row['n']:>5} {row['e']:>6} {row['rho']:8.3f} "
          f"{row['beta1']:8.3f} {row['beta2']:8.3f} {row['chung_lu']:9.3f}{dom}")
print("   ...")

violations = sum(1 for r in rows if r["beta2"] > r["rho"] + 1e-6)
print(f"\nbeta2 <= radius on every row: {violations == 0} "
      f"({violations} violations out of {len(rows)})")

print("\nPearson correlation with the exact spectral radius:")
for key in ("beta1", "beta2", "chung_lu", "dominance", "dominance_simple"):
    corr = result.correlations[key]
    label = f"{corr:+.4f}" if corr is not None else "undefined"
    print(f"  {key:18s} {label}")

print("""
The level-2 bound is simultaneously a guarantee (never above the radius)
and, on graphs with enough cycle structure, a competitive point estimate.
The same experiment is available from the command line:

  graphmoments sample-ego --generate erdos_renyi:3000:0.003 \\
      --count 200 --radius 2 --seed 99 --threads 4 --format csv
""")
