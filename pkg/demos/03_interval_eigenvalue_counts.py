#!/usr/bin/env python3
"""Certified upper bounds on how many eigenvalues can sit in an interval.

Given only moments, the sharpest degree-k polynomial certificate bounds the
fraction of spectral mass in a target interval.  The demo works with a
five-atom measure (atoms at -2..2, weights 1:2:3:2:1) whose cumulative
distribution is known exactly, so the certified curve can be compared
pointwise against the truth it must dominate.  A discretized measure-side
linear program verifies the bound is not just valid but optimal.

Writes the sweep to interval_counts.csv next to this script.
"""

import csv
import pathlib

import numpy as np

from graphmoments import (IntervalQuery, MomentSequence, cdf_bound_sweep,
                          eigencount_upper, primal_lp_oracle)

measure = MomentSequence(n=9, values=(1.0, 0.0, 4 / 3, 0.0, 4.0, 0.0))
atoms = np.repeat([-2.0, -1.0, 0.0, 1.0, 2.0], [1, 2, 3, 2, 1])
window = (-3.0, 3.0)


def exact_cdf(alpha):
    return float(np.mean(atoms <= alpha))


print("=" * 72)
print("Certified CDF bound vs exact CDF (five-atom measure, 5 moments)")
print("=" * 72)
print(f"\n{'alpha':>7} {'certified bound':>16} {'exact CDF':>10}")
alphas = np.arange(-5.0, 3.001, 0.25)
points = cdf_bound_sweep(measure, alphas, window, order=5)
for alpha, bound in points:
    gap = "" if bound >= exact_cdf(alpha) else "   VIOLATION"
    print(f"{alpha:7.2f} {bound:16.4f} {exact_cdf(alpha):10.4f}{gap}")
    assert bound >= exact_cdf(alpha) - 1e-9

out = pathlib.Path(__file__).with_name("interval_counts.csv")
with out.open("w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["alpha", "bound", "exact_cdf"])
    for alpha, bound in points:
        writer.writerow([alpha, bound, exact_cdf(alpha)])
print(f"\nwrote {out}")

print("\n" + "=" * 72)
print("The bound is optimal: the measure side of the program agrees")
print("=" * 72)
print(f"\n{'moments used':>13} {'certificate':>12} {'measure LP':>11} {'true mass':>10}")
for order in (2, 3, 4, 5):
    query = IntervalQuery(target=(-3.0, -2.0), window=window, order=order)
    dual = eigencount_upper(measure, query)
    lp = primal_lp_oracle(measure, query, grid_size=10000)
    print(f"{order:>13} {dual.bound:12.5f} {lp:11.5f} {exact_cdf(-2.0):10.5f}")

print("\nEach extra moment tightens the certificate toward the true mass 1/9;")
print("the polynomial certificates themselves are returned and can be checked")
print("by direct evaluation:")
res = eigencount_upper(measure, IntervalQuery((-3.0, -2.0), window, 5))
poly = np.polynomial.Polynomial(res.coefficients)
grid = np.linspace(*window, 20001)
print(f"  min p(x) over the window:  {poly(grid).min():+.2e}  (must be >= 0)")
tgrid = np.linspace(-3.0, -2.0, 2001)
print(f"  min p(x) - 1 over target:  {poly(tgrid).min() - 1:+.2e}  (must be >= 0)")
