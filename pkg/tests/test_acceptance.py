"""Acceptance suite: the package's exit criteria.

Each test covers one numbered criterion, runs it at its stated tolerance,
and prints one PASS/FAIL line (run with ``pytest -s`` to see them live).
Golden values for the Enron, AS-Skitter, and Facebook rows are published
moment data; everything else is checked against independent oracles
computed in-test.
"""

import contextlib
import io
import json
import time

import numpy as np
import pytest

from graphmoments import (CensusAggregates, IntervalQuery, MomentSequence,
                          brute_force_cycles, bounds_bisect, bounds_s1, bounds_s2,
                          cdf_bound_sweep, eigencount_upper, eigenvalues, generate,
                          moments_from_aggregates, moments_from_census,
                          moments_from_walks, node_census, primal_lp_oracle,
                          social_estimators, walk_diagonal)
from graphmoments.cli import main as cli_main
from conftest import ER_PROBS, ER_SIZES, family_corpus, seeded_er, spectrum_scale

EX2 = MomentSequence(n=9, values=(1.0, 0.0, 4 / 3, 0.0, 4.0, 0.0))
EX2_ATOMS = np.repeat([-2.0, -1.0, 0.0, 1.0, 2.0], [1, 2, 3, 2, 1])


class _Budget:
    def __init__(self, number, name, seconds):
        self.number, self.name, self.seconds = number, name, seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None and elapsed < self.seconds else "FAIL"
        print(f"ACCEPTANCE {self.number} {status} {self.name} "
              f"[{elapsed:.2f}s / {self.seconds:.0f}s]")
        if exc_type is None:
            assert elapsed < self.seconds, f"runtime {elapsed:.2f}s over budget"
        return False


def _cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(list(argv))
    return code, out.getvalue()


def _er_corpus_200():
    return [seeded_er(i) for i in range(200)]


def test_criterion_1_enron_golden_bound(tmp_path):
    path = tmp_path / "enron.json"
    path.write_text(json.dumps(
        {"n": 3215, "m": [1, 0, 22.47, 394.7, 33491, 2603200], "source": "external"}))
    with _Budget(1, "Enron golden bound", 1.0):
        code, out = _cli("bounds", "--level", "2", "--moments-file", str(path))
        assert code == 0
        rec = json.loads(out)["2"]
        assert rec["upper"] == pytest.approx(78.53, abs=0.05)
        assert rec["lower"] <= 0.0


def test_criterion_2_skitter_golden_bound(tmp_path):
    path = tmp_path / "skitter.json"
    path.write_text(json.dumps(
        {"n": 2248, "m": [1, 0, 18.37, 341.1, 40001, 2777018], "source": "external"}))
    with _Budget(2, "AS-Skitter golden bound", 1.0):
        code, out = _cli("bounds", "--level", "2", "--moments-file", str(path))
        assert code == 0
        assert json.loads(out)["2"]["upper"] == pytest.approx(74.72, abs=0.05)


def test_criterion_3_facebook_moment_pipeline():
    with _Budget(3, "Facebook-2404 published aggregates", 1.0):
        n = 2404
        agg = CensusAggregates(n=n, edges=9.478 * n, triangles=28.15 * n,
                               quadrangles=825.3 * n, pentagons=31794 * n,
                               degree_square_sum=1318 * n,
                               degree_triangle_sum=8520 * n)
        ms = moments_from_aggregates(agg)
        for value, target in zip(ms.values[2:6], (18.95, 168.9, 9230, 402310)):
            assert abs(value - target) / target < 0.002, (value, target)
        dominance, _ = social_estimators(agg)
        assert dominance == pytest.approx(62.6, abs=0.5)


def test_criterion_4_ring_fourth_moment():
    with _Budget(4, "ring m4 = 6 identity", 1.0):
        for n in (3, 5, 6, 7, 8, 12):
            ring = generate("ring", n)
            assert moments_from_census(node_census(ring)).values[4] == 6.0
            assert moments_from_walks(ring).values[4] == 6.0


def test_criterion_5_census_oracle_suite():
    with _Budget(5, "census vs brute-force on 200 seeded graphs", 60.0):
        for idx in range(200):
            g = seeded_er(idx)
            c = node_census(g)
            for i in range(g.n):
                assert brute_force_cycles(g, 3, i) == c.triangles[i]
                assert brute_force_cycles(g, 4, i) == c.quadrangles[i]
                assert brute_force_cycles(g, 5, i) == c.pentagons[i]
            d = c.degree.astype(np.int64)
            assert int(walk_diagonal(g, 4).sum()) == \
                int(np.sum(2 * c.quadrangles + 2 * d * (d - 1) + d))
            assert int(walk_diagonal(g, 5).sum()) == \
                int(np.sum(2 * c.pentagons + 10 * c.triangles * d - 10 * c.triangles))


def _corpus_6():
    graphs = [(f"er:{i}", seeded_er(i)) for i in range(200)]
    graphs += family_corpus(max_n=200)
    return graphs


def test_criterion_6_moment_triple_agreement():
    with _Budget(6, "census/walk/spectrum moment agreement", 120.0):
        for name, g in _corpus_6():
            mc = moments_from_census(node_census(g))
            mw = moments_from_walks(g)
            assert mc.numerators == mw.numerators, name
            s = eigenvalues(g)
            for k in range(6):
                # relative to the mean absolute eigenvalue power, the natural
                # conditioning scale (plain relative error is meaningless for
                # the exactly-zero odd moments of bipartite members)
                scale = max(1.0, spectrum_scale(s.eigenvalues, k))
                dev = abs(mc.values[k] - s.moments.values[k])
                assert dev <= 1e-9 * scale, (name, k, dev)


def test_criterion_7_bound_soundness_and_monotonicity():
    with _Budget(7, "support-bound soundness/monotonicity", 60.0):
        for name, g in _corpus_6():
            if g.edge_count == 0:
                continue
            ms = moments_from_census(node_census(g))
            s = eigenvalues(g)
            tol = 1e-8 * max(1.0, s.spectral_radius)
            b1 = bounds_s1(ms)
            b2 = bounds_s2(ms)
            assert b1.upper <= s.spectral_radius + tol, name
            assert b2.upper <= s.spectral_radius + tol, name
            assert b1.lower >= s.min_eigenvalue - tol, name
            assert b2.lower >= s.min_eigenvalue - tol, name
            assert b2.upper >= b1.upper - 1e-9, name
            assert b2.lower <= b1.lower + 1e-9, name
        # closed form vs bisection on a slice (bisection is the slow path)
        for name, g in _corpus_6()[:40]:
            if g.edge_count == 0:
                continue
            ms = moments_from_census(node_census(g))
            for level, closed in ((1, bounds_s1(ms)), (2, bounds_s2(ms))):
                b = bounds_bisect(ms, level, tol=1e-6)
                assert abs(b.upper - closed.upper) <= 1e-5, (name, level)
                assert abs(b.lower - closed.lower) <= 1e-5, (name, level)
        for n in (3, 4, 6, 10, 25, 60, 120, 200):
            b1 = bounds_s1(moments_from_census(node_census(generate("complete", n))))
            assert b1.upper == float(n - 1)          # exact two-atom tightness
            assert b1.lower == -1.0


def test_criterion_8_eigencount_domination():
    with _Budget(8, "eigencount domination (sweep + random intervals)", 120.0):
        alphas = np.arange(-5.0, 3.0 + 0.125, 0.25)
        points = cdf_bound_sweep(EX2, alphas, (-3.0, 3.0), 5)
        assert len(points) == 33
        for alpha, bound in points:
            exact = float(np.mean(EX2_ATOMS <= alpha))
            assert bound >= exact - 1e-9, alpha
            assert bound <= 1.0 + 1e-6, alpha
        rng = np.random.default_rng(2024)
        kinds = ("erdos_renyi", "ring", "complete", "star", "path")
        for idx in range(20):
            kind = kinds[idx % len(kinds)]
            n = int(rng.integers(6, 30))
            g = generate(kind, n, p=0.35, seed=700 + idx) \
                if kind == "erdos_renyi" else generate(kind, n)
            if g.edge_count == 0:
                continue
            ms = moments_from_census(node_census(g))
            s = eigenvalues(g)
            dmax = float(g.degrees().max())
            for _ in range(10):
                ends = np.sort(rng.uniform(-dmax, dmax, size=2))
                frac = float(np.mean((s.eigenvalues >= ends[0])
                                     & (s.eigenvalues <= ends[1])))
                res = eigencount_upper(
                    ms, IntervalQuery((float(ends[0]), float(ends[1])),
                                      (-dmax, dmax), 4))
                assert res.bound >= frac - 1e-7, (kind, n, ends)


def test_criterion_9_strong_duality():
    with _Budget(9, "certificate vs discretized primal", 30.0):
        query = IntervalQuery((-3.0, -2.0), (-3.0, 3.0), 5)
        dual = eigencount_upper(EX2, query).bound
        primal = primal_lp_oracle(EX2, query, grid_size=10000)
        assert abs(dual - primal) <= 1e-2
        assert dual >= primal - 1e-7


def test_criterion_10_sample_ego_batch():
    with _Budget(10, "seeded 2000-node ego-sampling batch", 120.0):
        code, out = _cli("sample-ego", "--generate", "erdos_renyi:2000:0.004",
                         "--count", "20", "--radius", "2", "--seed", "42")
        assert code == 0
        data = json.loads(out)
        assert len(data["rows"]) == 20
        for row in data["rows"]:
            if row["beta2"] is not None and row["rho"] is not None:
                assert row["beta2"] <= row["rho"] + 1e-6
        corr = data["correlations"]["beta2"]
        assert corr is not None and -1.0 <= corr <= 1.0
        print(f"  corr(beta2, rho) = {corr:.4f} over {len(data['rows'])} subgraphs")
