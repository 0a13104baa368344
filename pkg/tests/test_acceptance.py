"""Acceptance criteria, one test per criterion.

Each test prints `PASS <criterion>` after its assertions; run with
`pytest -s tests/test_acceptance.py` to see the lines. Stated runtime
budgets are asserted with a wall clock.
"""

import itertools
import math
import time

import numpy as np
import pytest
from scipy import stats

from pcmkit import cli, completion, core, ensemble, indices, priority

from test_indices import gci_oracle, im_oracle, re_oracle


def _done(name):
    print(f"PASS {name}")


def test_k_exactness_on_aks():
    t0 = time.perf_counter()
    for n in range(3, 51):
        rep = indices.k_index(core.a_ks(n, 2.0))
        assert abs(rep.value - 0.5) <= 1e-12
        assert rep.verdict == "needs_revision"
        assert rep.threshold == pytest.approx(1 / 3)
    assert time.perf_counter() - t0 < 1.0
    _done("K exactness on A_KS: K = 0.5 (+-1e-12) for n = 3..50, needs_revision, < 1 s")


def test_ci_asymptotics():
    t0 = time.perf_counter()
    vals = {n: indices.ci(core.a_ks(n, 2.0)).value for n in range(3, 101)}
    ordered = [vals[n] for n in range(3, 101)]
    assert all(b < a for a, b in zip(ordered, ordered[1:]))
    assert vals[100] < 0.1 * vals[5]
    assert time.perf_counter() - t0 < 5.0
    _done("CI asymptotics: strictly decreasing over n = 3..100, CI(100) < 0.1 CI(5), < 5 s")


def test_triad_membership_count_brute_force():
    for n in range(3, 11):
        ts = core.triads(core.a_ks(n, 2.0))
        assert len(ts) == math.comb(n, 3)
        for i, j in itertools.combinations(range(1, n + 1), 2):
            assert sum(1 for t in ts if i in t.indices and j in t.indices) == n - 2
    _done("Triad membership: every position in exactly n-2 triads, n = 3..10, exhaustive count")


def test_triad_ratio_law():
    for n in range(3, 21):
        ratio = core.inconsistent_triad_ratio(core.a3(n, 2.0, 0.5))
        assert abs(ratio - 6.0 / ((n - 1) * n)) <= 1e-12
    _done("Triad ratio law: ratio(A3(n, 2, 0.5)) = 6/((n-1)n) (+-1e-12), n = 3..20")


def test_counterexample_suite_all_pass():
    k1 = indices.k_index(core.a1()).value
    k2 = indices.k_index(core.a2()).value
    assert k1 > k2
    assert core.inconsistent_triad_ratio(core.a1()) == pytest.approx(0.3, abs=1e-12)
    assert core.inconsistent_triad_ratio(core.a2()) == 1.0
    for n, alpha, eps in itertools.product((5, 8, 12), (2.0, 3.0), (0.25, 1.0)):
        assert indices.k_index(core.a3(n, alpha, eps)).value > indices.k_index(
            core.a4(n, alpha)
        ).value
    before = core.order5_example()
    upper = dict(before.upper_pairs())
    upper[(1, 5)] = 7.5
    after = core.make_pcm(list(upper.items()))

    def phis(m):
        return {
            t: core.phi(m.value(t[0], t[1]), m.value(t[1], t[2]), m.value(t[0], t[2]))
            for t in ((1, 2, 5), (1, 3, 5), (1, 4, 5))
        }

    pb, pa = phis(before), phis(after)
    assert pa[(1, 2, 5)] > pb[(1, 2, 5)]
    assert pa[(1, 3, 5)] < pb[(1, 3, 5)]
    assert pa[(1, 4, 5)] < pb[(1, 4, 5)]
    checks = ensemble.counterexample_suite()
    assert all(c.passed for c in checks)
    _done("Counterexample suite all-pass: K(A1)>K(A2), triad counts, K(A3)>K(A4) grid, perturbation")


def test_quasiconvexity_fig2():
    t0 = time.perf_counter()
    res = ensemble.quasiconvexity_scan(
        core.fig2_3x3(7.0), grid=indices.ScanGrid(points=401, lo=0.1, hi=40.0)
    )
    assert res.unimodal
    step = math.log(res.xs[1] / res.xs[0])
    assert abs(math.log(res.argmin_x / 1.5)) <= step + 1e-12
    assert res.min_value < 1e-9
    assert time.perf_counter() - t0 < 1.0
    _done("Quasi-convexity: 401-point scan over [0.1, 40] unimodal, argmin ~ 1.5, min < 1e-9, < 1 s")


def test_axiom_conformance():
    spec = ensemble.GeneratorSpec(kind="saaty_uniform", n=3, seed=2016)
    samples = list(ensemble.generate(spec, 1000))
    rep_ci = indices.check_axioms(indices.ci, samples, bound="relaxed")
    assert rep_ci.all_hold
    rep_k = indices.check_axioms(indices.k_index, samples, bound="strict")
    assert rep_k.all_hold
    _done("Axiom conformance: CI (relaxed) and K (strict) pass on 1000 random 3x3 matrices")


def test_consistency_iff_spectrum():
    spec0 = ensemble.GeneratorSpec(kind="perturbed_consistent", n=6, seed=5,
                                   params={"sigma": 0.0})
    for m in ensemble.generate(spec0, 1000):
        assert priority.eigen_priority(m).lambda_max == pytest.approx(6.0, abs=1e-9)
        for fn in indices.INDEX_FUNCTIONS.values():
            assert fn(m).value <= 1e-9
    spec5 = ensemble.GeneratorSpec(kind="perturbed_consistent", n=6, seed=6,
                                   params={"sigma": 0.5})
    for m in ensemble.generate(spec5, 1000):
        assert priority.eigen_priority(m).lambda_max > 6.0
    _done("Consistency <=> spectrum: sigma=0 gives lambda_max=n and all indices ~0; sigma=0.5 gives lambda_max>n")


def test_completion_oracle_agreement():
    t0 = time.perf_counter()
    m = core.eq2_incomplete()
    oracle = completion.grid_oracle(m, index="ci", resolution=601)
    res = completion.complete(m, index="ci")
    assert res.objective == pytest.approx(oracle.objective, rel=1e-4)

    w = (4.0, 2.0, 1.0, 0.5)
    known = {
        (i, j): w[i - 1] / w[j - 1]
        for i, j in itertools.combinations(range(1, 5), 2)
        if (i, j) != (1, 3)
    }
    frame = core.IncompletePcm(n=4, known=known, missing=frozenset({(1, 3)}))
    single = completion.complete(frame, index="ci")
    assert single.values[(1, 3)] == pytest.approx(4.0, abs=1e-9)
    assert time.perf_counter() - t0 < 10.0
    _done("Completion oracle agreement: objective within 1e-4 of 601^2 grid; consistent frame exact, < 10 s")


def test_scatter_qualitative_reproduction():
    t0 = time.perf_counter()
    spec = ensemble.GeneratorSpec(kind="saaty_uniform", n=6, seed=1)
    rows, summary = ensemble.scatter_study(spec, 2000, "im", "re")
    assert len(rows) == 2000
    xs = np.array([r.x for r in rows])
    ys = np.array([r.y for r in rows])
    assert np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))
    assert np.all(xs >= 0) and np.all(ys >= 0)
    assert 0.0 < summary.spearman < 0.99
    rx = stats.rankdata(xs) / len(xs)
    ry = stats.rankdata(ys) / len(ys)
    discordant = np.any(((rx >= 0.9) & (ry <= 0.3)) | ((ry >= 0.9) & (rx <= 0.3)))
    assert discordant
    assert time.perf_counter() - t0 < 30.0
    _done("Scatter qualitative: 2000 matrices, Spearman in (0, 0.99), extreme-rank discordance, < 30 s")


def test_literature_index_oracle_equivalence():
    rng = np.random.default_rng(2024)
    from conftest import random_pcm

    for _ in range(200):
        n = int(rng.integers(3, 9))
        m = random_pcm(rng, n)
        assert indices.gci(m).value == pytest.approx(gci_oracle(m), rel=1e-9)
        assert indices.re_index(m).value == pytest.approx(re_oracle(m), rel=1e-9)
        assert indices.im_index(m).value == pytest.approx(im_oracle(m), rel=1e-9)
    _done("Oracle equivalence: GCI, RE, IM match brute-force oracles to 1e-9 on 200 matrices, n = 3..8")


def test_cli_study_determinism(tmp_path, capsys):
    jobs = [
        ("scatter", ["study", "scatter", "--x", "im", "--y", "re", "--n", "6",
                     "--count", "200", "--seed", "17"]),
        ("scan", ["study", "scan", "--index", "ci"]),
        ("asymptotic", ["study", "asymptotic", "--x", "2", "--n-range", "3..30"]),
        ("suite", ["study", "suite"]),
    ]
    for name, argv in jobs:
        a, b = tmp_path / f"{name}_a.csv", tmp_path / f"{name}_b.csv"
        for path in (a, b):
            assert cli.main(argv + ["--out", str(path)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes(), name
    _done("Determinism: every CLI study re-run with identical flags/seed is byte-identical")
