"""Random-matrix ensembles and the reproducible numerical studies.

Everything here is a pure function of (spec, seed, grid): streams are
drawn from numpy's seeded PCG64 generator, so identical inputs give
byte-identical outputs. CSV files carry a `#` metadata line followed by a
mandatory header; values are printed with 12 significant digits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import core, indices, priority
from .core import Pcm, make_pcm
from .indices import INDEX_FUNCTIONS, ScanGrid

#: the 17-value multiplicative judgment scale {1/9 ... 1/2, 1, 2 ... 9}
SAATY_SCALE = np.array(
    [1.0 / k for k in range(9, 1, -1)] + [float(k) for k in range(1, 10)]
)

GENERATOR_KINDS = ("saaty_uniform", "log_uniform", "perturbed_consistent")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {GENERATOR_KINDS}")
        if self.n < 3:
            raise core.OrderTooSmall(f"generator order must be >= 3, got {self.n}")


def generate(spec: GeneratorSpec, count: int):
    """Deterministic stream of ``count`` random matrices.

    saaty_uniform: upper entries i.i.d. uniform over the 17-value scale.
    log_uniform: ln a_ij i.i.d. uniform on [-ln 9, ln 9].
    perturbed_consistent: a_ij = (w_i / w_j) exp(e_ij), e_ij ~ N(0, sigma^2),
    with ln w_i uniform on [-ln 9, ln 9]; params: sigma (default 0.5).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    ln9 = math.log(9.0)
    for _ in range(count):
        if spec.kind == "saaty_uniform":
            vals = SAATY_SCALE[rng.integers(0, len(SAATY_SCALE), size=len(pairs))]
        elif spec.kind == "log_uniform":
            vals = np.exp(rng.uniform(-ln9, ln9, size=len(pairs)))
        else:
            sigma = float(spec.params.get("sigma", 0.5))
            w = np.exp(rng.uniform(-ln9, ln9, size=n))
            noise = rng.normal(0.0, sigma, size=len(pairs)) if sigma > 0 else np.zeros(len(pairs))
            vals = np.array([w[i - 1] / w[j - 1] for i, j in pairs]) * np.exp(noise)
        yield make_pcm(list(zip(pairs, vals)))


@dataclass(frozen=True)
class ScatterRow:
    matrix_id: int
    x: float
    y: float


@dataclass(frozen=True)
class ScatterSummary:
    index_x: str
    index_y: str
    count: int
    pearson: float
    spearman: float
    #: ids of the two matrices with the largest |rank_x - rank_y|
    discordant_ids: tuple[int, int]


def scatter_study(spec: GeneratorSpec, count: int, index_x: str,
                  index_y: str) -> tuple[list[ScatterRow], ScatterSummary]:
    """Evaluate two indices over an ensemble and summarize their agreement."""
    fx, fy = INDEX_FUNCTIONS[index_x], INDEX_FUNCTIONS[index_y]
    rows = []
    for mid, m in enumerate(generate(spec, count)):
        vx, vy = fx(m).value, fy(m).value
        if not (math.isfinite(vx) and math.isfinite(vy) and vx >= 0 and vy >= 0):
            raise ValueError(f"index produced a bad value on matrix {mid}: {vx}, {vy}")
        rows.append(ScatterRow(matrix_id=mid, x=vx, y=vy))
    xs = np.array([r.x for r in rows])
    ys = np.array([r.y for r in rows])
    rank_gap = np.abs(stats.rankdata(xs) - stats.rankdata(ys))
    order = np.argsort(-rank_gap, kind="stable")
    summary = ScatterSummary(
        index_x=index_x,
        index_y=index_y,
        count=count,
        pearson=float(stats.pearsonr(xs, ys).statistic),
        spearman=float(stats.spearmanr(xs, ys).statistic),
        discordant_ids=(int(order[0]), int(order[1])),
    )
    return rows, summary


@dataclass(frozen=True)
class ScanResult:
    xs: np.ndarray
    values: np.ndarray
    unimodal: bool
    argmin_x: float
    consistent_x: float
    min_value: float


def quasiconvexity_scan(base: Pcm, entry: tuple[int, int] = (1, 3),
                        index: str = "ci",
                        grid: ScanGrid | None = None) -> ScanResult:
    """Scan one entry of a 3x3 frame over a log grid and test unimodality.

    The verdict requires the curve to be unimodal with its minimum within
    one grid step of the consistent value of the scanned entry.
    """
    if base.n != 3:
        raise core.OrderTooSmall("scan frames are 3x3")
    if entry not in ((1, 2), (1, 3), (2, 3)):
        raise ValueError(f"entry must be an upper-triangle position of a 3x3, got {entry}")
    a12, a13, a23 = base.value(1, 2), base.value(1, 3), base.value(2, 3)
    consistent_x = {(1, 3): a12 * a23, (1, 2): a13 / a23, (2, 3): a13 / a12}[entry]
    grid = grid if grid is not None else ScanGrid(lo=0.1, hi=40.0)
    fn = INDEX_FUNCTIONS[index]
    xs = grid.xs(consistent_x)
    # make the known minimizer representable: snap the nearest grid point
    if xs[0] < consistent_x < xs[-1]:
        xs = xs.copy()
        xs[int(np.argmin(np.abs(np.log(xs / consistent_x))))] = consistent_x
    fixed = {(1, 2): a12, (1, 3): a13, (2, 3): a23}
    vals = []
    for x in xs:
        upper = dict(fixed)
        upper[entry] = float(x)
        vals.append(fn(make_pcm(list(upper.items()))).value)
    vals = np.array(vals)
    ok, k = indices.is_unimodal(vals)
    step = math.log(xs[1] / xs[0])
    near = abs(math.log(xs[k] / consistent_x)) <= step + 1e-12
    return ScanResult(
        xs=xs, values=vals, unimodal=bool(ok and near),
        argmin_x=float(xs[k]), consistent_x=float(consistent_x),
        min_value=float(vals[k]),
    )


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    ci: float
    cr: float | None
    k: float


@dataclass(frozen=True)
class AsymptoticResult:
    x: float
    rows: list[AsymptoticRow]
    ci_strictly_decreasing: bool
    k_constant: bool


def asymptotic_study(x: float, n_range, ri_table=None) -> AsymptoticResult:
    """Per-order index values on the single-outlier family a_ks(n, x).

    cr is reported only for orders covered by the random-index table.
    """
    ns = sorted(set(n_range))
    if not ns or ns[0] < 3 or ns[-1] > 200:
        raise ValueError("n_range must lie within [3, 200]")
    table = ri_table if ri_table is not None else indices.default_ri_table()
    rows = []
    for n in ns:
        m = core.a_ks(n, x)
        civ = indices.ci(m).value
        kv = indices.k_index(m).value
        crv = indices.cr(m, table).value if 3 <= n <= table.max_order else None
        rows.append(AsymptoticRow(n=n, ci=civ, cr=crv, k=kv))
    cis = [r.ci for r in rows]
    ks = [r.k for r in rows]
    return AsymptoticResult(
        x=x,
        rows=rows,
        ci_strictly_decreasing=all(b < a for a, b in zip(cis, cis[1:])),
        k_constant=all(abs(v - ks[0]) <= 1e-12 for v in ks),
    )


@dataclass(frozen=True)
class SuiteCheck:
    check: str
    expected: str
    observed: str
    passed: bool


def counterexample_suite() -> list[SuiteCheck]:
    """Evaluate every directional claim of the worked counterexamples.

    Covers: K(A1) vs K(A2) with their inconsistent-triad counts, the
    K(A3) > K(A4) family over a parameter grid, the (n-2)/C(n,3) triad
    ratio of the single-outlier family, and the order-5 single-entry
    perturbation experiment (one triad worsens, two improve, overall ci
    drops).
    """
    checks: list[SuiteCheck] = []

    def add(check, expected, observed, passed):
        checks.append(SuiteCheck(check=check, expected=expected,
                                 observed=observed, passed=bool(passed)))

    k1 = indices.k_index(core.a1()).value
    k2 = indices.k_index(core.a2()).value
    add("K(A1) > K(A2)", "K(A1) > K(A2)", f"K(A1)={k1:.12g}, K(A2)={k2:.12g}", k1 > k2)

    t1 = core.triads(core.a1())
    bad1 = sum(1 for t in t1 if t.phi > core.DEFAULT_CONSISTENCY_TOL)
    add("A1 inconsistent triads", "3 of 10", f"{bad1} of {len(t1)}", bad1 == 3 and len(t1) == 10)

    t2 = core.triads(core.a2())
    bad2 = sum(1 for t in t2 if t.phi > core.DEFAULT_CONSISTENCY_TOL)
    add("A2 inconsistent triads", "10 of 10", f"{bad2} of {len(t2)}", bad2 == 10 and len(t2) == 10)

    for n, alpha, eps in itertools.product((5, 8, 12), (2.0, 3.0), (0.25, 1.0)):
        k3 = indices.k_index(core.a3(n, alpha, eps)).value
        k4 = indices.k_index(core.a4(n, alpha)).value
        add(
            f"K(A3({n},{alpha:g},{eps:g})) > K(A4({n},{alpha:g}))",
            "K(A3) > K(A4)",
            f"K(A3)={k3:.12g}, K(A4)={k4:.12g}",
            k3 > k4,
        )

    for n in (5, 8, 12):
        ratio = core.inconsistent_triad_ratio(core.a3(n, 2.0, 0.5))
        target = 6.0 / ((n - 1) * n)
        add(
            f"A3 triad ratio, n={n}",
            f"6/((n-1)n) = {target:.12g}",
            f"{ratio:.12g}",
            abs(ratio - target) <= 1e-12,
        )

    # order-5 perturbation: raise a_15 from 7 to 7.5
    before = core.order5_example()
    after_upper = dict(before.upper_pairs())
    after_upper[(1, 5)] = 7.5
    after = make_pcm(list(after_upper.items()))
    for (i, j, k5), direction in (((1, 2, 5), "increases"), ((1, 3, 5), "decreases"),
                                  ((1, 4, 5), "decreases")):
        pb = core.phi(before.value(i, j), before.value(j, k5), before.value(i, k5))
        pa = core.phi(after.value(i, j), after.value(j, k5), after.value(i, k5))
        ok = pa > pb if direction == "increases" else pa < pb
        add(
            f"phi(a_{i}{j}, a_{j}{k5}, a_{i}{k5}) under a_15: 7 -> 7.5",
            direction,
            f"{pb:.12g} -> {pa:.12g}",
            ok,
        )
    ci_b = indices.ci(before).value
    ci_a = indices.ci(after).value
    add("ci under a_15: 7 -> 7.5", "decreases", f"{ci_b:.12g} -> {ci_a:.12g}", ci_a < ci_b)
    return checks


# --------------------------------------------------------------------------
# CSV rendering (12 significant digits, '#' metadata line, mandatory header)

def _fmt(v) -> str:
    if v is None:
        return ""
    return f"{v:.12g}"


def scatter_csv(rows: list[ScatterRow], summary: ScatterSummary,
                spec: GeneratorSpec) -> str:
    meta = (
        f"# pcmkit scatter kind={spec.kind} n={spec.n} seed={spec.seed} "
        f"count={summary.count} x={summary.index_x} y={summary.index_y} "
        f"im_normalization=divide_by_n "
        f"discordant={summary.discordant_ids[0]},{summary.discordant_ids[1]}"
    )
    lines = [meta, "matrix_id,index_x,index_y"]
    lines += [f"{r.matrix_id},{_fmt(r.x)},{_fmt(r.y)}" for r in rows]
    return "\n".join(lines) + "\n"


def scan_csv(result: ScanResult) -> str:
    meta = (
        f"# pcmkit scan points={len(result.xs)} consistent_x={_fmt(result.consistent_x)} "
        f"argmin_x={_fmt(result.argmin_x)} unimodal={str(result.unimodal).lower()}"
    )
    lines = [meta, "x,value"]
    lines += [f"{_fmt(x)},{_fmt(v)}" for x, v in zip(result.xs, result.values)]
    return "\n".join(lines) + "\n"


def asymptotic_csv(result: AsymptoticResult) -> str:
    meta = (
        f"# pcmkit asymptotic x={_fmt(result.x)} "
        f"ci_strictly_decreasing={str(result.ci_strictly_decreasing).lower()} "
        f"k_constant={str(result.k_constant).lower()}"
    )
    lines = [meta, "n,ci,cr,k"]
    lines += [f"{r.n},{_fmt(r.ci)},{_fmt(r.cr)},{_fmt(r.k)}" for r in result.rows]
    return "\n".join(lines) + "\n"


def suite_csv(checks: list[SuiteCheck]) -> str:
    def q(s: str) -> str:
        return '"' + s.replace('"', '""') + '"' if ("," in s or '"' in s) else s

    lines = ["# pcmkit suite", "check,expected,observed,pass"]
    lines += [
        f"{q(c.check)},{q(c.expected)},{q(c.observed)},{str(c.passed).lower()}"
        for c in checks
    ]
    return "\n".join(lines) + "\n"
