"""Inconsistency indices and numerical axiom checking.

Implemented indices (CLI names in parentheses):

* ``ci``  -- (lambda_max - n) / (n - 1), the eigenvalue-based index.
* ``cr``  -- ci / RI(n) with acceptance threshold 0.1; RI is the mean ci of
  random matrices of the same order, shipped as a simulated table.
* ``k``   -- max over triads of the local inconsistency phi, threshold 1/3.
* ``gci`` -- geometric consistency index
  (2 / ((n-1)(n-2))) * sum_{i<j} (ln a_ij - ln(w_i / w_j))^2 with w the
  geometric-mean priority vector.
* ``re``  -- relative error of the log matrix: with C = (ln a_ij) and
  r_i the row means of C, value = ||C - (r_i - r_j)||_F^2 / ||C||_F^2,
  which is the least-squares residual fraction and lies in [0, 1].
* ``im``  -- Frobenius distance from A to its best rank-one approximation
  (root of the sum of squared trailing singular values), divided by n so
  values are comparable across orders (configurable).

GCI, RE and IM are standard literature definitions; each has an
independent brute-force oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import priority
from .core import OrderTooSmall, Pcm, PcmError, make_pcm, phi, triads

#: values closer to zero than this are treated as rounding noise
NEGATIVE_CLAMP = 1e-12

CR_THRESHOLD = 0.1
K_THRESHOLD = 1.0 / 3.0


class OrderOutOfTable(PcmError):
    pass


class SvdFailure(PcmError):
    pass


@dataclass(frozen=True)
class IndexReport:
    index_name: str
    value: float
    n: int
    threshold: float | None = None
    verdict: str | None = None  # "acceptable" | "needs_revision"
    meta: dict = field(default_factory=dict)


def _report(name: str, value: float, n: int, threshold: float | None = None,
            **meta) -> IndexReport:
    if value < -NEGATIVE_CLAMP:
        raise ValueError(f"{name} produced a negative value {value}")
    value = max(value, 0.0)
    verdict = None
    if threshold is not None:
        verdict = "needs_revision" if value > threshold else "acceptable"
    return IndexReport(index_name=name, value=value, n=n,
                       threshold=threshold, verdict=verdict, meta=meta)


def ci(m: Pcm, tol: float = priority.DEFAULT_EIGEN_TOL) -> IndexReport:
    """Eigenvalue-based consistency index (no threshold of its own)."""
    res = priority.eigen_priority(m, tol=tol)
    value = (res.lambda_max - m.n) / (m.n - 1)
    return _report("ci", value, m.n, lambda_max=res.lambda_max,
                   iterations=res.iterations)


def _ci_batch(mats: np.ndarray) -> np.ndarray:
    n = mats.shape[1]
    return (priority.lambda_max_batch(mats) - n) / (n - 1)


# vectorized fast path used by check_axioms and the grid oracle
ci.batch_values = _ci_batch


@dataclass(frozen=True)
class RandomIndexTable:
    """Simulated mean ci of random matrices per order.

    File format: lines ``n  RI  sample_count  seed``; `#` starts a comment.
    Values are Monte-Carlo artifacts regenerable with
    ``scripts/generate_ri_table.py``.
    """

    rows: dict[int, tuple[float, int, int]]

    @classmethod
    def load(cls, path=None) -> "RandomIndexTable":
        if path is None:
            text = resources.files("pcmkit").joinpath("data/ri_table.txt").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        rows = {}
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            n_str, ri_str, count_str, seed_str = ln.split()
            rows[int(n_str)] = (float(ri_str), int(count_str), int(seed_str))
        return cls(rows=rows)

    @property
    def max_order(self) -> int:
        return max(self.rows)

    def ri(self, n: int) -> float:
        try:
            return self.rows[n][0]
        except KeyError:
            raise OrderOutOfTable(
                f"no random index for order {n}; table covers {sorted(self.rows)}"
            ) from None


_DEFAULT_RI_TABLE: RandomIndexTable | None = None


def default_ri_table() -> RandomIndexTable:
    global _DEFAULT_RI_TABLE
    if _DEFAULT_RI_TABLE is None:
        _DEFAULT_RI_TABLE = RandomIndexTable.load()
    return _DEFAULT_RI_TABLE


def cr(m: Pcm, ri_table: RandomIndexTable | None = None) -> IndexReport:
    """Consistency ratio ci / RI(n), acceptance threshold 0.1."""
    table = ri_table if ri_table is not None else default_ri_table()
    if m.n < 3 or m.n > table.max_order:
        raise OrderOutOfTable(
            f"cr needs 3 <= n <= {table.max_order}, got {m.n}"
        )
    base = ci(m)
    rin = table.ri(m.n)
    return _report("cr", base.value / rin, m.n, threshold=CR_THRESHOLD,
                   ci=base.value, ri=rin)


def k_index(m: Pcm) -> IndexReport:
    """Maximum local triad inconsistency phi, threshold 1/3. Value in [0, 1)."""
    value = max(t.phi for t in triads(m))
    return _report("k", value, m.n, threshold=K_THRESHOLD)


def gci(m: Pcm) -> IndexReport:
    """Geometric consistency index against the geometric-mean priority vector."""
    if m.n < 3:
        raise OrderTooSmall(f"gci needs order >= 3, got {m.n}")
    w = np.asarray(priority.geometric_mean_priority(m).weights)
    logw = np.log(w)
    e = np.log(m.entries) - (logw[:, None] - logw[None, :])
    iu = np.triu_indices(m.n, k=1)
    value = 2.0 / ((m.n - 1) * (m.n - 2)) * float(np.sum(e[iu] ** 2))
    return _report("gci", value, m.n)


def re_index(m: Pcm) -> IndexReport:
    """Relative error of the log matrix; 0 on consistent matrices, <= 1 always.

    The all-ones matrix makes the denominator vanish; it is consistent, so
    the value is 0 by convention, flagged as degenerate.
    """
    if m.n < 3:
        raise OrderTooSmall(f"re needs order >= 3, got {m.n}")
    c = np.log(m.entries)
    total = float(np.sum(c ** 2))
    if total == 0.0:
        return _report("re", 0.0, m.n, degenerate=True)
    r = c.mean(axis=1)
    e = c - (r[:, None] - r[None, :])
    return _report("re", float(np.sum(e ** 2)) / total, m.n)


def im_index(m: Pcm, normalize: bool = True) -> IndexReport:
    """Frobenius distance to the closest rank-one matrix, via the SVD.

    ``normalize=True`` (default) divides by n so values are comparable
    across orders; pass False for the raw distance.
    """
    if m.n < 3:
        raise OrderTooSmall(f"im needs order >= 3, got {m.n}")
    try:
        sv = np.linalg.svd(m.entries, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    value = float(np.sqrt(np.sum(sv[1:] ** 2)))
    if normalize:
        value /= m.n
    return _report("im", value, m.n, normalized=normalize)


#: CLI/ensemble registry: name -> function Pcm -> IndexReport
INDEX_FUNCTIONS = {
    "ci": ci,
    "cr": cr,
    "k": k_index,
    "gci": gci,
    "re": re_index,
    "im": im_index,
}


# --------------------------------------------------------------------------
# Numerical checks of the three-axiom system for inconsistency indices,
# stated on 3x3 matrices:
#   1. index = 0 on consistent matrices;
#   2. values lie in [0, 1) (strict) or [0, inf) (relaxed);
#   3. along any single entry the index is quasi-convex with its global
#      minimum at the consistent value a_ik = a_ij * a_jk.

@dataclass(frozen=True)
class ScanGrid:
    """Log-spaced evaluation grid for one-entry scans.

    Either explicit bounds (lo, hi) or a multiplicative ``span`` around the
    scan center.
    """

    points: int = 401
    lo: float | None = None
    hi: float | None = None
    span: float = 64.0

    def xs(self, center: float = 1.0) -> np.ndarray:
        lo = self.lo if self.lo is not None else center / self.span
        hi = self.hi if self.hi is not None else center * self.span
        return np.geomspace(lo, hi, self.points)


@dataclass(frozen=True)
class AxiomCheckReport:
    axiom1_holds: bool
    axiom2_holds: bool
    axiom2_bound: str  # "strict" | "relaxed"
    axiom3_quasiconvex_along_entries: bool
    witnesses: tuple = ()

    @property
    def all_hold(self) -> bool:
        return (self.axiom1_holds and self.axiom2_holds
                and self.axiom3_quasiconvex_along_entries)


def is_unimodal(values: np.ndarray, slack: float = 1e-9) -> tuple[bool, int]:
    """Whether the sequence decreases to a global minimum then increases.

    Returns (verdict, argmin). ``slack`` absorbs solver noise in flat
    regions.
    """
    v = np.asarray(values, dtype=float)
    k = int(np.argmin(v))
    down_ok = bool(np.all(np.diff(v[: k + 1]) <= slack))
    up_ok = bool(np.all(np.diff(v[k:]) >= -slack))
    return down_ok and up_ok, k


def check_axioms(index, samples, bound: str = "strict",
                 grid: ScanGrid | None = None) -> AxiomCheckReport:
    """Check the three axioms numerically on a set of sampled 3x3 matrices.

    ``index`` maps a Pcm to an IndexReport; ``samples`` is a sequence of
    3x3 Pcms. Axiom 1 is tested on the consistent matrix generated by each
    sample's geometric-mean vector; axiom 2 on the raw samples; axiom 3 by
    scanning a_13 over a log grid around the consistent value for each
    sample's (a_12, a_23). Failures are reported with witnesses, never
    raised.
    """
    if bound not in ("strict", "relaxed"):
        raise ValueError(f"bound must be 'strict' or 'relaxed', got {bound!r}")
    grid = grid if grid is not None else ScanGrid()
    witnesses: list[tuple[str, object]] = []
    ax1 = ax2 = ax3 = True
    for m in samples:
        if m.n != 3:
            raise OrderTooSmall("axiom checks are stated on 3x3 matrices")
        cons = priority.ratio_matrix(priority.geometric_mean_priority(m))
        v0 = index(cons).value
        if v0 > 1e-9:
            ax1 = False
            witnesses.append(("axiom1", (cons.entries.tolist(), v0)))
        v = index(m).value
        if v < 0 or (bound == "strict" and v >= 1.0):
            ax2 = False
            witnesses.append(("axiom2", (m.entries.tolist(), v)))
        a12, a23 = m.value(1, 2), m.value(2, 3)
        center = a12 * a23
        xs = grid.xs(center)
        batch = getattr(index, "batch_values", None)
        if batch is not None:
            mats = np.empty((len(xs), 3, 3))
            mats[:] = [[1.0, a12, 1.0], [1.0 / a12, 1.0, a23], [1.0, 1.0 / a23, 1.0]]
            mats[:, 0, 2] = xs
            mats[:, 2, 0] = 1.0 / xs
            vals = np.maximum(np.asarray(batch(mats)), 0.0)
        else:
            vals = np.array([index(fig_frame(a12, a23, x)).value for x in xs])
        ok, k = is_unimodal(vals)
        step = math.log(xs[1] / xs[0])
        at_center = abs(math.log(xs[k] / center)) <= step + 1e-12
        if not (ok and at_center):
            ax3 = False
            witnesses.append(("axiom3", (a12, a23, float(xs[k]))))
    return AxiomCheckReport(
        axiom1_holds=ax1,
        axiom2_holds=ax2,
        axiom2_bound=bound,
        axiom3_quasiconvex_along_entries=ax3,
        witnesses=tuple(witnesses),
    )


def fig_frame(a12: float, a23: float, a13: float) -> Pcm:
    """3x3 matrix with fixed (a_12, a_23) and free entry a_13."""
    return make_pcm([((1, 2), a12), ((2, 3), a23), ((1, 3), a13)])
