"""Priority vector extraction: eigenvector and geometric-mean methods.

The Perron eigenpair is computed by plain power iteration started from the
uniform vector; matrices here are small and strictly positive, so the
dominant eigenvalue is simple and convergence is geometric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NonPositiveEntry, Pcm, PcmError, make_pcm

DEFAULT_EIGEN_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000


class NoConvergence(PcmError):
    """Power iteration hit max_iter with residual above tolerance."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class PriorityVector:
    weights: tuple[float, ...]
    normalization: str  # "sum_to_one" | "geometric_raw"

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.weights):
            raise NonPositiveEntry("all weights must be positive")


@dataclass(frozen=True)
class EigenResult:
    lambda_max: float
    vector: PriorityVector
    iterations: int
    residual: float


def eigen_priority(m: Pcm, tol: float = DEFAULT_EIGEN_TOL,
                   max_iter: int = DEFAULT_MAX_ITER) -> EigenResult:
    """Perron eigenpair of m via power iteration.

    lambda_max is the mean Rayleigh ratio mean_i (A w)_i / w_i; the stopping
    rule is the componentwise residual max_i |(A w)_i - lambda w_i| / w_i.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    a = m.entries
    w = np.full(m.n, 1.0 / m.n)
    lam = float(m.n)
    res = np.inf
    for it in range(1, max_iter + 1):
        y = a @ w
        ratios = y / w
        lam = float(ratios.mean())
        res = float(np.max(np.abs(y - lam * w) / w))
        w = y / y.sum()
        if res <= tol:
            return EigenResult(
                lambda_max=lam,
                vector=PriorityVector(weights=tuple(w), normalization="sum_to_one"),
                iterations=it,
                residual=res,
            )
    raise NoConvergence(residual=res, iterations=max_iter)


def lambda_max(m: Pcm, tol: float = DEFAULT_EIGEN_TOL,
               max_iter: int = DEFAULT_MAX_ITER) -> float:
    return eigen_priority(m, tol=tol, max_iter=max_iter).lambda_max


def lambda_max_batch(mats: np.ndarray, tol: float = DEFAULT_EIGEN_TOL,
                     max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """Perron eigenvalues of a stack of positive matrices, shape (b, n, n).

    Same iteration and stopping rule as :func:`eigen_priority`, run for all
    matrices simultaneously; used by the grid oracle and the random-index
    generator where hundreds of thousands of small solves are needed.
    """
    a = np.asarray(mats, dtype=float)
    b, n = a.shape[0], a.shape[1]
    w = np.full((b, n), 1.0 / n)
    lam = np.full(b, float(n))
    active = np.ones(b, dtype=bool)
    for _ in range(max_iter):
        y = np.einsum("bij,bj->bi", a[active], w[active])
        ratios = y / w[active]
        lam_act = ratios.mean(axis=1)
        res = np.max(np.abs(y - lam_act[:, None] * w[active]) / w[active], axis=1)
        lam[active] = lam_act
        w[active] = y / y.sum(axis=1, keepdims=True)
        still = res > tol
        if not still.any():
            return lam
        idx = np.flatnonzero(active)
        active[idx[~still]] = False
    raise NoConvergence(residual=float("nan"), iterations=max_iter)


def geometric_mean_priority(m: Pcm) -> PriorityVector:
    """Row geometric means of m, normalized to sum to one."""
    logs = np.log(m.entries)
    w = np.exp(logs.mean(axis=1))
    w /= w.sum()
    return PriorityVector(weights=tuple(w), normalization="sum_to_one")


def ratio_matrix(w: PriorityVector) -> Pcm:
    """The consistent matrix (w_i / w_j) generated by a priority vector."""
    v = np.asarray(w.weights, dtype=float)
    n = v.size
    return make_pcm([((i + 1, j + 1), float(v[i] / v[j]))
                     for i in range(n) for j in range(i + 1, n)])
