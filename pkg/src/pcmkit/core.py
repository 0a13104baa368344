"""Data model for pairwise comparison matrices.

A pairwise comparison matrix (PCM) is a positive square matrix A with
a_ii = 1 and a_ij * a_ji = 1. It is *consistent* when a_ik = a_ij * a_jk
for every triple i < j < k. Local deviation from consistency is measured
per triad by

    phi(a_ij, a_jk, a_ik) = min(|1 - a_ik/(a_ij a_jk)|, |1 - (a_ij a_jk)/a_ik|)

which is 0 exactly on consistent triads and always < 1.

All positions in the public API are 1-based, matching the usual notation
in the decision-analysis literature; the stored numpy array is 0-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

#: reciprocity slack allowed when validating an externally supplied array
EPS_RECIPROCITY = 1e-12

#: default relative tolerance on phi for consistency verdicts
DEFAULT_CONSISTENCY_TOL = 1e-9


class PcmError(Exception):
    """Base class for all domain errors raised by this package."""


class NonPositiveEntry(PcmError):
    pass


class IncompleteUpperTriangle(PcmError):
    pass


class OrderTooSmall(PcmError):
    pass


class UnknownName(PcmError):
    pass


class ParseError(PcmError):
    pass


class Disconnected(PcmError):
    pass


def phi(a_ij: float, a_jk: float, a_ik: float) -> float:
    """Local inconsistency of the triad (a_ij, a_jk, a_ik)."""
    p = a_ij * a_jk
    return min(abs(1.0 - a_ik / p), abs(1.0 - p / a_ik))


@dataclass(frozen=True)
class Triad:
    """One triple of entries (a_ij, a_jk, a_ik), i < j < k, 1-based."""

    indices: tuple[int, int, int]
    values: tuple[float, float, float]
    phi: float


@dataclass(frozen=True)
class Pcm:
    """Immutable positive reciprocal matrix.

    Construct via :func:`make_pcm` or :func:`from_array`; the stored lower
    triangle is always derived as the exact reciprocal of the upper one.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    def value(self, i: int, j: int) -> float:
        """Entry a_ij, 1-based."""
        return float(self.entries[i - 1, j - 1])

    def upper_pairs(self) -> list[tuple[tuple[int, int], float]]:
        """All ((i, j), a_ij) with i < j, lexicographic, 1-based."""
        return [
            ((i, j), self.value(i, j))
            for i, j in itertools.combinations(range(1, self.n + 1), 2)
        ]


@dataclass(frozen=True)
class IncompletePcm:
    """Comparison matrix with some upper-triangle entries unknown.

    ``known`` maps 1-based (i, j), i < j, to positive values; ``missing``
    holds the remaining upper-triangle positions. The graph of known
    comparisons must be connected, otherwise any completion would be
    underdetermined.
    """

    n: int
    known: dict[tuple[int, int], float]
    missing: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        all_pairs = set(itertools.combinations(range(1, self.n + 1), 2))
        if set(self.known) | set(self.missing) != all_pairs or set(self.known) & set(self.missing):
            raise IncompleteUpperTriangle(
                "known and missing must partition the strict upper triangle"
            )
        for pos, v in self.known.items():
            if not (math.isfinite(v) and v > 0):
                raise NonPositiveEntry(f"entry {pos} must be a positive real, got {v!r}")
        if not _connected(self.n, self.known.keys()):
            raise Disconnected("graph of known comparisons is not connected")

    def fill(self, values: dict[tuple[int, int], float]) -> Pcm:
        """Complete the matrix with the given values for the missing entries."""
        if set(values) != set(self.missing):
            raise IncompleteUpperTriangle("fill values must cover exactly the missing positions")
        upper = list(self.known.items()) + list(values.items())
        return make_pcm(upper)


def _connected(n: int, edges) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def make_pcm(upper) -> Pcm:
    """Build a Pcm from its strict upper triangle.

    ``upper`` is an iterable of ((i, j), value) with 1-based i < j; every
    upper-triangle position of some order n >= 2 must appear exactly once.
    The lower triangle is derived as 1/value, so reciprocity holds exactly.
    """
    pairs = list(upper)
    if not pairs:
        raise IncompleteUpperTriangle("empty upper triangle")
    seen = set()
    max_idx = 0
    for (i, j), v in pairs:
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j):
            raise IncompleteUpperTriangle(f"bad upper-triangle position ({i}, {j})")
        if (i, j) in seen:
            raise IncompleteUpperTriangle(f"duplicate position ({i}, {j})")
        seen.add((i, j))
        max_idx = max(max_idx, j)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise NonPositiveEntry(f"entry ({i}, {j}) must be a positive real, got {v!r}")
    n = max_idx
    expected = set(itertools.combinations(range(1, n + 1), 2))
    if seen != expected:
        raise IncompleteUpperTriangle(
            f"upper triangle of an order-{n} matrix needs {len(expected)} entries, "
            f"got {len(seen)} (missing {sorted(expected - seen)[:3]}...)"
            if expected - seen
            else "positions exceed the inferred order"
        )
    a = np.ones((n, n))
    for (i, j), v in pairs:
        a[i - 1, j - 1] = float(v)
        a[j - 1, i - 1] = 1.0 / float(v)
    return Pcm(n=n, entries=a)


def from_array(arr, rec_tol: float = EPS_RECIPROCITY) -> Pcm:
    """Validate a full square array and renormalize it into a Pcm.

    The diagonal must be 1 and each product a_ij * a_ji within ``rec_tol``
    of 1; the stored matrix keeps the upper triangle and derives the lower
    exactly.
    """
    a = np.asarray(arr, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParseError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < 2:
        raise OrderTooSmall("order must be at least 2")
    if not np.all(np.isfinite(a)) or np.any(a <= 0):
        raise NonPositiveEntry("all entries must be positive finite reals")
    for i in range(n):
        if abs(a[i, i] - 1.0) > rec_tol:
            raise ParseError(f"diagonal entry ({i + 1}, {i + 1}) must be 1, got {a[i, i]}")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(a[i, j] * a[j, i] - 1.0) > rec_tol:
                raise ParseError(
                    f"entries ({i + 1}, {j + 1}) and ({j + 1}, {i + 1}) are not reciprocal: "
                    f"{a[i, j]} * {a[j, i]} != 1"
                )
    return make_pcm([((i + 1, j + 1), float(a[i, j])) for i in range(n) for j in range(i + 1, n)])


def triads(m: Pcm) -> list[Triad]:
    """All C(n, 3) triads in lexicographic (i, j, k) order.

    Each upper-triangle position takes part in exactly n - 2 of them.
    """
    if m.n < 3:
        raise OrderTooSmall(f"triads need order >= 3, got {m.n}")
    out = []
    for i, j, k in itertools.combinations(range(1, m.n + 1), 3):
        vals = (m.value(i, j), m.value(j, k), m.value(i, k))
        out.append(Triad(indices=(i, j, k), values=vals, phi=phi(*vals)))
    return out


def is_consistent(m: Pcm, tol: float = DEFAULT_CONSISTENCY_TOL) -> bool:
    """True iff every triad has phi <= tol (vacuously true for n = 2)."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if m.n < 3:
        return True
    return max(t.phi for t in triads(m)) <= tol


def inconsistent_triad_ratio(m: Pcm, tol: float = DEFAULT_CONSISTENCY_TOL) -> float:
    """Fraction of triads with phi > tol, in [0, 1]."""
    ts = triads(m)
    return sum(1 for t in ts if t.phi > tol) / len(ts)


# --------------------------------------------------------------------------
# Catalog of the worked-example matrices used throughout the studies.

def order5_example() -> Pcm:
    """Order-5 matrix of the single-entry perturbation experiment."""
    return make_pcm([
        ((1, 2), 2.0), ((1, 3), 2.0), ((1, 4), 4.0), ((1, 5), 7.0),
        ((2, 3), 4.0), ((2, 4), 1.0), ((2, 5), 3.0),
        ((3, 4), 1.0), ((3, 5), 4.0),
        ((4, 5), 2.0),
    ])


def eq2_incomplete() -> IncompletePcm:
    """4x4 incomplete matrix with a_13 and a_14 unknown."""
    return IncompletePcm(
        n=4,
        known={(1, 2): 2.0, (2, 3): 1.0 / 3.0, (2, 4): 1.0, (3, 4): 2.0},
        missing=frozenset({(1, 3), (1, 4)}),
    )


def fig2_3x3(x: float) -> Pcm:
    """3x3 quasi-convexity frame: a_12 = 3, a_23 = 1/2, free entry a_13 = x.

    Consistent exactly at x = a_12 * a_23 = 1.5.
    """
    if not (math.isfinite(x) and x > 0):
        raise NonPositiveEntry(f"x must be positive, got {x!r}")
    return make_pcm([((1, 2), 3.0), ((2, 3), 0.5), ((1, 3), float(x))])


def a_ks(n: int, x: float) -> Pcm:
    """Order-n all-ones matrix except for the single corner entry a_1n = x."""
    if n < 3:
        raise OrderTooSmall(f"a_ks needs order >= 3, got {n}")
    if not (math.isfinite(x) and x > 0):
        raise NonPositiveEntry(f"x must be positive, got {x!r}")
    upper = [((i, j), float(x) if (i, j) == (1, n) else 1.0)
             for i, j in itertools.combinations(range(1, n + 1), 2)]
    return make_pcm(upper)


def a1() -> Pcm:
    """Order-5 single-outlier matrix with a_15 = 2.001; 3 of 10 triads inconsistent."""
    return a_ks(5, 2.001)


def a2() -> Pcm:
    """Order-5 matrix in which every triad is inconsistent."""
    return make_pcm([
        ((1, 2), 1.0), ((1, 3), 2.0), ((1, 4), 1.0), ((1, 5), 2.0),
        ((2, 3), 1.0), ((2, 4), 2.0), ((2, 5), 1.0),
        ((3, 4), 1.0), ((3, 5), 2.0),
        ((4, 5), 1.0),
    ])


def a3(n: int, alpha: float, eps: float) -> Pcm:
    """Single-outlier family: all ones except a_1n = alpha + eps."""
    return a_ks(n, alpha + eps)


def a4(n: int, alpha: float) -> Pcm:
    """Alternating family: a_ij = alpha whenever j - i is even, else 1.

    Every triad is then inconsistent for alpha != 1: for a triple i < j < k
    the gaps j-i, k-j, k-i cannot combine to a consistent product (the case
    of two even gaps gives alpha^2 vs alpha, all others give alpha vs 1).
    """
    if n < 3:
        raise OrderTooSmall(f"a4 needs order >= 3, got {n}")
    if not (math.isfinite(alpha) and alpha > 0):
        raise NonPositiveEntry(f"alpha must be positive, got {alpha!r}")
    upper = [((i, j), float(alpha) if (j - i) % 2 == 0 else 1.0)
             for i, j in itertools.combinations(range(1, n + 1), 2)]
    return make_pcm(upper)


def builtin_matrix(name: str, **params):
    """Look up a catalog matrix by name.

    Names: order5_example_sec31, eq2_incomplete, fig2_3x3 (x), A_KS (n, x),
    A1, A2, A3 (n, alpha, eps), A4 (n, alpha).
    """
    catalog = {
        "order5_example_sec31": order5_example,
        "eq2_incomplete": eq2_incomplete,
        "fig2_3x3": fig2_3x3,
        "A_KS": a_ks,
        "A1": a1,
        "A2": a2,
        "A3": a3,
        "A4": a4,
    }
    try:
        fn = catalog[name]
    except KeyError:
        raise UnknownName(f"unknown builtin matrix {name!r}; choose from {sorted(catalog)}") from None
    try:
        return fn(**params)
    except TypeError as exc:
        raise UnknownName(f"bad parameters for builtin {name!r}: {exc}") from None


# --------------------------------------------------------------------------
# Matrix text format: first line n, then n whitespace-separated rows,
# missing entries written as `?`.

#: reciprocal slack accepted by the text parser before renormalizing
PARSE_RECIPROCAL_TOL = 1e-6


def parse_matrix_text(text: str):
    """Parse the matrix text format into a Pcm or IncompletePcm.

    Reciprocal positions must be both `?` or both numeric with product
    within 1e-6 of 1; the parsed matrix is renormalized so reciprocity
    holds exactly.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order n, got {lines[0]!r}") from None
    if n < 2:
        raise ParseError(f"order must be >= 2, got {n}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows after the order line, got {len(lines) - 1}")
    cells: list[list[float | None]] = []
    for r, ln in enumerate(lines[1:], start=1):
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"row {r} has {len(toks)} entries, expected {n}")
        row: list[float | None] = []
        for c, tok in enumerate(toks, start=1):
            if tok == "?":
                if r == c:
                    raise ParseError(f"diagonal entry ({r}, {c}) cannot be missing")
                row.append(None)
            else:
                try:
                    v = float(tok)
                except ValueError:
                    raise ParseError(f"entry ({r}, {c}) is not a number: {tok!r}") from None
                if not (math.isfinite(v) and v > 0):
                    raise ParseError(f"entry ({r}, {c}) must be positive, got {tok}")
                row.append(v)
        cells.append(row)
    for i in range(n):
        d = cells[i][i]
        if d is None or abs(d - 1.0) > PARSE_RECIPROCAL_TOL:
            raise ParseError(f"diagonal entry ({i + 1}, {i + 1}) must be 1, got {cells[i][i]}")
    known: dict[tuple[int, int], float] = {}
    missing: set[tuple[int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            up, lo = cells[i][j], cells[j][i]
            if (up is None) != (lo is None):
                raise ParseError(
                    f"entries ({i + 1}, {j + 1}) and ({j + 1}, {i + 1}) must be both `?` or both numeric"
                )
            if up is None:
                missing.add((i + 1, j + 1))
            else:
                if abs(up * lo - 1.0) > PARSE_RECIPROCAL_TOL:
                    raise ParseError(
                        f"entries ({i + 1}, {j + 1}) and ({j + 1}, {i + 1}) are not reciprocal: "
                        f"{up} * {lo} = {up * lo}"
                    )
                known[(i + 1, j + 1)] = up
    if not missing:
        return make_pcm(list(known.items()))
    return IncompletePcm(n=n, known=known, missing=frozenset(missing))


def format_matrix_text(m, full_precision: bool = False) -> str:
    """Render a Pcm or IncompletePcm in the matrix text format."""
    fmt = (lambda v: repr(float(v))) if full_precision else (lambda v: f"{v:.12g}")
    if isinstance(m, Pcm):
        rows = [" ".join(fmt(m.entries[i, j]) for j in range(m.n)) for i in range(m.n)]
    elif isinstance(m, IncompletePcm):
        rows = []
        for i in range(1, m.n + 1):
            row = []
            for j in range(1, m.n + 1):
                if i == j:
                    row.append(fmt(1.0))
                elif (min(i, j), max(i, j)) in m.missing:
                    row.append("?")
                elif i < j:
                    row.append(fmt(m.known[(i, j)]))
                else:
                    row.append(fmt(1.0 / m.known[(j, i)]))
            rows.append(" ".join(row))
    else:
        raise TypeError(f"expected Pcm or IncompletePcm, got {type(m).__name__}")
    return "\n".join([str(m.n)] + rows) + "\n"
