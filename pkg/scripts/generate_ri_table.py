#!/usr/bin/env python
"""Regenerate the shipped random-index table.

For each order n, RI(n) is the mean ci over ``samples`` random matrices
whose upper-triangle entries are drawn i.i.d. uniformly from the 17-value
judgment scale. Eigenvalues come from a batched power iteration, so the
whole table builds in seconds.

Usage: python scripts/generate_ri_table.py [--out src/pcmkit/data/ri_table.txt]
"""

import argparse
import itertools
from pathlib import Path

import numpy as np

from pcmkit.ensemble import SAATY_SCALE
from pcmkit.priority import lambda_max_batch

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "src" / "pcmkit" / "data" / "ri_table.txt"


def ri_for_order(n: int, samples: int, seed: int, batch: int = 20_000) -> float:
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    total = 0.0
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        mats = np.ones((b, n, n))
        vals = SAATY_SCALE[rng.integers(0, len(SAATY_SCALE), size=(b, len(pairs)))]
        for d, (i, j) in enumerate(pairs):
            mats[:, i, j] = vals[:, d]
            mats[:, j, i] = 1.0 / vals[:, d]
        lams = lambda_max_batch(mats, tol=1e-10)
        total += float(np.sum((lams - n) / (n - 1)))
        done += b
    return total / samples


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--orders", default="3-15", help="inclusive order range, e.g. 3-15")
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=20160101)
    args = ap.parse_args()

    lo, hi = (int(t) for t in args.orders.split("-"))
    lines = [
        "# Random index table: mean ci of random judgment-scale matrices.",
        "# Simulated artifact; regenerate with scripts/generate_ri_table.py.",
        "# n  RI  sample_count  seed",
    ]
    for n in range(lo, hi + 1):
        seed = args.seed + n
        ri = ri_for_order(n, args.samples, seed)
        lines.append(f"{n}  {ri:.6f}  {args.samples}  {seed}")
        print(lines[-1])
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
