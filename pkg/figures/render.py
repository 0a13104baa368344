#!/usr/bin/env python3
"""Render figures from study CSVs produced by the pcmkit CLI.

Two kinds:
  scatter -- index-vs-index point cloud, optional highlighted matrix ids
  scan    -- value-vs-x curve on a log x axis with the minimum annotated

Pure presentation: every number shown is read from the CSV, nothing is
recomputed. Usage:

  python figures/render.py --kind scatter --in scatter.csv --out fig1.png \
      --highlight 17,1203
  python figures/render.py --kind scan --in scan.csv --out fig2.png
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SCATTER_HEADER = ["matrix_id", "index_x", "index_y"]
SCAN_HEADER = ["x", "value"]


class FigureError(Exception):
    pass


@dataclass(frozen=True)
class FigureJob:
    input_csv: Path
    kind: str  # "scatter" | "scan"
    output_image: Path
    highlight_ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class RenderInfo:
    """What was drawn; returned for scripting and testing."""

    n_points: int
    n_highlighted: int = 0
    #: raw x string of the minimum-value row (scan only)
    annotation_x: str | None = None


def _read_rows(path: Path, expected_header: list[str]) -> list[list[str]]:
    try:
        lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    except OSError as exc:
        raise FigureError(f"cannot read {path}: {exc}") from exc
    rows = list(csv.reader(lines))
    if not rows:
        raise FigureError(f"{path}: empty file")
    if rows[0] != expected_header:
        raise FigureError(
            f"{path}: expected columns {','.join(expected_header)}, got {','.join(rows[0])}"
        )
    if not rows[1:]:
        raise FigureError(f"{path}: no data rows")
    return rows[1:]


def render(job: FigureJob) -> RenderInfo:
    if job.kind == "scatter":
        return _render_scatter(job)
    if job.kind == "scan":
        return _render_scan(job)
    raise FigureError(f"unknown figure kind {job.kind!r}")


def _render_scatter(job: FigureJob) -> RenderInfo:
    rows = _read_rows(job.input_csv, SCATTER_HEADER)
    ids = [int(r[0]) for r in rows]
    xs = [float(r[1]) for r in rows]
    ys = [float(r[2]) for r in rows]
    wanted = set(job.highlight_ids)
    missing = wanted - set(ids)
    if missing:
        raise FigureError(f"highlight ids not in CSV: {sorted(missing)}")

    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(xs, ys, s=8, c="#33577b", alpha=0.5, linewidths=0)
    n_high = 0
    for mid, x, y in zip(ids, xs, ys):
        if mid in wanted:
            ax.scatter([x], [y], s=120, c="#d8973c", edgecolors="black",
                       zorder=3, label=f"matrix {mid}")
            n_high += 1
    ax.set_xlabel("index on x axis")
    ax.set_ylabel("index on y axis")
    ax.set_title(f"{len(rows)} matrices")
    if n_high:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(job.output_image, dpi=150)
    plt.close(fig)
    return RenderInfo(n_points=len(rows), n_highlighted=n_high)


def _render_scan(job: FigureJob) -> RenderInfo:
    rows = _read_rows(job.input_csv, SCAN_HEADER)
    xs = [float(r[0]) for r in rows]
    ys = [float(r[1]) for r in rows]
    k = min(range(len(ys)), key=ys.__getitem__)
    x_str = rows[k][0]  # annotate with the CSV's own text, not a reformat

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, c="#33577b")
    ax.set_xscale("log")
    ax.scatter([xs[k]], [ys[k]], c="#d8973c", edgecolors="black", zorder=3)
    ax.annotate(
        f"min at x = {x_str}",
        xy=(xs[k], ys[k]),
        xytext=(0.05, 0.9),
        textcoords="axes fraction",
        arrowprops={"arrowstyle": "->", "lw": 0.8},
        fontsize=9,
    )
    ax.set_xlabel("x")
    ax.set_ylabel("index value")
    fig.tight_layout()
    fig.savefig(job.output_image, dpi=150)
    plt.close(fig)
    return RenderInfo(n_points=len(rows), annotation_x=x_str)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", choices=("scatter", "scan"), required=True)
    ap.add_argument("--in", dest="input_csv", required=True)
    ap.add_argument("--out", dest="output_image", required=True)
    ap.add_argument("--highlight", default="",
                    help="comma-separated matrix ids to emphasize (scatter only)")
    args = ap.parse_args(argv)
    try:
        highlight = tuple(int(t) for t in args.highlight.split(",") if t)
    except ValueError:
        print(f"error: bad --highlight value {args.highlight!r}", file=sys.stderr)
        return 1
    job = FigureJob(
        input_csv=Path(args.input_csv),
        kind=args.kind,
        output_image=Path(args.output_image),
        highlight_ids=highlight,
    )
    try:
        info = render(job)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {job.output_image} ({info.n_points} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
