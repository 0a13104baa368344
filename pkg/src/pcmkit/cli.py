"""Command-line interface.

Subcommands: analyze, priority, complete, study, gen. Exit codes:
0 ok, 1 input error, 2 inconsistency verdict, 3 numeric non-convergence,
4 structural (disconnected). Runs are reproducible by default: the seed is
``--seed``, else the PCMKIT_SEED environment variable, else 12345.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import completion, core, ensemble, indices, priority

DEFAULT_SEED = 12345
SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2
EXIT_NO_CONVERGENCE = 3
EXIT_STRUCTURAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _fmt(v: float, full: bool) -> str:
    return repr(float(v)) if full else f"{v:.12g}"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PCMKIT_SEED")
    return int(env) if env else DEFAULT_SEED


def _read_matrix(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        return core.parse_matrix_text(text)
    except core.Disconnected as exc:
        raise CliError(str(exc), EXIT_STRUCTURAL) from exc
    except core.PcmError as exc:
        raise CliError(str(exc)) from exc


def _write_out(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    m = _read_matrix(args.matrix)
    if not isinstance(m, core.Pcm):
        raise CliError(f"{args.matrix} has missing entries; use `complete`")
    names = args.indices or list(indices.INDEX_FUNCTIONS)
    reports = []
    for name in names:
        if name not in indices.INDEX_FUNCTIONS:
            raise CliError(f"unknown index {name!r}; choose from {sorted(indices.INDEX_FUNCTIONS)}")
        try:
            reports.append(indices.INDEX_FUNCTIONS[name](m))
        except priority.NoConvergence as exc:
            raise CliError(str(exc), EXIT_NO_CONVERGENCE) from exc
        except core.PcmError as exc:
            raise CliError(str(exc)) from exc
    if args.format == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "n": m.n,
            "reports": [
                {
                    "index": r.index_name,
                    "value": r.value,
                    "threshold": r.threshold,
                    "verdict": r.verdict,
                }
                for r in reports
            ],
        }
        _write_out(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = []
        for r in reports:
            line = f"{r.index_name:<4} {_fmt(r.value, args.full_precision)}"
            if r.threshold is not None:
                line += f"  (threshold {_fmt(r.threshold, args.full_precision)}: {r.verdict})"
            lines.append(line)
        _write_out(args, "\n".join(lines) + "\n")
    bad = any(r.verdict == "needs_revision" for r in reports)
    return EXIT_VERDICT if bad else EXIT_OK


def cmd_priority(args) -> int:
    m = _read_matrix(args.matrix)
    if not isinstance(m, core.Pcm):
        raise CliError(f"{args.matrix} has missing entries; use `complete`")
    lam = None
    if args.method == "eigen":
        try:
            res = priority.eigen_priority(m)
        except priority.NoConvergence as exc:
            raise CliError(str(exc), EXIT_NO_CONVERGENCE) from exc
        weights, lam = res.vector.weights, res.lambda_max
    else:
        weights = priority.geometric_mean_priority(m).weights
    if args.format == "json":
        payload = {"schema": SCHEMA_VERSION, "method": args.method,
                   "weights": list(weights)}
        if lam is not None:
            payload["lambda_max"] = lam
        _write_out(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"w_{i + 1} = {_fmt(w, args.full_precision)}" for i, w in enumerate(weights)]
        if lam is not None:
            lines.append(f"lambda_max = {_fmt(lam, args.full_precision)}")
        _write_out(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_complete(args) -> int:
    m = _read_matrix(args.matrix)
    if isinstance(m, core.Pcm):
        raise CliError("matrix is fully specified; nothing to complete")
    opts = completion.CompletionOptions(seed=_seed(args))
    try:
        res = completion.complete(m, index=args.index, opts=opts)
    except core.Disconnected as exc:
        raise CliError(str(exc), EXIT_STRUCTURAL) from exc
    matrix_text = core.format_matrix_text(res.filled, full_precision=args.full_precision)
    if args.out:
        Path(args.out).write_text(matrix_text)
    report = {
        "schema": SCHEMA_VERSION,
        "index": args.index,
        "objective": res.objective,
        "method": res.method,
        "evaluations": res.evaluations,
        "converged": res.converged,
        "values": {f"{i},{j}": v for (i, j), v in sorted(res.values.items())},
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    if not args.out:
        sys.stdout.write(matrix_text)
    return EXIT_OK


def cmd_study(args) -> int:
    if args.study == "scatter":
        spec = ensemble.GeneratorSpec(kind=args.kind, n=args.n, seed=_seed(args))
        rows, summary = ensemble.scatter_study(spec, args.count, args.x, args.y)
        _write_out(args, ensemble.scatter_csv(rows, summary, spec))
        print(
            f"scatter {summary.index_x} vs {summary.index_y}: count={summary.count} "
            f"pearson={summary.pearson:.6g} spearman={summary.spearman:.6g} "
            f"discordant={summary.discordant_ids[0]},{summary.discordant_ids[1]}",
            file=sys.stderr,
        )
        return EXIT_OK
    if args.study == "scan":
        base = core.fig2_3x3(args.start)
        grid = indices.ScanGrid(points=args.points, lo=args.x_lo, hi=args.x_hi)
        res = ensemble.quasiconvexity_scan(base, index=args.index, grid=grid)
        _write_out(args, ensemble.scan_csv(res))
        print(
            f"scan {args.index}: unimodal={res.unimodal} argmin_x={res.argmin_x:.12g} "
            f"min={res.min_value:.12g}",
            file=sys.stderr,
        )
        return EXIT_OK
    if args.study == "asymptotic":
        lo, hi = _parse_range(args.n_range)
        res = ensemble.asymptotic_study(args.x, range(lo, hi + 1))
        _write_out(args, ensemble.asymptotic_csv(res))
        print(
            f"asymptotic x={args.x:g}: ci_strictly_decreasing={res.ci_strictly_decreasing} "
            f"k_constant={res.k_constant}",
            file=sys.stderr,
        )
        return EXIT_OK
    if args.study == "suite":
        checks = ensemble.counterexample_suite()
        _write_out(args, ensemble.suite_csv(checks))
        failed = [c for c in checks if not c.passed]
        print(f"suite: {len(checks) - len(failed)}/{len(checks)} checks pass", file=sys.stderr)
        return EXIT_OK if not failed else EXIT_VERDICT
    raise CliError(f"unknown study {args.study!r}")


_BUILTIN_PARAMS = {
    "order5_example_sec31": (),
    "eq2_incomplete": (),
    "A1": (),
    "A2": (),
    "fig2_3x3": ("x",),
    "A_KS": ("n", "x"),
    "A3": ("n", "alpha", "eps"),
    "A4": ("n", "alpha"),
}


def cmd_gen(args) -> int:
    if args.builtin:
        wanted = _BUILTIN_PARAMS.get(args.builtin)
        if wanted is None:
            raise CliError(f"unknown builtin {args.builtin!r}; choose from {sorted(_BUILTIN_PARAMS)}")
        params = {}
        for p in wanted:
            v = getattr(args, "order" if p == "n" else p)
            if v is None:
                raise CliError(f"builtin {args.builtin!r} needs --{p.replace('_', '-') if p != 'n' else 'n'}")
            params[p] = v
        try:
            m = core.builtin_matrix(args.builtin, **params)
        except core.PcmError as exc:
            raise CliError(str(exc)) from exc
    else:
        spec = ensemble.GeneratorSpec(kind=args.random, n=args.order, seed=_seed(args))
        m = next(ensemble.generate(spec, 1))
    _write_out(args, core.format_matrix_text(m, full_precision=args.full_precision))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcmkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--full-precision", action="store_true")
        p.add_argument("--out", default=None)

    p = sub.add_parser("analyze", help="compute inconsistency indices for a matrix file")
    p.add_argument("matrix")
    p.add_argument("indices", nargs="*", metavar="index",
                   help="index names (default: all of ci cr k gci re im)")
    common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("priority", help="compute a priority vector")
    p.add_argument("matrix")
    p.add_argument("--method", choices=("eigen", "geometric"), default="eigen")
    common(p)
    p.set_defaults(fn=cmd_priority)

    p = sub.add_parser("complete", help="fill `?` entries by inconsistency minimization")
    p.add_argument("matrix")
    p.add_argument("--index", choices=sorted(indices.INDEX_FUNCTIONS), default="ci")
    common(p)
    p.set_defaults(fn=cmd_complete)

    p = sub.add_parser("study", help="run a reproducible numerical study, emit CSV")
    psub = p.add_subparsers(dest="study", required=True)

    ps = psub.add_parser("scatter")
    ps.add_argument("--x", required=True, choices=sorted(indices.INDEX_FUNCTIONS))
    ps.add_argument("--y", required=True, choices=sorted(indices.INDEX_FUNCTIONS))
    ps.add_argument("--n", type=int, default=6)
    ps.add_argument("--count", type=int, default=2000)
    ps.add_argument("--kind", choices=ensemble.GENERATOR_KINDS, default="saaty_uniform")
    common(ps)
    ps.set_defaults(fn=cmd_study)

    ps = psub.add_parser("scan")
    ps.add_argument("--index", choices=sorted(indices.INDEX_FUNCTIONS), default="ci")
    ps.add_argument("--start", type=float, default=7.0,
                    help="initial free entry of the 3x3 frame (a_12=3, a_23=1/2)")
    ps.add_argument("--x-lo", type=float, default=0.1)
    ps.add_argument("--x-hi", type=float, default=40.0)
    ps.add_argument("--points", type=int, default=401)
    common(ps)
    ps.set_defaults(fn=cmd_study)

    ps = psub.add_parser("asymptotic")
    ps.add_argument("--x", type=float, required=True)
    ps.add_argument("--n-range", default="3..50", help="inclusive range, e.g. 3..50")
    common(ps)
    ps.set_defaults(fn=cmd_study)

    ps = psub.add_parser("suite")
    common(ps)
    ps.set_defaults(fn=cmd_study)

    p = sub.add_parser("gen", help="write a builtin or random matrix in the text format")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin", default=None)
    g.add_argument("--random", choices=ensemble.GENERATOR_KINDS, default=None)
    p.add_argument("--n", dest="order", type=int, default=None)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    common(p)
    p.set_defaults(fn=cmd_gen)
    return ap


def _parse_range(spec: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = spec.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise CliError(f"bad range {spec!r}; expected e.g. 3..50") from None
    if lo > hi:
        raise CliError(f"bad range {spec!r}: empty")
    return lo, hi


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
