"""Command-line front end.

Subcommands: ``simulate`` (Monte Carlo ensembles of grown networks),
``theory`` (stationary / transient / generating-function computations),
``compare`` (cellwise error tables between two grid files), and ``spr``
(ensemble evolution by edge transfer, m=1).  Outputs are plain JSON/CSV
files; every run directory gets a manifest sufficient for bit-exact replay.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .ensemble import default_jobs, run_ensemble
from .errors import DegcorrError, InvalidParameterError, UnsupportedModeError
from .gridio import (
    RunManifest,
    error_table,
    read_grid,
    to_grid_data,
    write_error_table,
    write_grid,
    write_gf_rows,
    write_manifest,
    write_summary,
)
from .spr import ensemble_stream, spr_run, spr_step
from .stats import DIRECTED, UNDIRECTED, joint_degree_matrix, merge_matrices, pearson_r
from .theory import (
    gf_row_directed,
    gf_rows_undirected,
    stationary_grid,
    transient_run,
    transient_start,
    transient_step_directed,
    transient_step_undirected,
)

_MODES = (DIRECTED, UNDIRECTED)


def _add_common_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="grid file format")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degcorr",
        description="Degree-degree correlation of pure-growth networks: "
        "simulation, Markov-chain theory, and comparison tables.",
    )
    parser.add_argument("--version", action="version", version=f"degcorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run replica ensembles and write the merged grid")
    sim.add_argument("--m", type=int, required=True, help="edges added per step")
    sim.add_argument("--n0", type=int, default=None, help="initial clique size (default m+2)")
    sim.add_argument("--steps", type=int, default=20_000, help="growth steps per replica")
    sim.add_argument("--replicas", type=int, default=100, help="independent replicas")
    sim.add_argument("--seed", type=int, default=0, help="base seed; replicas derive their own streams")
    sim.add_argument("--mode", choices=_MODES, required=True)
    sim.add_argument("--max-k", type=int, default=None, help="truncate the written grid (excess mass goes to tail)")
    sim.add_argument("--jobs", type=int, default=None, help="worker processes (default DEGCORR_JOBS or 1)")
    _add_common_out(sim)

    theory = sub.add_parser("theory", help="stationary, transient, or generating-function output")
    tsub = theory.add_subparsers(dest="theory_command", required=True)

    stat = tsub.add_parser("stationary", help="fixed-point correlation grid")
    stat.add_argument("--m", type=int, required=True)
    stat.add_argument("--mode", choices=_MODES, required=True)
    stat.add_argument("--max-k", type=int, default=None, help="window bound (default: grow until --tail-eps)")
    stat.add_argument("--tail-eps", type=float, default=1e-10)
    _add_common_out(stat)

    trans = tsub.add_parser("transient", help="finite-time distribution from the seed clique")
    trans.add_argument("--m", type=int, required=True)
    trans.add_argument("--n0", type=int, default=None, help="initial clique size (default m+2)")
    trans.add_argument("--steps", type=int, required=True)
    trans.add_argument("--mode", choices=_MODES, required=True)
    trans.add_argument("--max-k", type=int, default=None, help="window bound (default 64, grown to fit the start)")
    trans.add_argument("--snapshots", default="", help="comma-separated t values to also write")
    _add_common_out(trans)

    gf = tsub.add_parser("gf", help="stationary rows via generating functions")
    gf.add_argument("--m", type=int, required=True)
    gf.add_argument("--rows", type=int, default=7, help="number of rows starting at m")
    gf.add_argument("--mode", choices=_MODES, required=True)
    gf.add_argument("--max-k", type=int, default=60)
    _add_common_out(gf)

    cmp_p = sub.add_parser("compare", help="cellwise |sim - theory| error table")
    cmp_p.add_argument("--sim", required=True, help="simulated grid file")
    cmp_p.add_argument("--theory", required=True, help="theoretical grid file")
    cmp_p.add_argument("--window", default=None, help="inclusive degree range 'lo:hi' (default m:m+5)")
    cmp_p.add_argument("--out", required=True, help="output directory")

    spr = sub.add_parser("spr", help="ensemble evolution by edge transfer (m=1)")
    spr.add_argument("--m", type=int, default=1)
    spr.add_argument("--n0", type=int, default=3)
    spr.add_argument("--steps", type=int, default=1, help="generations")
    spr.add_argument("--replicas", type=int, required=True, help="ensemble size")
    spr.add_argument("--seed", type=int, default=0)
    spr.add_argument("--mode", choices=_MODES, required=True)
    _add_common_out(spr)

    return parser


def _parse_window(raw: str | None) -> tuple[int, int] | None:
    if raw is None:
        return None
    parts = raw.split(":")
    if len(parts) != 2:
        raise InvalidParameterError(f"--window must be 'lo:hi', got {raw!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidParameterError(f"--window must be 'lo:hi' integers, got {raw!r}") from None
    return lo, hi


def _ensure_out(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_simulate(args) -> int:
    n0 = args.n0 if args.n0 is not None else args.m + 2
    jobs = args.jobs if args.jobs is not None else default_jobs()
    result = run_ensemble(
        m=args.m,
        n0=n0,
        steps=args.steps,
        replicas=args.replicas,
        seed=args.seed,
        modes=(args.mode,),
        jobs=jobs,
    )
    merged = result.matrices[args.mode]
    data = to_grid_data(merged)
    if args.max_k is not None:
        kept = {k: v for k, v in data.entries.items() if max(k) <= args.max_k}
        data.tail_mass = sum(v for k, v in data.entries.items() if max(k) > args.max_k)
        data.entries = kept
        data.max_k = args.max_k
    out = _ensure_out(args.out)
    write_grid(data, out / f"grid.{args.format}", args.format)
    write_summary(
        out / "summary.json",
        mode=args.mode,
        m=args.m,
        summary=pearson_r(merged),
        knn=result.knn,
        histogram=result.histogram,
        edge_count=merged.edge_count,
        replicas=args.replicas,
    )
    manifest = RunManifest.create(
        "simulate",
        args.mode,
        args.m,
        n0=n0,
        steps=args.steps,
        replicas=args.replicas,
        seed=args.seed,
        max_k=args.max_k,
    )
    write_manifest(manifest, out / "manifest.json")
    return 0


def _cmd_theory_stationary(args) -> int:
    grid = stationary_grid(args.m, args.mode, max_k=args.max_k, tail_epsilon=args.tail_eps)
    out = _ensure_out(args.out)
    write_grid(grid, out / f"grid.{args.format}", args.format)
    manifest = RunManifest.create(
        "theory stationary",
        args.mode,
        args.m,
        max_k=grid.max_k,
        tail_epsilon=args.tail_eps,
    )
    write_manifest(manifest, out / "manifest.json")
    return 0


def _cmd_theory_transient(args) -> int:
    n0 = args.n0 if args.n0 is not None else args.m + 2
    max_k = args.max_k if args.max_k is not None else max(64, n0)
    snapshots: tuple[int, ...] = ()
    if args.snapshots.strip():
        try:
            snapshots = tuple(int(tok) for tok in args.snapshots.split(","))
        except ValueError:
            raise InvalidParameterError(f"--snapshots must be integers, got {args.snapshots!r}") from None
    final, snaps = transient_run(args.m, n0, args.steps, max_k, args.mode, snapshot_steps=snapshots)
    out = _ensure_out(args.out)
    write_grid(final, out / f"grid.{args.format}", args.format)
    for t, dist in sorted(snaps.items()):
        write_grid(dist, out / f"grid_t{t}.{args.format}", args.format)
    manifest = RunManifest.create(
        "theory transient",
        args.mode,
        args.m,
        n0=n0,
        steps=args.steps,
        max_k=max_k,
    )
    write_manifest(manifest, out / "manifest.json")
    return 0


def _cmd_theory_gf(args) -> int:
    if args.mode == DIRECTED:
        rows = [gf_row_directed(args.m, r, args.max_k) for r in range(args.m, args.m + args.rows)]
    else:
        rows = gf_rows_undirected(args.m, args.rows, args.max_k)
    out = _ensure_out(args.out)
    write_gf_rows(rows, out / f"gf.{args.format}", args.format, mode=args.mode)
    manifest = RunManifest.create("theory gf", args.mode, args.m, max_k=args.max_k)
    write_manifest(manifest, out / "manifest.json")
    return 0


def _cmd_compare(args) -> int:
    sim = read_grid(args.sim)
    theory = read_grid(args.theory)
    table = error_table(sim, theory, window=_parse_window(args.window))
    out = _ensure_out(args.out)
    write_error_table(table, out / "errors.csv")
    print(f"max_error={table.max_error!r} mean_error={table.mean_error!r}")
    return 0


def _cmd_spr(args) -> int:
    if args.m != 1:
        raise UnsupportedModeError(f"spr is defined for m=1, got m={args.m}")
    out = _ensure_out(args.out)
    i0 = args.n0 * (args.n0 - 1) // 2
    max_k = args.n0 - 1 + args.steps
    report: dict[str, object] = {"generations": []}
    ens = spr_run(args.n0, 0, args.replicas, args.seed)
    # Same stream derivation as spr_run, so stepping here generation by
    # generation matches spr_run(n0, steps, replicas, seed) exactly.
    rng = ensemble_stream(args.seed)
    theory_dist = transient_start(args.m, args.n0, max(max_k, args.n0 + 1), args.mode)
    step = transient_step_directed if args.mode == DIRECTED else transient_step_undirected
    for g in range(args.steps + 1):
        bucket = i0 + g
        nets = ens.buckets.get(bucket, [])
        gen_info: dict[str, object] = {
            "generation": g,
            "bucket": bucket,
            "bucket_sizes": {str(i): len(v) for i, v in sorted(ens.buckets.items())},
            "carryover": {str(i): c for i, c in sorted(ens.carryover.items())},
        }
        if nets:
            pooled = merge_matrices([joint_degree_matrix(net, args.mode) for net in nets])
            pooled.m = args.m
            write_grid(pooled, out / f"gen{g}.{args.format}", args.format)
            table = error_table(pooled, to_grid_data(theory_dist), window=(args.m, max_k))
            write_error_table(table, out / f"errors_gen{g}.csv")
            gen_info["max_error_vs_theory"] = table.max_error
        report["generations"].append(gen_info)
        if g < args.steps:
            ens = spr_step(ens, rng)
            theory_dist = step(theory_dist, args.m)
    (out / "spr_report.json").write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    manifest = RunManifest.create(
        "spr",
        args.mode,
        args.m,
        n0=args.n0,
        steps=args.steps,
        replicas=args.replicas,
        seed=args.seed,
    )
    write_manifest(manifest, out / "manifest.json")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "theory":
            if args.theory_command == "stationary":
                return _cmd_theory_stationary(args)
            if args.theory_command == "transient":
                return _cmd_theory_transient(args)
            return _cmd_theory_gf(args)
        if args.command == "compare":
            return _cmd_compare(args)
        if args.command == "spr":
            return _cmd_spr(args)
        parser.error(f"unknown command {args.command}")
        return 2
    except DegcorrError as exc:
        print(f'degcorr: error kind={exc.kind} msg="{exc}"', file=sys.stderr)
        return 1
    except OSError as exc:
        print(f'degcorr: error kind=io-error msg="{exc}"', file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
