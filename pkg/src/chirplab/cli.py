"""Command-line front end: ber / ee / se point tools and config-file runs."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .channel import ChannelSpec
from .core import ALL_SCHEMES, ConfigError, Scheme, SchemeConfig, bits_per_symbol
from .harness import (
    UnbracketedTargetError,
    ber_point_adaptive,
    ee_required_ebn0,
    group_of,
    se_of,
)
from .runio import (
    BER_COLUMNS,
    EE_COLUMNS,
    ber_row,
    ee_row,
    fmt,
    parse_ebn0_range,
    run_experiment,
)
from .schemes import supported_modes


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", required=True, help="scheme name, e.g. lora, dm-css")
    p.add_argument("--lambda", dest="sf", type=int, required=True, help="spreading factor")
    p.add_argument("--mode", required=True, help="coherent | noncoherent | semicoherent")
    p.add_argument("--psi", type=float, default=0.0, help="phase offset, radians")
    p.add_argument("--delta-f", type=float, default=0.0, help="frequency offset, cycles/symbol")
    p.add_argument("--trials", type=int, default=10000, help="trial cap per point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, default=None, help="write CSV here as well as stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirplab",
        description="Chirp-spread-spectrum BER/SE/EE simulation toolkit.",
    )
    parser.add_argument(
        "--list-schemes", action="store_true", help="print the scheme/mode support matrix"
    )
    sub = parser.add_subparsers(dest="command")

    p_ber = sub.add_parser("ber", help="Monte-Carlo BER at one or more Eb/N0 points")
    _add_common(p_ber)
    p_ber.add_argument("--ebn0", type=float, nargs="+", help="Eb/N0 points in dB")
    p_ber.add_argument("--ebn0-range", help="lo:hi:step grid in dB")

    p_ee = sub.add_parser("ee", help="Eb/N0 required to hit a target BER")
    _add_common(p_ee)
    p_ee.add_argument("--target-ber", type=float, default=1e-3)
    p_ee.add_argument("--ebn0-range", required=True, help="scan grid lo:hi:step (step <= 0.25)")
    p_ee.add_argument("--floor-ok", action="store_true",
                      help="report an error floor instead of failing when unbracketed")

    p_se = sub.add_parser("se", help="spectral-efficiency table")
    p_se.add_argument("--scheme", nargs="+", default=[s.value for s in ALL_SCHEMES])
    p_se.add_argument("--lambda", dest="sf", type=int, nargs="+", default=[8])
    p_se.add_argument("--out", type=Path, default=None)

    p_run = sub.add_parser("run", help="execute a sweep-matrix config file")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--out", default=None, help="override the config's output stem")
    p_run.add_argument("--workers", type=int, default=None)

    return parser


def _emit(lines: list[str], out: Path | None) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _print_support_matrix() -> None:
    width = max(len(s.value) for s in ALL_SCHEMES)
    print(f"{'scheme':<{width}}  group  modes")
    for s in ALL_SCHEMES:
        print(f"{s.value:<{width}}  {group_of(s)}      {', '.join(supported_modes(s))}")


def _cmd_ber(args) -> int:
    cfg = SchemeConfig(Scheme(args.scheme), args.sf)
    grid = list(args.ebn0 or [])
    if args.ebn0_range:
        grid += parse_ebn0_range(args.ebn0_range)
    if not grid:
        print("error: give --ebn0 and/or --ebn0-range", file=sys.stderr)
        return 2
    lines = [",".join(BER_COLUMNS)]
    for x in grid:
        spec = ChannelSpec(x, args.psi, args.delta_f, args.seed)
        pt = ber_point_adaptive(cfg, args.mode, spec, args.trials, args.seed, args.workers)
        lines.append(ber_row(pt))
    _emit(lines, args.out)
    return 0


def _cmd_ee(args) -> int:
    cfg = SchemeConfig(Scheme(args.scheme), args.sf)
    grid = parse_ebn0_range(args.ebn0_range)
    if len(grid) < 2:
        print("error: scan needs at least two grid points", file=sys.stderr)
        return 2
    try:
        res = ee_required_ebn0(
            cfg, args.mode, args.target_ber, grid[0], grid[-1], grid[1] - grid[0],
            args.trials, args.seed, args.psi, args.delta_f, args.workers,
            floor_ok=args.floor_ok,
        )
    except UnbracketedTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit([",".join(EE_COLUMNS), ee_row(res, args.psi, args.delta_f, args.seed)], args.out)
    return 0


def _cmd_se(args) -> int:
    lines = ["scheme,lambda,bits_per_symbol,se,group"]
    for name in args.scheme:
        scheme = Scheme(name)
        for sf in args.sf:
            cfg = SchemeConfig(scheme, sf)
            lines.append(
                f"{scheme.value},{sf},{bits_per_symbol(cfg)},{fmt(se_of(cfg))},{group_of(scheme)}"
            )
    _emit(lines, args.out)
    return 0


def _cmd_run(args) -> int:
    summary = run_experiment(args.config, args.out, args.workers)
    print(f"wrote {summary.rows} BER rows to {summary.csv_path}")
    if summary.ee_csv_path is not None:
        print(f"wrote {summary.ee_rows} EE rows to {summary.ee_csv_path}")
    print(f"manifest: {summary.manifest_path}")
    if summary.skipped:
        print(f"{len(summary.skipped)} combination(s) skipped; see manifest")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_schemes:
        _print_support_matrix()
        return 0
    if args.command is None:
        parser.print_help()
        return 2
    try:
        return {"ber": _cmd_ber, "ee": _cmd_ee, "se": _cmd_se, "run": _cmd_run}[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
