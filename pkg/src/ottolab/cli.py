"""Command-line front end: report, sweep, optimize, check, figure."""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, figures, runs
from .config import ConfigError, build_run_config, load_config
from .qubit import ParamOutOfRange

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_CONFIG = 2
EXIT_RANGE = 3
EXIT_OUTPUT = 4
EXIT_TARGET = 5


def _add_common(sub):
    sub.add_argument("--config", required=True, help="JSON config path")
    sub.add_argument("--mode", choices=("dephased", "undephased", "both"))
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json", "svg"),
                     dest="fmt")
    sub.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otto",
        description="Work/heat statistics of unital qubit Otto cycles")
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("report", "sweep", "optimize"):
        _add_common(subs.add_parser(name))
    chk = subs.add_parser("check", help="run every invariant suite")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--skip-golden", action="store_true",
                     help="skip golden-figure regeneration")
    chk.add_argument("--corrupt-channel", action="store_true",
                     help=argparse.SUPPRESS)  # test hook
    fig = subs.add_parser("figure", help="reproduce a shipped figure dataset")
    fig.add_argument("name", choices=figures.FIGURES)
    fig.add_argument("--out", help="output CSV path (default: <name>.csv)")
    fig.add_argument("--format", choices=("csv", "svg"), dest="fmt",
                     default="csv")
    return parser


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _OutputError(str(exc)) from exc


class _OutputError(OSError):
    pass


def _load(args) -> "RunConfig":
    overrides = {"mode": args.mode, "seed": args.seed,
                 "output.path": args.out, "output.format": args.fmt}
    return build_run_config(load_config(args.config), overrides)


def _cmd_report(args) -> int:
    cfg = _load(args)
    if cfg.axes:
        raise ConfigError("report takes a single point; remove sweep axes")
    doc = runs.report_document(cfg)
    _write(cfg.output.path, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load(args)
    if not cfg.axes:
        raise ConfigError("sweep requires sweep.axis1 in the config")
    header, rows = runs.sweep_table(cfg)
    if cfg.output.fmt == "svg":
        _write(cfg.output.path, runs.render_sweep_svg(cfg, header, rows))
    else:
        _write(cfg.output.path, runs.render_csv(header, rows))
    return EXIT_OK


def _cmd_optimize(args) -> int:
    cfg = _load(args)
    if cfg.target is None:
        raise ConfigError("optimize requires a target "
                          "(work|efficiency|reliabilityw)")
    doc = runs.optimize_document(cfg)
    _write(cfg.output.path, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _cmd_check(args) -> int:
    results = checks.run_all(seed=args.seed,
                             inject_nonunital=args.corrupt_channel,
                             with_golden=not args.skip_golden)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_SUITE_FAILURE if failed else EXIT_OK


def _cmd_figure(args) -> int:
    cfg = figures.figure_config(args.name)
    header, rows = runs.sweep_table(cfg)
    if args.fmt == "svg":
        out = args.out or f"{args.name}.svg"
        _write(out, runs.render_sweep_svg(cfg, header, rows))
    else:
        out = args.out or f"{args.name}.csv"
        _write(out, runs.render_csv(header, rows))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"report": _cmd_report, "sweep": _cmd_sweep,
                "optimize": _cmd_optimize, "check": _cmd_check,
                "figure": _cmd_figure}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParamOutOfRange as exc:
        print(f"parameter out of range: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except _OutputError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    except runs.TargetUndefined as exc:
        print(f"optimization target undefined: {exc}", file=sys.stderr)
        return EXIT_TARGET


if __name__ == "__main__":
    sys.exit(main())
