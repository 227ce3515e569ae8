"""``disp`` command-line front end.

Exit codes: 0 success, 2 configuration error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import ConfigError, DispersionError
from .commands import cmd_bandgap, cmd_characteristics, cmd_dispersion, cmd_plot, cmd_sweep
from .config import RunConfig, parse_config, render_config

__all__ = ["main", "parse_config", "render_config", "RunConfig"]

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="disp", description="Dispersion analysis of the weighted relaxed micromorphic continuum.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("characteristics", "dispersion", "bandgap", "sweep"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="flat key = value file (MPa, mm)")
        sp.add_argument("--out", help="output file (directory for sweep); stdout when omitted")
        sp.add_argument("--mode", choices=("strict", "exploratory"), default="strict")
        if name in ("dispersion", "sweep"):
            sp.add_argument("--workers", type=int, default=None, help="thread count for grid evaluation")
    sp = sub.add_parser("plot")
    sp.add_argument("--csv", required=True, help="dispersion CSV to draw")
    sp.add_argument("--config", help="ignored; accepted for a uniform command line")
    sp.add_argument("--out", help="SVG path; stdout when omitted")
    sp.add_argument("--mode", choices=("strict", "exploratory"), default="strict")
    return ap


def _load(path, mode):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    cfg = parse_config(text, mode)
    for w in cfg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return cfg


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            text = cmd_plot(args.csv, args.out)
        else:
            cfg = _load(args.config, args.mode)
            if args.command == "characteristics":
                text = cmd_characteristics(cfg, args.out)
            elif args.command == "dispersion":
                text = cmd_dispersion(cfg, args.out, args.workers)
            elif args.command == "bandgap":
                text = cmd_bandgap(cfg, args.out)
            else:
                if not args.out:
                    print("error: sweep needs --out DIRECTORY", file=sys.stderr)
                    return EXIT_CONFIG
                cmd_sweep(cfg, args.out, args.workers)
                text = None
        if text is not None and not args.out:
            sys.stdout.write(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DispersionError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))
