"""Command line entry point: ``relsteer {eval,sweep,figure,verify,convert}``."""

import argparse
import json
import logging
import sys

from . import channels, sweep
from .errors import RelsteerError
from .verify import format_report, verify

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY = 2
EXIT_IO = 3

log = logging.getLogger("relsteer")


def _float_kv(text):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


def _format_for(path, explicit):
    if explicit:
        return explicit
    return "json" if str(path).lower().endswith(".json") else "csv"


def cmd_eval(args):
    fixed = {}
    for opt, key in (("r_a", "r_a"), ("r_b", "r_b"), ("alpha", "alpha"), ("alpha_a", "alpha_a"),
                     ("alpha_b", "alpha_b"), ("p", "p"), ("q", "q"),
                     ("c11", "c11"), ("c22", "c22"), ("c33", "c33")):
        value = getattr(args, opt)
        if value is not None:
            fixed[key] = value
    fixed.update(dict(args.set or ()))
    spec = sweep.SweepSpec(args.family, fixed)
    row = sweep.run_sweep(spec)[0]
    if row.degenerate:
        raise RelsteerError("filter annihilated the state (degenerate point)")
    report = {k: getattr(row, k) for k in ("I_ab", "I_ba", "S_ab", "S_ba", "delta")}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _run_and_emit(spec, out, fmt, workers):
    rows = sweep.run_sweep(spec, workers=workers)
    try:
        sweep.emit(rows, fmt, out)
    except OSError as exc:
        print(f"relsteer: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    log.info("wrote %d rows to %s", len(rows), out)
    return EXIT_OK


def cmd_sweep(args):
    try:
        spec = sweep.load_spec(args.spec)
    except OSError as exc:
        print(f"relsteer: cannot read {args.spec}: {exc}", file=sys.stderr)
        return EXIT_IO
    out = args.out or spec.output_path
    if not out:
        raise RelsteerError("no output path: pass --out or set output_path")
    fmt = args.format or (spec.output if not args.out else _format_for(out, None))
    return _run_and_emit(spec, out, fmt, args.workers)


def cmd_figure(args):
    spec = sweep.figure_preset(args.preset)
    return _run_and_emit(spec, args.out, _format_for(args.out, args.format), args.workers)


def cmd_verify(args):
    results = verify(seed=args.seed, n=args.cases)
    print(format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_convert(args):
    pm = channels.PhysicalModeParams(args.accel, args.omega, args.c_light)
    print(f"{channels.r_from_physical(pm):.12g}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="relsteer", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a single parameter point")
    p.add_argument("--family", required=True, choices=sweep.FAMILIES)
    for name in ("r-a", "r-b", "alpha", "alpha-a", "alpha-b", "p", "q", "c11", "c22", "c33"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--set", type=_float_kv, action="append", metavar="NAME=VALUE",
                   help="any other parameter, e.g. s3=0.2 or c12=0.1 for the explicit family")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("--spec", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=sweep.FORMATS)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="run a figure preset")
    p.add_argument("preset")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=sweep.FORMATS)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run the oracle cross-check suites")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--cases", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="acceleration parameter r from physical units")
    p.add_argument("--accel", type=float, required=True, help="proper acceleration a (m/s^2)")
    p.add_argument("--omega", type=float, required=True, help="mode frequency (rad/s)")
    p.add_argument("--c-light", type=float, default=299_792_458.0)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except RelsteerError as exc:
        print(f"relsteer: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
