#!/usr/bin/env python3
"""Run every figure preset and write one data file per panel.

    python scripts/reproduce_figures.py --out-dir data/ [--format json] [--workers 4]
"""
import argparse
import logging
import time
from pathlib import Path

from relsteer import sweep

logging.basicConfig(level=logging.INFO, format="%(message)s")
log = logging.getLogger(__name__)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data")
    parser.add_argument("--format", choices=sweep.FORMATS, default="csv")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--only", nargs="*", help="subset of preset names")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.only or sorted(sweep.PRESETS):
        t0 = time.perf_counter()
        rows = sweep.run_sweep(sweep.figure_preset(name), workers=args.workers)
        path = out_dir / f"{name}.{args.format}"
        sweep.emit(rows, args.format, path)
        area = sweep.steerable_area(rows)
        log.info("%-15s %6d rows  steerable A->B fraction %.3f  %.2fs", name, len(rows), area,
                 time.perf_counter() - t0)


if __name__ == "__main__":
    main()
