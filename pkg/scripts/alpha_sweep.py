#!/usr/bin/env python3
"""Sweep the damping parameter for a fixed pair of Bessel orders and write
the closed-form values (optionally with oracle cross-checks) to CSV.

Example:
    python scripts/alpha_sweep.py --lambda1 0 --lambda2 1 --power 2 \
        --k1 1 --k2 1 --alpha-start 0.05 --alpha-stop 2 --count 40 \
        --oracle --out alpha_sweep.csv
"""

import argparse

from besselrad import cli


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lambda1", type=int, default=0)
    parser.add_argument("--lambda2", type=int, default=1)
    parser.add_argument("--power", type=int, default=2)
    parser.add_argument("--k1", type=float, default=1.0)
    parser.add_argument("--k2", type=float, default=1.0)
    parser.add_argument("--alpha-start", type=float, default=0.05)
    parser.add_argument("--alpha-stop", type=float, default=2.0)
    parser.add_argument("--count", type=int, default=40)
    parser.add_argument("--oracle", action="store_true")
    parser.add_argument("--out", default="alpha_sweep.csv")
    return parser.parse_args()


def main():
    args = parse_args()
    argv = [
        "table",
        "--sweep", f"alpha={args.alpha_start}:{args.alpha_stop}:{args.count}",
        "--lambda1", str(args.lambda1),
        "--lambda2", str(args.lambda2),
        "--power", str(args.power),
        "--k1", str(args.k1),
        "--k2", str(args.k2),
        "--out", args.out,
    ]
    if args.oracle:
        argv.append("--oracle")
    code = cli.main(argv)
    if code == 0:
        with open(args.out, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        print(lines[0])
        for line in lines[1:6]:
            print(line)
        if len(lines) > 6:
            print(f"... ({len(lines) - 1} rows total)")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
