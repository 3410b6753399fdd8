#!/usr/bin/env python3
"""Run every identity-check suite and summarize.

Equivalent to `besselrad check --suite all`, with per-suite summaries
instead of per-case lines.  Useful as a quick health check after changes.
"""

import argparse
import contextlib
import io

from besselrad import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-l", type=int, default=4)
    args = parser.parse_args()

    failures = 0
    for suite in ("eq29", "eq28", "eq211", "eq26", "eq212", "eq21", "wigner", "qfunc"):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli.main(["check", "--suite", suite, "--max-l", str(args.max_l), "--quiet"])
        summary = buf.getvalue().splitlines()[-1]
        print(f"{suite:8s} {summary}  (exit {code})")
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
