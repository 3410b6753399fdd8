#!/usr/bin/env python3
"""Profile the near-singular direction k1 = k2, alpha -> 0.

For equal wavenumbers the argument of the Legendre-Q machinery approaches
its branch point as the damping vanishes, y - 1 = alpha^2 / (2 k^2), and
the integral with radial power 2 grows without bound.  This script tabulates
the closed-form value, the condition indicator 1/(y-1), and the oracle
cross-check along a geometric alpha ladder.
"""

import argparse

import numpy as np

from besselrad import bare_integral, integrate_two_bessel


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=float, default=1.0, help="common wavenumber")
    parser.add_argument("--alpha-max", type=float, default=1.0)
    parser.add_argument("--alpha-min", type=float, default=0.01)
    parser.add_argument("--steps", type=int, default=9)
    parser.add_argument("--skip-oracle", action="store_true")
    args = parser.parse_args()

    alphas = np.geomspace(args.alpha_max, args.alpha_min, args.steps)
    print(f"{'alpha':>10} {'value':>22} {'condition':>14} {'oracle rel':>12}")
    for alpha in alphas:
        res = bare_integral(2, 0, 1, args.k, args.k, float(alpha))
        if args.skip_oracle:
            rel = float("nan")
        else:
            q = integrate_two_bessel(2, 0, 1, args.k, args.k, float(alpha), 1e-8)
            rel = abs(res.value - q.value) / max(abs(res.value), abs(q.value))
        print(f"{alpha:10.4f} {res.value:22.12e} {res.condition:14.4e} {rel:12.2e}")


if __name__ == "__main__":
    main()
