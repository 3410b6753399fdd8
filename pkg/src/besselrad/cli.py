"""Command-line interface: single evaluations with optional oracle
comparison, parameter sweeps to CSV/JSON, Wigner symbol queries, and the
identity-check suites.

Exit codes: 0 success; 1 check-suite failure; 2 invalid or missing flags;
3 no closed form applies (without --fallback-oracle); 4 quadrature
non-convergence; 5 unwritable output path.

All output is deterministic: floats are serialized with 17 significant
digits (round-trip exact), rows follow the input grid order, and nothing
timestamped is ever printed.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import closedform, oracle, specfun, wigner

PARAM_NAMES = ("lambda1", "lambda2", "power", "k1", "k2", "alpha")
INT_PARAMS = frozenset({"lambda1", "lambda2", "power"})

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3
EXIT_NONCONVERGENCE = 4
EXIT_UNWRITABLE = 5


def _fmt(v) -> str:
    """Serialize one cell: ints bare, floats with 17 significant digits."""
    if v is None:
        return "NA"
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, str):
        return '"' + v + '"'
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _json_object(pairs) -> str:
    return "{" + ", ".join(f'"{k}": {_json_scalar(v)}' for k, v in pairs) + "}"


def _rel_discrepancy(a: float, b: float) -> float:
    m = max(abs(a), abs(b))
    return 0.0 if m == 0.0 else abs(a - b) / m


# ----------------------------------------------------------------------
# eval


def cmd_eval(args: argparse.Namespace) -> int:
    n = args.power
    try:
        result = closedform.bare_integral(n, args.lambda1, args.lambda2, args.k1, args.k2, args.alpha)
        method = result.method.value
        value: Optional[float] = result.value
        condition = result.condition
    except closedform.FormulaInapplicable as exc:
        condition = closedform.condition_number(args.k1, args.k2, args.alpha)
        if not args.fallback_oracle:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INAPPLICABLE
        method = "NA"
        value = None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    oracle_value: Optional[float] = None
    oracle_abs_error: Optional[float] = None
    rel_disc: Optional[float] = None
    if args.oracle or value is None:
        try:
            q = oracle.integrate_two_bessel(
                n, args.lambda1, args.lambda2, args.k1, args.k2, args.alpha, args.rel_tol
            )
        except oracle.NonConvergence as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NONCONVERGENCE
        oracle_value = q.value
        oracle_abs_error = q.abs_error_estimate
        if value is None:
            value = q.value
        rel_disc = _rel_discrepancy(value, oracle_value)

    product_value: Optional[float] = None
    if args.product and method != "NA":
        product_value = _product_for_route(n, args.lambda1, args.lambda2, args.k1, args.k2, args.alpha)

    if args.json:
        print(_json_object([
            ("value", value),
            ("method", method),
            ("condition", condition),
            ("oracle_value", oracle_value),
            ("oracle_abs_error", oracle_abs_error),
            ("rel_discrepancy", rel_disc),
        ]))
    else:
        print(f"value {_fmt(value)}")
        print(f"method {method}")
        print(f"condition {_fmt(condition)}")
        if product_value is not None:
            print(f"product {_fmt(product_value)}")
        if oracle_value is not None and args.oracle:
            print(f"oracle_value {_fmt(oracle_value)}")
            print(f"oracle_abs_error {_fmt(oracle_abs_error)}")
            print(f"rel_discrepancy {_fmt(rel_disc)}")
    return EXIT_OK


def _product_for_route(n: int, l1: int, l2: int, k1: float, k2: float, alpha: float) -> float:
    """The 3j-weighted product behind the bare-integral route."""
    if (l1 + l2 + n - 1) % 2 == 0:
        l3, offset = n - 1, 1
    else:
        l3, offset = n - 2, 2
    return closedform.two_bessel_product(l1, l2, l3, k1, k2, alpha, offset).value


# ----------------------------------------------------------------------
# table


@dataclass
class SweepTable:
    columns: list[str]
    rows: list[list]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        objs = [_json_object(zip(self.columns, row)) for row in self.rows]
        return "[" + ",\n ".join(objs) + "]\n"


def _parse_sweep(text: str) -> tuple[str, list[float]]:
    try:
        name, spec_part = text.split("=", 1)
        start_s, stop_s, count_s = spec_part.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise ValueError(f"bad sweep spec {text!r}; expected name=start:stop:count") from None
    if name not in PARAM_NAMES:
        raise ValueError(f"unknown sweep parameter {name!r}; choose from {', '.join(PARAM_NAMES)}")
    if count < 1:
        raise ValueError(f"sweep count must be >= 1, got {count}")
    values = [float(v) for v in np.linspace(start, stop, count)]
    if name in INT_PARAMS:
        rounded = [int(round(v)) for v in values]
        if any(abs(r - v) > 1e-9 for r, v in zip(rounded, values)):
            raise ValueError(f"sweep over integer parameter {name!r} hits non-integer values")
        values = rounded
    return name, values


def cmd_table(args: argparse.Namespace) -> int:
    axes: list[tuple[str, list]] = []
    seen: set[str] = set()
    for text in args.sweep or []:
        try:
            name, values = _parse_sweep(text)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if name in seen:
            print(f"error: parameter {name!r} swept twice", file=sys.stderr)
            return EXIT_USAGE
        seen.add(name)
        axes.append((name, values))

    fixed: dict[str, float] = {}
    for name in PARAM_NAMES:
        flag = getattr(args, name)
        if name in seen:
            if flag is not None:
                print(f"error: parameter {name!r} both swept and fixed", file=sys.stderr)
                return EXIT_USAGE
        else:
            if flag is None:
                print(f"error: parameter {name!r} neither swept nor fixed", file=sys.stderr)
                return EXIT_USAGE
            fixed[name] = flag

    columns = list(PARAM_NAMES) + ["value", "method", "condition"]
    if args.oracle:
        columns += ["oracle_value", "rel_discrepancy"]

    rows: list[list] = []
    value_axes = [values for _, values in axes] or [[None]]
    for combo in itertools.product(*value_axes):
        point = dict(fixed)
        for (name, _), v in zip(axes, combo):
            point[name] = v
        l1 = int(point["lambda1"])
        l2 = int(point["lambda2"])
        n = int(point["power"])
        k1, k2, alpha = float(point["k1"]), float(point["k2"]), float(point["alpha"])
        try:
            condition = closedform.condition_number(k1, k2, alpha)
            res = closedform.bare_integral(n, l1, l2, k1, k2, alpha)
            value: Optional[float] = res.value
            method = res.method.value
        except closedform.FormulaInapplicable:
            value = None
            method = "NA"
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        oracle_value: Optional[float] = None
        rel_disc: Optional[float] = None
        if args.oracle or (value is None and args.fallback_oracle):
            try:
                q = oracle.integrate_two_bessel(n, l1, l2, k1, k2, alpha, args.rel_tol)
            except oracle.NonConvergence as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_NONCONVERGENCE
            oracle_value = q.value
        if value is None and args.fallback_oracle and oracle_value is not None:
            value = oracle_value
        if args.oracle and value is not None and oracle_value is not None:
            rel_disc = _rel_discrepancy(value, oracle_value)
        row: list = [l1, l2, n, k1, k2, alpha, value, method, condition]
        if args.oracle:
            row += [oracle_value, rel_disc]
        rows.append(row)

    table = SweepTable(columns, rows)
    payload = table.to_csv() if args.format == "csv" else table.to_json()
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    if not args.quiet:
        print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


# ----------------------------------------------------------------------
# wigner symbols


def _parse_int_list(text: str, count: int, what: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise ValueError(f"{what} needs {count} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"{what} must be integers, got {text!r}") from None


def _print_wigner(value: wigner.WignerValue, as_json: bool) -> None:
    if as_json:
        print(_json_object([
            ("exact", value.exact_str()),
            ("sign", value.sign),
            ("radicand_num", value.radicand_num),
            ("radicand_den", value.radicand_den),
            ("value", float(value)),
        ]))
    else:
        print(f"{value.exact_str()} = {_fmt(float(value))}")


def cmd_wigner3j(args: argparse.Namespace) -> int:
    try:
        js = _parse_int_list(args.j, 3, "--j")
        ms = _parse_int_list(args.m, 3, "--m")
        arg = wigner.AngularMomenta3j(js[0], js[1], js[2], ms[0], ms[1], ms[2])
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _print_wigner(wigner.wigner_3j(arg), args.json)
    return EXIT_OK


def cmd_wigner6j(args: argparse.Namespace) -> int:
    try:
        js = _parse_int_list(args.j, 6, "--j")
        value = wigner.wigner_6j(*js)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _print_wigner(value, args.json)
    return EXIT_OK


# ----------------------------------------------------------------------
# check suites

_K_GRID = (0.5, 1.0, 2.0)
_ALPHA_GRID = (0.5, 1.0, 2.0)


def _suite_eq29(max_l: int, tol: float):
    inner = max(tol * 1e-2, 1e-12)
    for L in range(max_l + 1):
        for k1 in _K_GRID:
            for k2 in _K_GRID:
                for alpha in _ALPHA_GRID:
                    cf = closedform.two_bessel_equal_order(L, k1, k2, alpha).value
                    q = oracle.integrate_two_bessel(1, L, L, k1, k2, alpha, inner)
                    rel = _rel_discrepancy(cf, q.value)
                    label = f"eq29 L={L} k1={k1:g} k2={k2:g} alpha={alpha:g}"
                    yield label, rel <= tol, f"rel={rel:.3e}"
                    if L == 0:
                        elem = 0.25 * math.log(
                            ((k1 + k2) ** 2 + alpha**2) / ((k1 - k2) ** 2 + alpha**2)
                        ) / (k1 * k2)
                        rel0 = _rel_discrepancy(cf, elem)
                        yield label + " elementary", rel0 <= 1e-12, f"rel={rel0:.3e}"


def _two_bessel_cases(max_l: int):
    for l1 in range(max_l + 1):
        for l2 in range(max_l + 1):
            for l3 in range(abs(l1 - l2), min(l1 + l2, 8) + 1):
                if (l1 + l2 + l3) % 2 == 0:
                    yield l1, l2, l3


def _suite_two_bessel(max_l: int, tol: float, offset: int, name: str):
    inner = max(tol * 1e-2, 1e-12)
    for l1, l2, l3 in _two_bessel_cases(max_l):
        w3 = float(wigner.wigner_3j(wigner.AngularMomenta3j(l1, l2, l3, 0, 0, 0)))
        n = l3 + offset
        for k1 in _K_GRID:
            for k2 in _K_GRID:
                for alpha in _ALPHA_GRID:
                    cf = closedform.two_bessel_product(l1, l2, l3, k1, k2, alpha, offset).value
                    q = oracle.integrate_two_bessel(n, l1, l2, k1, k2, alpha, inner)
                    lhs = w3 * q.value
                    # at isolated zero crossings the relative measure is
                    # ill-posed; the oracle's own uncertainty decides instead
                    limit = tol * max(abs(cf), abs(lhs)) + 3.0 * abs(w3) * q.abs_error_estimate
                    rel = _rel_discrepancy(cf, lhs)
                    label = f"{name} l=({l1},{l2},{l3}) k1={k1:g} k2={k2:g} alpha={alpha:g}"
                    yield label, abs(cf - lhs) <= limit, f"rel={rel:.3e}"


def _suite_eq26(max_l: int, tol: float):
    inner = max(tol * 1e-2, 1e-12)
    for l in range(max_l + 1):
        for l3 in range(max_l + 1):
            for k1 in _K_GRID:
                for k2 in _K_GRID:
                    for alpha in _ALPHA_GRID:
                        q = oracle.check_eq_2_6(l, l3, k1, k2, alpha, inner)
                        y = closedform.y_param(k1, k2, alpha)
                        rhs = specfun.paper_q_combination(l, l3, y) / (
                            (2.0 * k1 * k2) ** l3 * math.factorial(l3)
                        )
                        limit = tol * max(abs(q.value), abs(rhs)) + 3.0 * q.abs_error_estimate
                        rel = _rel_discrepancy(q.value, rhs)
                        label = f"eq26 l={l} l3={l3} k1={k1:g} k2={k2:g} alpha={alpha:g}"
                        yield label, abs(q.value - rhs) <= limit, f"rel={rel:.3e}"


def _suite_eq212(max_l: int, tol: float):
    inner = max(tol * 1e-2, 1e-12)
    for l in range(max_l + 3):
        for L in range(max_l + 1):
            for y0 in (1.1, 1.5, 3.0):
                q = oracle.check_eq_2_12(l, L, y0, inner)
                target = specfun.paper_q_combination(l, L, y0)
                rel = _rel_discrepancy(q.value, target)
                label = f"eq212 l={l} L={L} y0={y0:g}"
                yield label, rel <= tol, f"rel={rel:.3e}"


_EQ21_LAMBDAS = ((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 1, 2), (2, 2, 2))
_EQ21_KTRIPLES = ((1.0, 1.0, 1.0), (1.0, 2.0, 2.5), (1.0, 1.0, 3.0))


def _suite_eq21(max_l: int, tol: float):
    for l1, l2, l3 in _EQ21_LAMBDAS:
        for k1, k2, k3 in _EQ21_KTRIPLES:
            spec = closedform.ThreeBesselSpec(l1, l2, l3, k1, k2, k3)
            cf = closedform.three_bessel_product(spec)
            w3 = float(wigner.wigner_3j(wigner.AngularMomenta3j(l1, l2, l3, 0, 0, 0)))
            q = oracle.integrate_three_bessel_regularized(spec)
            diff = abs(cf - w3 * q.value)
            scale = max(1.0, abs(cf), abs(w3 * q.value))
            label = f"eq21 l=({l1},{l2},{l3}) k=({k1:g},{k2:g},{k3:g})"
            yield label, diff <= tol * scale, f"diff={diff:.3e}"


def _suite_wigner(max_l: int, tol: float):
    jmax = 5
    for j1 in range(jmax + 1):
        for j2 in range(jmax + 1):
            lo = abs(j1 - j2)
            hi = j1 + j2
            for j3 in range(lo, min(hi, jmax) + 1):
                for j3p in range(j3, min(hi, jmax) + 1):
                    for m3 in range(-min(j3, j3p), min(j3, j3p) + 1):
                        defect = wigner._orthogonality_defect(j1, j2, j3, m3, j3p, m3)
                        label = f"wigner orth j1={j1} j2={j2} j3={j3} j3'={j3p} m3={m3}"
                        yield label, defect == 0, f"defect={defect}"
    # 3j column symmetries, exact
    for j1 in range(5):
        for j2 in range(5):
            for j3 in range(abs(j1 - j2), min(j1 + j2, 4) + 1):
                for m1 in range(-j1, j1 + 1):
                    for m2 in range(-j2, j2 + 1):
                        m3 = -m1 - m2
                        if abs(m3) > j3:
                            continue
                        base = wigner.wigner_3j(wigner.AngularMomenta3j(j1, j2, j3, m1, m2, m3))
                        even = wigner.wigner_3j(wigner.AngularMomenta3j(j2, j3, j1, m2, m3, m1))
                        odd = wigner.wigner_3j(wigner.AngularMomenta3j(j2, j1, j3, m2, m1, m3))
                        phase = -1 if (j1 + j2 + j3) % 2 else 1
                        ok = even == base and odd.radicand == base.radicand and odd.sign == phase * base.sign
                        if not ok:
                            yield (
                                f"wigner 3j-symmetry ({j1},{j2},{j3};{m1},{m2},{m3})",
                                False,
                                "symmetry violated",
                            )
    yield "wigner 3j-symmetry sweep j<=4", True, "exact"


def _suite_qfunc(max_l: int, tol: float):
    inner = max(tol * 1e-2, 1e-12)
    for y in (1.01, 1.5, 2.0, 10.0, 100.0):
        for M in range(7):
            for L in range(11):
                q = oracle.integrate_q_definition(L, M, y, inner)
                target = specfun.paper_q_combination(L, M, y)
                lhs = math.factorial(M) / 2.0 * q.value
                rel = _rel_discrepancy(lhs, target)
                label = f"qfunc L={L} M={M} y={y:g}"
                yield label, rel <= tol, f"rel={rel:.3e}"


_SUITES = {
    "eq29": (_suite_eq29, 1e-8),
    "eq28": (lambda ml, t: _suite_two_bessel(ml, t, 1, "eq28"), 1e-7),
    "eq211": (lambda ml, t: _suite_two_bessel(ml, t, 2, "eq211"), 1e-7),
    "eq26": (_suite_eq26, 1e-7),
    "eq212": (_suite_eq212, 1e-6),
    "eq21": (_suite_eq21, 1e-3),
    "wigner": (_suite_wigner, 0.0),
    "qfunc": (_suite_qfunc, 1e-9),
}


def cmd_check(args: argparse.Namespace) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    passed = 0
    total = 0
    try:
        for name in names:
            runner, default_tol = _SUITES[name]
            tol = args.rel_tol if args.rel_tol is not None else default_tol
            if not args.quiet:
                print(f"suite {name} (max-l {args.max_l}, tol {tol:g})")
            for label, ok, detail in runner(args.max_l, tol):
                total += 1
                if ok:
                    passed += 1
                print(f"{label} {detail} {'PASS' if ok else 'FAIL'}")
    except oracle.NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    print(f"PASS {passed}/{total}")
    return EXIT_OK if passed == total else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselrad",
        description="Closed-form damped radial integrals of spherical Bessel "
        "functions, with an independent quadrature oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--quiet", action="store_true", help="suppress banners")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate one integral")
    p_eval.add_argument("--lambda1", type=int, required=True)
    p_eval.add_argument("--lambda2", type=int, required=True)
    p_eval.add_argument("--power", type=int, required=True, help="radial power n")
    p_eval.add_argument("--k1", type=float, required=True)
    p_eval.add_argument("--k2", type=float, required=True)
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--oracle", action="store_true", help="also run the quadrature oracle")
    p_eval.add_argument("--rel-tol", type=float, default=1e-8, dest="rel_tol")
    p_eval.add_argument("--product", action="store_true", help="also print the 3j-weighted product")
    p_eval.add_argument("--fallback-oracle", action="store_true", dest="fallback_oracle",
                        help="fall back to quadrature when no closed form applies")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", parents=[common], help="parameter sweep to CSV/JSON")
    p_table.add_argument("--sweep", action="append", metavar="NAME=START:STOP:COUNT",
                         help="sweep axis (repeatable; cartesian product)")
    for name in PARAM_NAMES:
        p_table.add_argument(f"--{name}", type=int if name in INT_PARAMS else float, default=None)
    p_table.add_argument("--out", required=True, help="output file path")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--oracle", action="store_true")
    p_table.add_argument("--rel-tol", type=float, default=1e-8, dest="rel_tol")
    p_table.add_argument("--fallback-oracle", action="store_true", dest="fallback_oracle")
    p_table.set_defaults(func=cmd_table)

    p_w3 = sub.add_parser("wigner3j", parents=[common], help="exact 3j symbol")
    p_w3.add_argument("--j", required=True, help="three momenta a,b,c")
    p_w3.add_argument("--m", required=True, help="three projections x,y,z")
    p_w3.set_defaults(func=cmd_wigner3j)

    p_w6 = sub.add_parser("wigner6j", parents=[common], help="exact 6j symbol")
    p_w6.add_argument("--j", required=True, help="six momenta a,b,c,d,e,f")
    p_w6.set_defaults(func=cmd_wigner6j)

    p_check = sub.add_parser("check", parents=[common], help="run an identity-check suite")
    p_check.add_argument("--suite", required=True, choices=list(_SUITES) + ["all"])
    p_check.add_argument("--max-l", type=int, default=4, dest="max_l",
                         help="angular-order bound for suites that honor it")
    p_check.add_argument("--rel-tol", type=float, default=None, dest="rel_tol",
                         help="override the suite's default tolerance")
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
