"""Closed-form evaluation of damped radial integrals over spherical Bessel
functions.

The central objects are the 3j-weighted products

    P1 = (l1 l2 l3; 0 0 0) * integral_0^inf r^(l3+1) e^(-a r) j_l1(k1 r) j_l2(k2 r) dr
    P2 = (l1 l2 l3; 0 0 0) * integral_0^inf r^(l3+2) e^(-a r) j_l1(k1 r) j_l2(k2 r) dr

which reduce to finite double sums of Wigner 3j/6j symbols against the
positive combination R(l, M, y) = (-1)^M d^M Q_l/dy^M of Legendre functions
of the second kind, evaluated at

    y = (k1^2 + k2^2 + a^2) / (2 k1 k2) > 1.

With the real combination R the phase prefactor i^(l1+l2-l3) collapses to
the sign (-1)^((l1+l2-l3)/2): nonzero terms force l1+l2+l3 (and hence
l1+l2-l3) even, so no complex intermediate is ever formed.

The three-Bessel kernel product (same 3j weight, integrand
r^2 j_l1(k1 r) j_l2(k2 r) j_l3(k3 r)) has an analogous finite sum against
Legendre polynomials of a wavenumber triangle parameter; it vanishes
outside the wavenumber triangle via the step factor beta.

`bare_integral` recovers the plain integral from the product by dividing
out the exact 3j symbol; when the parity-selected l3 violates the triangle
rule there is no closed form and `FormulaInapplicable` is raised; that is
a genuine coverage boundary, not a failure.

Everything here is a pure function; parameter sweeps may call these
concurrently without restriction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from functools import lru_cache
from typing import Optional

from . import specfun
from .wigner import AngularMomenta3j, threej_000_nonzero, wigner_3j, wigner_6j

_LAMBDA_MAX = 20


class Method(Enum):
    """Which evaluation route produced a value."""

    EQ_2_8 = "EQ_2_8"      # power l3+1 double sum
    EQ_2_9 = "EQ_2_9"      # equal-order special case, power 1
    EQ_2_11 = "EQ_2_11"    # power l3+2 double sum
    EQ_2_1 = "EQ_2_1"      # three-Bessel kernel sum
    EQ_2_4 = "EQ_2_4"      # single-Bessel transform, power l3+1
    EQ_2_10 = "EQ_2_10"    # single-Bessel transform, power l3+2


class FormulaInapplicable(Exception):
    """No closed form exists: the parity-selected l3 violates the triangle rule."""


@dataclass(frozen=True)
class IntegralSpec:
    """Problem statement for integral_0^inf r^n e^(-alpha r) j_l1(k1 r) j_l2(k2 r) dr."""

    lambda1: int
    lambda2: int
    k1: float
    k2: float
    alpha: float
    n: int

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "n"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
        for name in ("k1", "k2", "alpha"):
            v = float(getattr(self, name))
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def y(self) -> float:
        return y_param(self.k1, self.k2, self.alpha)

    @property
    def condition(self) -> float:
        return condition_number(self.k1, self.k2, self.alpha)


@dataclass(frozen=True)
class ThreeBesselSpec:
    """Problem statement for the triple product r^2 j_l1(k1 r) j_l2(k2 r) j_l3(k3 r)."""

    lambda1: int
    lambda2: int
    lambda3: int
    k1: float
    k2: float
    k3: float

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "lambda3"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
            if v > _LAMBDA_MAX:
                raise ValueError(f"{name}={v} exceeds the supported maximum {_LAMBDA_MAX}")
        for name in ("k1", "k2", "k3"):
            v = float(getattr(self, name))
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def delta(self) -> float:
        return delta_param(self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class EvalResult:
    """A closed-form value with its route and singularity-proximity indicator."""

    value: float
    method: Method
    condition: float
    oracle_value: Optional[float] = None
    oracle_error: Optional[float] = None


def y_param(k1: float, k2: float, alpha: float) -> float:
    """y = (k1^2 + k2^2 + alpha^2) / (2 k1 k2); strictly > 1 for alpha > 0."""
    for name, v in (("k1", k1), ("k2", k2), ("alpha", alpha)):
        if not (v > 0.0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")
    return (k1 * k1 + k2 * k2 + alpha * alpha) / (2.0 * k1 * k2)


def condition_number(k1: float, k2: float, alpha: float) -> float:
    """Proximity to the k1 = k2, alpha -> 0 singularity: 1/(y - 1).

    Evaluated as 2 k1 k2 / ((k1 - k2)^2 + alpha^2), which is exact up to
    rounding; forming y first and subtracting 1 would lose digits.
    """
    for name, v in (("k1", k1), ("k2", k2), ("alpha", alpha)):
        if not (v > 0.0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")
    return 2.0 * k1 * k2 / ((k1 - k2) ** 2 + alpha**2)


def delta_param(k1: float, k2: float, k3: float) -> float:
    """Triangle parameter (k1^2 + k2^2 - k3^2) / (2 k1 k2)."""
    for name, v in (("k1", k1), ("k2", k2), ("k3", k3)):
        if not (v > 0.0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")
    return (k1 * k1 + k2 * k2 - k3 * k3) / (2.0 * k1 * k2)


def beta_step(delta: float) -> float:
    """Wavenumber-triangle step: 1 inside |delta| < 1, 0 outside, 1/2 on the edge.

    The edge value 1/2 is fixed by the damped sine-product integral, whose
    regularized limit on the triangle boundary is half the interior value.
    """
    if not math.isfinite(delta):
        raise ValueError(f"delta must be finite, got {delta!r}")
    ad = abs(delta)
    if ad < 1.0:
        return 1.0
    if ad > 1.0:
        return 0.0
    return 0.5


def laplace_single_bessel(lambda3: int, alpha: float, k3: float, offset: int) -> float:
    """Damped transform of a single spherical Bessel function, in closed form.

    offset 1:  integral r^(l3+1) e^(-a r) j_l3(k r) dr = (2k)^l3 l3! / (k^2+a^2)^(l3+1)
    offset 2:  integral r^(l3+2) e^(-a r) j_l3(k r) dr = 2a (2k)^l3 (l3+1)! / (k^2+a^2)^(l3+2)
    """
    if not isinstance(lambda3, int) or lambda3 < 0 or lambda3 > 50:
        raise ValueError(f"lambda3 must be an integer in [0, 50], got {lambda3!r}")
    for name, v in (("alpha", alpha), ("k3", k3)):
        if not (v > 0.0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")
    if offset == 1:
        return (2.0 * k3) ** lambda3 * math.factorial(lambda3) / (k3 * k3 + alpha * alpha) ** (lambda3 + 1)
    if offset == 2:
        return (
            2.0 * alpha * (2.0 * k3) ** lambda3 * math.factorial(lambda3 + 1)
            / (k3 * k3 + alpha * alpha) ** (lambda3 + 2)
        )
    raise ValueError(f"offset must be 1 or 2, got {offset!r}")


def summation_bounds(lambda1: int, lambda2: int, lambda3: int, script_l: int) -> tuple[int, int]:
    """Range of the inner sum index forced by the 3j selection rules.

    Empty ranges (l_min > l_max) are legitimate and contribute nothing.
    """
    if not 0 <= script_l <= lambda3:
        raise ValueError(f"script_l must lie in [0, lambda3], got {script_l!r}")
    l_min = max(abs(lambda1 - (lambda3 - script_l)), abs(lambda2 - script_l))
    l_max = min(lambda1 + lambda3 - script_l, lambda2 + script_l)
    return l_min, l_max


def _phase(l1: int, l2: int, l3: int) -> float:
    """Real evaluation of i^(l1+l2-l3); callers guarantee an even exponent."""
    return -1.0 if ((l1 + l2 - l3) // 2) % 2 else 1.0


@lru_cache(maxsize=None)
def _w3j000(a: int, b: int, c: int) -> float:
    return float(wigner_3j(AngularMomenta3j(a, b, c, 0, 0, 0)))


@lru_cache(maxsize=None)
def _w6j(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> float:
    return float(wigner_6j(j1, j2, j3, j4, j5, j6))


def _validate_lambdas(*lambdas: int) -> None:
    for v in lambdas:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"angular order must be a non-negative integer, got {v!r}")
        if v > _LAMBDA_MAX:
            raise ValueError(f"angular order {v} exceeds the supported maximum {_LAMBDA_MAX}")


def _coupling_terms(l1: int, l2: int, l3: int):
    """Yield (script_l, l, sign, radicand) for every nonzero 3j*3j*6j product.

    The parity gate runs before any symbol is evaluated, so the cost is
    dominated by the nonzero terms.  sign * sqrt(radicand) is exact.
    """
    for scr in range(l3 + 1):
        l_lo, l_hi = summation_bounds(l1, l2, l3, scr)
        for l in range(l_lo, l_hi + 1):
            if not threej_000_nonzero(l1, l3 - scr, l):
                continue
            if not threej_000_nonzero(l2, scr, l):
                continue
            w1 = wigner_3j(AngularMomenta3j(l1, l3 - scr, l, 0, 0, 0))
            w2 = wigner_3j(AngularMomenta3j(l2, scr, l, 0, 0, 0))
            w6 = wigner_6j(l1, l2, l3, scr, l3 - scr, l)
            sign = w1.sign * w2.sign * w6.sign
            if sign == 0:
                continue
            yield scr, l, sign, w1.radicand * w2.radicand * w6.radicand


def two_bessel_product(
    lambda1: int,
    lambda2: int,
    lambda3: int,
    k1: float,
    k2: float,
    alpha: float,
    offset: int,
) -> EvalResult:
    """3j-weighted product for radial power lambda3 + offset, offset in {1, 2}.

    Returns exact 0 (without touching any Q function) whenever
    lambda1 + lambda2 + lambda3 is odd, since the 3j weight then vanishes.
    """
    _validate_lambdas(lambda1, lambda2, lambda3)
    if offset not in (1, 2):
        raise ValueError(f"offset must be 1 or 2, got {offset!r}")
    y = y_param(k1, k2, alpha)
    condition = condition_number(k1, k2, alpha)
    method = Method.EQ_2_8 if offset == 1 else Method.EQ_2_11
    if (lambda1 + lambda2 + lambda3) % 2 == 1:
        return EvalResult(0.0, method, condition)

    m_order = lambda3 + offset - 1
    terms = list(_coupling_terms(lambda1, lambda2, lambda3))
    if not terms:
        return EvalResult(0.0, method, condition)
    l_need = max(t[1] for t in terms)
    rvals = specfun.paper_q_combination_all(l_need, m_order, y)

    contribs = [
        specfun.binomial_sqrt(2 * lambda3, 2 * scr)
        * (k2 / k1) ** scr
        * (2 * l + 1)
        * sign
        * math.sqrt(float(rad))
        * rvals[l]
        for scr, l, sign, rad in terms
    ]
    total = math.fsum(contribs)
    # the sum cancels catastrophically as y -> 1 with high lambda3; redo it
    # in 40-digit decimals when more than ~2 digits cancel
    peak = max(abs(c) for c in contribs)
    if peak > 100.0 * abs(total) and y - 1.0 >= 1e-6:
        total = _decimal_weighted_sum(terms, lambda3, m_order, k1, k2, y, l_need)

    phase = _phase(lambda1, lambda2, lambda3)
    if offset == 1:
        pref = phase * math.sqrt(2 * lambda3 + 1) / (2.0 * k1 * k2 ** (lambda3 + 1))
    else:
        pref = phase * alpha * math.sqrt(2 * lambda3 + 1) / (2.0 * k1 * k1 * k2 ** (lambda3 + 2))
    return EvalResult(pref * total, method, condition)


def _decimal_weighted_sum(
    terms, lambda3: int, m_order: int, k1: float, k2: float, y: float, l_need: int
) -> float:
    rd = specfun.paper_q_combination_all_dec(l_need, m_order, y, prec=40)
    with localcontext() as ctx:
        ctx.prec = 40
        k_ratio = Decimal(k2) / Decimal(k1)
        total = Decimal(0)
        for scr, l, sign, rad in terms:
            binom = Decimal(math.comb(2 * lambda3, 2 * scr)).sqrt()
            w = (Decimal(rad.numerator) / Decimal(rad.denominator)).sqrt()
            total += binom * k_ratio**scr * (2 * l + 1) * sign * w * rd[l]
        return float(total)


def two_bessel_equal_order(L: int, k1: float, k2: float, alpha: float) -> EvalResult:
    """Equal-order special case: integral r e^(-a r) j_L(k1 r) j_L(k2 r) dr = Q_L(y)/(2 k1 k2)."""
    _validate_lambdas(L)
    y = y_param(k1, k2, alpha)
    value = specfun.legendre_q(L, y) / (2.0 * k1 * k2)
    return EvalResult(value, Method.EQ_2_9, condition_number(k1, k2, alpha))


def three_bessel_product(spec: ThreeBesselSpec) -> float:
    """3j-weighted product of the triple-Bessel integral, in closed form.

    Zero whenever the wavenumbers violate their triangle (beta = 0) or the
    angular parity kills the 3j weight.
    """
    l1, l2, l3 = spec.lambda1, spec.lambda2, spec.lambda3
    if (l1 + l2 + l3) % 2 == 1:
        return 0.0
    delta = spec.delta
    beta = beta_step(delta)
    if beta == 0.0:
        return 0.0
    k1, k2, k3 = spec.k1, spec.k2, spec.k3
    total = math.fsum(
        specfun.binomial_sqrt(2 * l3, 2 * scr)
        * (k2 / k1) ** scr
        * (2 * l + 1)
        * sign
        * math.sqrt(float(rad))
        * specfun.legendre_p(l, delta)
        for scr, l, sign, rad in _coupling_terms(l1, l2, l3)
    )
    pref = (
        math.pi * beta / (4.0 * k1 * k2 * k3)
        * _phase(l1, l2, l3)
        * math.sqrt(2 * l3 + 1)
        * (k1 / k3) ** l3
    )
    return pref * total


def bare_integral(n: int, lambda1: int, lambda2: int, k1: float, k2: float, alpha: float) -> EvalResult:
    """integral_0^inf r^n e^(-alpha r) j_l1(k1 r) j_l2(k2 r) dr, n >= 1.

    Exactly one of l3 = n-1 (power route l3+1) or l3 = n-2 (power route
    l3+2, needs n >= 2) has even total parity with lambda1 + lambda2; the
    chosen l3 must additionally satisfy the triangle rule, otherwise the
    3j weight vanishes, the product carries no information about the bare
    integral, and FormulaInapplicable is raised.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    _validate_lambdas(lambda1, lambda2)
    if (lambda1 + lambda2 + n - 1) % 2 == 0:
        lambda3, offset = n - 1, 1
    elif n >= 2:
        lambda3, offset = n - 2, 2
    else:
        raise FormulaInapplicable(
            f"no closed form: n={n} admits no parity-compatible coupling order"
        )
    if not (abs(lambda1 - lambda2) <= lambda3 <= lambda1 + lambda2):
        raise FormulaInapplicable(
            f"no closed form: parity selects l3={lambda3}, which violates the "
            f"triangle rule for lambda1={lambda1}, lambda2={lambda2}"
        )
    if offset == 1 and lambda3 == 0:
        # triangle forces lambda1 == lambda2 here; use the direct Q_L form
        return two_bessel_equal_order(lambda1, k1, k2, alpha)
    product = two_bessel_product(lambda1, lambda2, lambda3, k1, k2, alpha, offset)
    w = _w3j000(lambda1, lambda2, lambda3)
    return EvalResult(product.value / w, product.method, product.condition)
