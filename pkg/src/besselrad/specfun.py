"""Scalar special functions backing the radial-integral evaluators.

Spherical Bessel functions j_l(x), Legendre polynomials P_l(x) on [-1, 1],
Legendre functions of the second kind Q_L(y) on the real interval (1, inf),
and the derivative combination

    R(L, M, y) = (-1)^M d^M Q_L / dy^M
               = (M!/2) * integral_{-1}^{1} P_L(x) / (y - x)^(M+1) dx,

a strictly positive quantity for y > 1 which is what the closed-form sums
consume (`paper_q_combination`).  No complex intermediates are formed
anywhere; the real combination above absorbs the branch ambiguity of
associated Legendre functions on (1, inf).

Stability choices:

- j_l: upward recurrence for x >= l; for x < l the upward direction loses
  the minimal solution, so the ratio j_l/j_{l-1} is obtained from a Lentz
  continued fraction and propagated downward, normalized against j_0 or
  j_1 (whichever trial value is larger, since they have no common zeros).
- Q_L: the forward three-term recurrence in L is unstable on (1, inf)
  because the polynomial-type solution dominates.  Ratios Q_L/Q_{L-1} are
  seeded by a continued fraction at the top order, recursed downward, and
  normalized by the closed form Q_0(y) = atanh(1/y).  For y - 1 < 1e-6 the
  continued fraction stalls and a clustered quadrature of the defining
  integral takes over.
- d^M Q_L/dy^M: finite recurrence over the derivative order obtained by
  differentiating (y^2 - 1) Q_L' = L (y Q_L - Q_{L-1}) M times; no numeric
  differentiation.

All functions are pure; the only module state is read-only quadrature
nodes, so everything is safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

_L_MAX_BESSEL = 50
_L_MAX_P = 100
_L_MAX_Q = 60
_M_MAX_Q = 40

# fixed Gauss-Legendre rule for the near-unity Q fallback quadrature
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


# ----------------------------------------------------------------------
# spherical Bessel j_l


def _jl_series(l: int, x: np.ndarray) -> np.ndarray:
    """Ascending series; accurate to machine precision for x < ~1."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    lead = np.ones_like(x)
    dfac = 1.0
    for i in range(1, l + 1):
        dfac *= 2 * i + 1
        lead = lead * x
    lead = lead / dfac
    term = np.ones_like(x)
    out = np.ones_like(x)
    for m in range(1, 40):
        term = term * (-x2 / 2.0) / (m * (2 * l + 2 * m + 1))
        out = out + term
        if np.all(np.abs(term) <= 1e-18 * np.abs(out)):
            break
    return lead * out


def _jl_downward(l: int, x: np.ndarray) -> np.ndarray:
    """j_l for 0.5 <= x < l via continued-fraction ratio + downward recurrence."""
    n = x.size
    tiny = 1e-300
    f = np.full(n, tiny)
    c = f.copy()
    d = np.zeros(n)
    conv = np.zeros(n, dtype=bool)
    j = 0
    while not conv.all():
        if j > 20000:
            raise RuntimeError("continued fraction for j_l failed to converge")
        b = (2 * (l + j) + 1) / x
        a = 1.0 if j == 0 else -1.0
        d = b + a * d
        d[d == 0.0] = tiny
        c = b + a / c
        c[c == 0.0] = tiny
        d = 1.0 / d
        delta = c * d
        f = f * delta
        conv = conv | (np.abs(delta - 1.0) < 1e-16)
        j += 1
    # f = j_l / j_{l-1}; run the recurrence down to orders 1 and 0.  Trial
    # values grow like j_0/j_l, at most ~1e96 for l <= 50 and x >= 0.5, so
    # no rescaling is needed.
    jp = np.ones(n)        # trial j at current order + 1
    jc = 1.0 / f           # trial j at current order, starting at l - 1
    trial1 = jc.copy() if l - 1 == 1 else None
    for m in range(l - 1, 0, -1):
        jp, jc = jc, (2 * m + 1) / x * jc - jp
        if m - 1 == 1:
            trial1 = jc.copy()
    trial0 = jc
    j0 = np.sin(x) / x
    j1 = np.sin(x) / (x * x) - np.cos(x) / x
    # normalize against whichever trial is larger; j_0 and j_1 share no zeros
    use0 = np.abs(trial0) >= np.abs(trial1)
    scale = np.where(use0,
                     j0 / np.where(trial0 == 0.0, 1.0, trial0),
                     j1 / np.where(trial1 == 0.0, 1.0, trial1))
    return scale


def spherical_bessel_j_array(l: int, x: np.ndarray) -> np.ndarray:
    """Vectorized j_l over an array of non-negative arguments."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    zero = x == 0.0
    if zero.any():
        out[zero] = 1.0 if l == 0 else 0.0
    live = ~zero
    xs = x[live]
    small = xs < 0.5
    res = np.empty_like(xs)
    if small.any():
        res[small] = _jl_series(l, xs[small])
    big = ~small
    if big.any():
        xb = xs[big]
        if l == 0:
            res[big] = np.sin(xb) / xb
        elif l == 1:
            res[big] = np.sin(xb) / (xb * xb) - np.cos(xb) / xb
        else:
            r = np.empty_like(xb)
            up = xb >= l
            if up.any():
                xu = xb[up]
                jm = np.sin(xu) / xu
                jc = jm / xu - np.cos(xu) / xu
                for m in range(1, l):
                    jm, jc = jc, (2 * m + 1) / xu * jc - jm
                r[up] = jc
            dn = ~up
            if dn.any():
                r[dn] = _jl_downward(l, xb[dn])
            res[big] = r
    out[live] = res
    return out


def spherical_bessel_j(l: int, x: float) -> float:
    """Spherical Bessel function of the first kind, j_l(x) for x >= 0."""
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise ValueError(f"order must be a non-negative integer, got {l!r}")
    if l > _L_MAX_BESSEL:
        raise ValueError(f"order {l} exceeds the supported maximum {_L_MAX_BESSEL}")
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"argument must be finite and non-negative, got {x!r}")
    return float(spherical_bessel_j_array(l, np.array([x]))[0])


# ----------------------------------------------------------------------
# Legendre P_l


def legendre_p_array(l: int, x: np.ndarray) -> np.ndarray:
    """Vectorized P_l on [-1, 1] via the stable upward recurrence."""
    x = np.asarray(x, dtype=float)
    if l == 0:
        return np.ones_like(x)
    pm = np.ones_like(x)
    pc = x.copy()
    for m in range(1, l):
        pm, pc = pc, ((2 * m + 1) * x * pc - m * pm) / (m + 1)
    return pc


def legendre_p(l: int, x: float) -> float:
    """Legendre polynomial P_l(x) for |x| <= 1."""
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise ValueError(f"degree must be a non-negative integer, got {l!r}")
    if l > _L_MAX_P:
        raise ValueError(f"degree {l} exceeds the supported maximum {_L_MAX_P}")
    x = float(x)
    if not (-1.0 <= x <= 1.0):
        raise ValueError(f"argument must lie in [-1, 1], got {x!r}")
    return float(legendre_p_array(l, np.array([x]))[0])


# ----------------------------------------------------------------------
# Legendre Q_L on (1, inf)


def _q_ratio_cf(top: int, y: float) -> float:
    """Continued fraction for Q_top(y)/Q_{top-1}(y) (minimal solution)."""
    tiny = 1e-300
    f = tiny
    c = tiny
    d = 0.0
    j = 1
    while j < 200000:
        a = float(top) if j == 1 else -float((top + j - 1) ** 2)
        b = (2 * (top + j) - 1) * y
        d = b + a * d
        if d == 0.0:
            d = tiny
        c = b + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f
        j += 1
    raise RuntimeError(f"Q ratio continued fraction stalled at y={y!r}")


def _q_quadrature(lmax: int, y: float) -> np.ndarray:
    """Q_0..Q_lmax by quadrature of the defining integral, for y -> 1+.

    The substitution x = 1 - (y-1)(e^u - 1) turns (1/2) int P_L(x)/(y-x) dx
    into (1/2) int_0^U P_L(x(u)) du with U = log((y+1)/(y-1)); the integrand
    is bounded by 1 and smooth, so composite Gauss panels resolve it.
    """
    u_top = math.log((y + 1.0) / (y - 1.0))
    n_panels = 8 * (lmax + 2)
    edges = np.linspace(0.0, u_top, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    u = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    x = 1.0 - (y - 1.0) * np.expm1(u)
    np.clip(x, -1.0, 1.0, out=x)
    out = np.empty(lmax + 1)
    pm = np.ones_like(x)
    out[0] = 0.5 * float(w @ pm)
    if lmax >= 1:
        pc = x.copy()
        out[1] = 0.5 * float(w @ pc)
        for m in range(1, lmax):
            pm, pc = pc, ((2 * m + 1) * x * pc - m * pm) / (m + 1)
            out[m + 1] = 0.5 * float(w @ pc)
    return out


def legendre_q_all(lmax: int, y: float) -> np.ndarray:
    """Q_0(y) .. Q_lmax(y) as an array, y > 1."""
    if y - 1.0 < 1e-6:
        return _q_quadrature(lmax, y)
    q0 = math.atanh(1.0 / y)
    out = np.empty(lmax + 1)
    out[0] = q0
    if lmax == 0:
        return out
    ratios = np.empty(lmax + 1)
    r = _q_ratio_cf(lmax + 1, y)
    for l in range(lmax, 0, -1):
        r = l / ((2 * l + 1) * y - (l + 1) * r)
        ratios[l] = r
    with np.errstate(under="ignore"):
        for l in range(1, lmax + 1):
            out[l] = out[l - 1] * ratios[l]
    return out


def legendre_q(L: int, y: float) -> float:
    """Legendre function of the second kind Q_L(y) on the real branch y > 1."""
    if not isinstance(L, (int, np.integer)) or L < 0:
        raise ValueError(f"degree must be a non-negative integer, got {L!r}")
    if L > _L_MAX_Q:
        raise ValueError(f"degree {L} exceeds the supported maximum {_L_MAX_Q}")
    y = float(y)
    if not (y > 1.0):
        raise ValueError(f"argument must satisfy y > 1, got {y!r}")
    return float(legendre_q_all(L, y)[L])


def paper_q_combination_all(lmax: int, M: int, y: float) -> np.ndarray:
    """R(l, M, y) = (-1)^M d^M Q_l/dy^M for l = 0..lmax, as an array."""
    q = legendre_q_all(lmax, y)
    if M == 0:
        return q
    ym1 = y * y - 1.0
    d_prev = q                                  # order m - 1
    d_curr = np.empty(lmax + 1)                 # order m
    d_curr[0] = -1.0 / ym1
    for l in range(1, lmax + 1):
        d_curr[l] = l * (y * d_prev[l] - d_prev[l - 1]) / ym1
    for m in range(1, M):
        d_next = np.empty(lmax + 1)
        d_next[0] = (-2 * m * y * d_curr[0] - m * (m - 1) * d_prev[0]) / ym1
        for l in range(1, lmax + 1):
            d_next[l] = (
                l * (y * d_curr[l] + m * d_prev[l] - d_curr[l - 1])
                - 2 * m * y * d_curr[l]
                - m * (m - 1) * d_prev[l]
            ) / ym1
        d_prev, d_curr = d_curr, d_next
    return -d_curr if M % 2 else d_curr.copy()


def paper_q_combination(L: int, M: int, y: float) -> float:
    """The positive real combination (-1)^M d^M Q_L/dy^M.

    Equals (M!/2) * integral_{-1}^{1} P_L(x)/(y - x)^(M+1) dx; for M = 0 it
    reduces to Q_L(y).
    """
    if not isinstance(L, (int, np.integer)) or L < 0:
        raise ValueError(f"degree must be a non-negative integer, got {L!r}")
    if L > _L_MAX_Q:
        raise ValueError(f"degree {L} exceeds the supported maximum {_L_MAX_Q}")
    if not isinstance(M, (int, np.integer)) or M < 0:
        raise ValueError(f"order must be a non-negative integer, got {M!r}")
    if M > _M_MAX_Q:
        raise ValueError(f"order {M} exceeds the supported maximum {_M_MAX_Q}")
    y = float(y)
    if not (y > 1.0):
        raise ValueError(f"argument must satisfy y > 1, got {y!r}")
    return float(paper_q_combination_all(L, M, y)[L])


# ----------------------------------------------------------------------
# extended-precision twins of the Q machinery
#
# The Wigner-weighted double sums cancel catastrophically as y -> 1 with a
# high derivative order: individual terms can exceed the result by many
# orders of magnitude.  When a caller detects that, it re-evaluates the
# combination values (and the sum) in 40-digit decimal arithmetic.  The
# recurrences are identical; only the scalar type changes.


def _q_ratio_cf_dec(top: int, y: Decimal, tol: Decimal) -> Decimal:
    tiny = Decimal("1e-300")
    f = tiny
    c = tiny
    d = Decimal(0)
    one = Decimal(1)
    j = 1
    while j < 200000:
        a = Decimal(top) if j == 1 else Decimal(-((top + j - 1) ** 2))
        b = (2 * (top + j) - 1) * y
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = one / d
        delta = c * d
        f *= delta
        if abs(delta - one) < tol:
            return f
        j += 1
    raise RuntimeError(f"decimal Q ratio continued fraction stalled at y={y}")


def paper_q_combination_all_dec(lmax: int, M: int, y: float, prec: int = 40) -> list[Decimal]:
    """R(l, M, y) for l = 0..lmax in `prec`-digit decimal arithmetic.

    Requires y - 1 >= 1e-6 (the continued-fraction regime); callers fall
    back to the float path closer to 1.
    """
    if not y - 1.0 >= 1e-6:
        raise ValueError(f"decimal path needs y - 1 >= 1e-6, got y={y!r}")
    with localcontext() as ctx:
        ctx.prec = prec
        y_d = Decimal(y)
        tol = Decimal(10) ** (-(prec - 4))
        one = Decimal(1)
        q = [Decimal(0)] * (lmax + 1)
        q[0] = ((y_d + 1) / (y_d - 1)).ln() / 2
        if lmax >= 1:
            r = _q_ratio_cf_dec(lmax + 1, y_d, tol)
            ratios = [Decimal(0)] * (lmax + 1)
            for l in range(lmax, 0, -1):
                r = l / ((2 * l + 1) * y_d - (l + 1) * r)
                ratios[l] = r
            for l in range(1, lmax + 1):
                q[l] = q[l - 1] * ratios[l]
        if M == 0:
            return q
        ym1 = y_d * y_d - one
        d_prev = q
        d_curr = [Decimal(0)] * (lmax + 1)
        d_curr[0] = -one / ym1
        for l in range(1, lmax + 1):
            d_curr[l] = l * (y_d * d_prev[l] - d_prev[l - 1]) / ym1
        for m in range(1, M):
            d_next = [Decimal(0)] * (lmax + 1)
            d_next[0] = (-2 * m * y_d * d_curr[0] - m * (m - 1) * d_prev[0]) / ym1
            for l in range(1, lmax + 1):
                d_next[l] = (
                    l * (y_d * d_curr[l] + m * d_prev[l] - d_curr[l - 1])
                    - 2 * m * y_d * d_curr[l]
                    - m * (m - 1) * d_prev[l]
                ) / ym1
            d_prev, d_curr = d_curr, d_next
        if M % 2:
            return [-v for v in d_curr]
        return d_curr


# ----------------------------------------------------------------------
# combinatorics


def binomial_sqrt(n: int, k: int) -> float:
    """sqrt(C(n, k)) from the exact integer binomial coefficient."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    if k > n:
        raise ValueError(f"k must not exceed n, got k={k}, n={n}")
    if n > 200:
        raise ValueError(f"n exceeds the supported maximum 200, got {n}")
    return math.sqrt(math.comb(int(n), int(k)))


# ----------------------------------------------------------------------
# evaluation records


@dataclass(frozen=True)
class QEval:
    """A combination value R(L, M, y) together with the point it was taken at."""

    L: int
    M: int
    y: float
    value: float

    @classmethod
    def evaluate(cls, L: int, M: int, y: float) -> "QEval":
        return cls(L=L, M=M, y=float(y), value=paper_q_combination(L, M, y))


@dataclass(frozen=True)
class BesselEval:
    """A spherical Bessel value j_l(x) together with its evaluation point."""

    l: int
    x: float
    value: float

    @classmethod
    def evaluate(cls, l: int, x: float) -> "BesselEval":
        return cls(l=l, x=float(x), value=spherical_bessel_j(l, x))
