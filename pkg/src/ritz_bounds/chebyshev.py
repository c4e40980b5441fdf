"""Chebyshev polynomials of the first kind and their growth estimates.

T_n(x) = cos(n arccos x) on [-1, 1] and cosh(n arccosh x) outside; the bounds
machinery only ever needs log T_n(x) for x >= 1, which is computed without
overflow (the convergence curves span ~40 orders of magnitude).
"""

from __future__ import annotations

import numpy as np

__all__ = ["cheb_eval", "cheb_log_growth", "cheb_log_abs"]

# cosh overflows to inf just past exp's limit; stay under it explicitly so we
# return a clean inf instead of tripping a numpy overflow warning.
_COSH_OVERFLOW = 709.0


def cheb_eval(n: int, x: float) -> float:
    """T_n(x) via the trig form for |x| <= 1, hyperbolic form for |x| > 1.

    May return +/-inf when n*arccosh|x| is huge; callers treat that as an
    infinitely strong bound denominator.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("argument must be finite")
    ax = abs(x)
    if ax <= 1.0:
        return float(np.cos(n * np.arccos(x)))
    # parity: T_n(-x) = (-1)^n T_n(x)
    sign = -1.0 if (x < 0.0 and n % 2 == 1) else 1.0
    t = n * np.arccosh(ax)
    if t > _COSH_OVERFLOW:
        return sign * np.inf
    return sign * float(np.cosh(t))


def cheb_log_growth(n: int, x: float) -> float:
    """n * ln(x + sqrt(x^2 - 1)) = n * arccosh(x), the growth exponent of T_n.

    T_n(x) >= (1/2) e^{cheb_log_growth(n, x)} for x >= 1.  x may be +inf (the
    degenerate-interval limit); the degree-0 exponent is 0 regardless.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = float(x)
    if not (x >= 1.0):
        raise ValueError(f"growth exponent needs x >= 1, got {x}")
    if n == 0:
        return 0.0
    return float(n * np.arccosh(x))


def cheb_log_abs(n: int, x: float) -> float:
    """log T_n(x) for x >= 1, exact in log space.

    Uses cosh(t) = e^t (1 + e^{-2t}) / 2 with t = n*arccosh(x), so the value is
    exact (to roundoff) even when T_n(x) itself would overflow.
    """
    t = cheb_log_growth(n, x)
    return float(t + np.log1p(np.exp(-2.0 * t)) - np.log(2.0))
