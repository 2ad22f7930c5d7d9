"""Bracketed scalar root finding."""
from __future__ import annotations

import math
from typing import Callable

from .errors import BracketFailure, NonConvergence


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def safeguarded_newton(
    fn: Callable[[float], tuple[int, float]],
    lo: float,
    hi: float,
    *,
    xtol: float,
    max_iter: int = 200,
) -> float:
    """Newton iteration kept inside a sign-change bracket.

    ``fn(x)`` returns the sign of f(x) and the Newton step -f(x)/f'(x).
    Steps that leave the bracket, or fail to halve it, fall back to bisection.
    """
    if not lo < hi:
        raise BracketFailure(f"empty bracket ({lo}, {hi})")
    s_lo = fn(lo)[0]
    s_hi = fn(hi)[0]
    if s_lo == 0:
        return lo
    if s_hi == 0:
        return hi
    if s_lo == s_hi:
        raise BracketFailure(f"no sign change on ({lo}, {hi})")
    x = 0.5 * (lo + hi)
    checkpoint = hi - lo
    for it in range(1, max_iter + 1):
        s, step = fn(x)
        if s == 0:
            return x
        if s == s_lo:
            lo = x
        else:
            hi = x
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)
        xn = x + step
        inside = math.isfinite(xn) and lo < xn < hi
        if inside and abs(step) <= 0.5 * xtol:
            return xn
        if it % 6 == 0:
            # Newton that fails to shrink the bracket fourfold gets a bisection
            if hi - lo > 0.25 * checkpoint:
                inside = False
            checkpoint = hi - lo
        x = xn if inside else 0.5 * (lo + hi)
    raise NonConvergence("safeguarded Newton did not converge")


def bisect(f: Callable[[float], float], lo: float, hi: float, *, xtol: float, max_iter: int = 400) -> tuple[float, float]:
    """Plain bisection; returns the final bracket (a, b) with f(a), f(b) of opposite sign."""
    fa = _sign(f(lo))
    fb = _sign(f(hi))
    if fa == 0:
        return lo, lo
    if fb == 0:
        return hi, hi
    if fa == fb:
        raise BracketFailure(f"no sign change on ({lo}, {hi})")
    for _ in range(max_iter):
        if hi - lo <= xtol:
            return lo, hi
        mid = 0.5 * (lo + hi)
        fm = _sign(f(mid))
        if fm == 0:
            return mid, mid
        if fm == fa:
            lo = mid
        else:
            hi = mid
    raise NonConvergence("bisection did not reach the requested width")
