"""Bessel functions J_n, I_n, Y_0 with propagated error estimates.

Values come from Miller's backward recurrence.  J is normalised with
J_0 + 2 sum J_2k = 1 and I with I_0 + 2 sum I_k = e^x, so both are accurate
in the relative sense wherever the sequence decays in the backward direction.
Log-scaled entry points never overflow or underflow.  Power series are kept
as an independent second route and as the reference near x = 0.

The truncation error is estimated by repeating the recurrence from a higher
starting order; a rounding floor proportional to the number of steps is added
on top.  These are careful floating estimates, not interval enclosures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from .config import DEFAULT_ACCURACY, EXTENDED_DPS, Accuracy
from .errors import BracketFailure, DomainError, NonConvergence, Overflow
from .roots import safeguarded_newton

EPS = float(np.finfo(float).eps)
EULER_GAMMA = 0.57721566490153286061
AIRY_A1 = -2.338107410459767
LANG_WONG_BETA = (-0.060804, -0.000263)
MAX_ORDER = 10**6

_BIG = 1e250
_LOG_BIG = math.log(_BIG)
_LOG_MAX_FLOAT = 709.0


@dataclass(frozen=True)
class BesselEval:
    """A special-function value with an absolute error estimate."""

    value: float
    err: float


@dataclass(frozen=True)
class LogBesselEval:
    """``sign * exp(log_abs)`` with an absolute error estimate on ``log_abs``."""

    log_abs: float
    sign: int
    err: float

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs) if self.log_abs < _LOG_MAX_FLOAT else self.sign * math.inf


class ModulusPhase(NamedTuple):
    m0: float
    theta0: float
    m0_err: float
    theta0_err: float


class _Kernel(NamedTuple):
    log_abs: float
    sign: int
    ratio: float  # f_{n+1} / f_n


# ---------------------------------------------------------------------------
# argument checks and starting orders

def _check_order(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n > MAX_ORDER:
        raise DomainError(f"order {n} exceeds {MAX_ORDER}")
    return n


def _check_arg(x) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"argument must be finite and nonnegative, got {x!r}")
    return x


def start_order_j(n: int, x: float) -> int:
    """Starting order for the J recurrence; J_m(x) is negligible beyond it."""
    big = max(float(n), x)
    return int(math.ceil(big + 10.0 * big ** (1.0 / 3.0) + 20.0))


def start_order_i(n: int, x: float) -> int:
    """Starting order for the I recurrence.

    I_k(x)/I_0(x) behaves like exp(-k^2/(2x)) for k << x, so 9 sqrt(x) extra
    orders push the neglected normalisation terms below e^-40.
    """
    return int(math.ceil(n + 9.0 * math.sqrt(x) + 30.0))


def _second_order(m: int) -> int:
    return m + max(16, m // 4)


def _budget(m: int, acc: Accuracy) -> None:
    if m > acc.max_terms:
        raise NonConvergence(f"recurrence needs {m} terms, budget is {acc.max_terms}")


# ---------------------------------------------------------------------------
# scalar kernels

def _j_kernel(n: int, x: float, m: int) -> _Kernel:
    """Backward recurrence for J at one argument, started at order ``m``."""
    c = 2.0 / x
    f_hi = 0.0
    f = 1.0
    s = 0.0
    cap = 0.0
    cap_log = 0.0
    ratio = 0.0
    captured = False
    for k in range(m, 0, -1):
        if k % 2 == 0:
            s += 2.0 * f
        f_lo = k * c * f - f_hi
        f_hi = f
        f = f_lo
        if k - 1 == n:
            cap = f
            ratio = f_hi / f if f != 0.0 else math.copysign(math.inf, f_hi)
            captured = True
        if abs(f) > _BIG:
            f /= _BIG
            f_hi /= _BIG
            s /= _BIG
            if captured:
                cap_log += _LOG_BIG
    s += f
    if cap == 0.0:
        return _Kernel(-math.inf, 0, ratio)
    sign = (1 if cap > 0 else -1) * (1 if s > 0 else -1)
    return _Kernel(math.log(abs(cap)) - math.log(abs(s)) - cap_log, sign, ratio)


def _i_kernel(n: int, x: float, m: int) -> _Kernel:
    """Backward recurrence for I at one argument; the log includes the e^x factor."""
    c = 2.0 / x
    f_hi = 0.0
    f = 1.0
    s = 0.0
    cap = 0.0
    cap_log = 0.0
    ratio = 0.0
    captured = False
    for k in range(m, 0, -1):
        s += 2.0 * f
        f_lo = k * c * f + f_hi
        f_hi = f
        f = f_lo
        if k - 1 == n:
            cap = f
            ratio = f_hi / f
            captured = True
        if f > _BIG:
            f /= _BIG
            f_hi /= _BIG
            s /= _BIG
            if captured:
                cap_log += _LOG_BIG
    s += f
    return _Kernel(x + math.log(cap) - math.log(s) - cap_log, 1, ratio)


# ---------------------------------------------------------------------------
# vectorised kernels (fixed order, array of arguments)

def _rescale_stride(m: int, xmin: float) -> int:
    growth = math.log10(2.0 * m / xmin + 2.0)
    return max(1, int(40.0 / growth))


def _j_kernel_array(n: int, x: np.ndarray, m: int):
    c = 2.0 / x
    f_hi = np.zeros_like(x)
    f = np.ones_like(x)
    s = np.zeros_like(x)
    cap = np.zeros_like(x)
    cap_log = np.zeros_like(x)
    stride = _rescale_stride(m, float(x.min()))
    captured = False
    for k in range(m, 0, -1):
        if k % 2 == 0:
            s += 2.0 * f
        f_lo = (k * c) * f - f_hi
        f_hi = f
        f = f_lo
        if k - 1 == n:
            cap = f.copy()
            captured = True
        if k % stride == 0 or k == 1:
            big = np.abs(f) > _BIG
            if big.any():
                scale = np.where(big, 1.0 / _BIG, 1.0)
                f = f * scale
                f_hi = f_hi * scale
                s = s * scale
                if captured:
                    cap_log += np.where(big, _LOG_BIG, 0.0)
    s = s + f
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(cap)) - np.log(np.abs(s)) - cap_log
    sign = np.sign(cap) * np.sign(s)
    return log_abs, sign.astype(int)


def _i_kernel_array(n: int, x: np.ndarray, m: int):
    c = 2.0 / x
    f_hi = np.zeros_like(x)
    f = np.ones_like(x)
    s = np.zeros_like(x)
    cap = np.zeros_like(x)
    cap_log = np.zeros_like(x)
    stride = _rescale_stride(m, float(x.min()))
    captured = False
    for k in range(m, 0, -1):
        s += 2.0 * f
        f_lo = (k * c) * f + f_hi
        f_hi = f
        f = f_lo
        if k - 1 == n:
            cap = f.copy()
            captured = True
        if k % stride == 0 or k == 1:
            big = f > _BIG
            if big.any():
                scale = np.where(big, 1.0 / _BIG, 1.0)
                f = f * scale
                f_hi = f_hi * scale
                s = s * scale
                if captured:
                    cap_log += np.where(big, _LOG_BIG, 0.0)
    s = s + f
    return x + np.log(cap) - np.log(s) - cap_log


# ---------------------------------------------------------------------------
# error floors

def _oscillation_amplitude(n: int, x: float) -> float:
    """Size of J near x when x is past the turning point, else 0."""
    # below the turning region the recurrence is relatively accurate
    if x < max(n - 3.0 * n ** (1.0 / 3.0), 0.5 * n) or x == 0.0:
        return 0.0
    return min(1.0, max(math.sqrt(2.0 / (math.pi * x)), 0.7 / max(x, 1.0) ** (1.0 / 3.0)))


def _j_log_eval(n: int, x: float, acc: Accuracy) -> tuple[_Kernel, float, float]:
    """Two recurrences; returns kernel, absolute value error, log error."""
    m1 = start_order_j(n, x)
    m2 = _second_order(m1)
    _budget(m2, acc)
    a = _j_kernel(n, x, m1)
    b = _j_kernel(n, x, m2)
    amp = _oscillation_amplitude(n, x)
    if b.sign == 0:
        return b, 4.0 * EPS * m2 * amp, math.inf
    v = b.sign * math.exp(b.log_abs)
    va = a.sign * math.exp(a.log_abs) if a.sign != 0 else 0.0
    abs_err = abs(v - va) + 4.0 * EPS * m2 * (abs(v) + amp)
    rel_amp = amp * math.exp(min(-b.log_abs, 700.0)) if amp else 0.0
    if a.sign == b.sign:
        log_err = abs(a.log_abs - b.log_abs) + 4.0 * EPS * m2 * (1.0 + rel_amp)
    else:
        log_err = math.inf
    return b, abs_err, log_err


def _i_log_eval(n: int, x: float, acc: Accuracy) -> tuple[float, float]:
    m1 = start_order_i(n, x)
    m2 = _second_order(m1)
    _budget(m2, acc)
    a = _i_kernel(n, x, m1)
    b = _i_kernel(n, x, m2)
    err = abs(a.log_abs - b.log_abs) + 4.0 * EPS * (m2 + abs(b.log_abs))
    return b.log_abs, err


# ---------------------------------------------------------------------------
# extended precision backend

def _mp_context():
    ctx = mpmath.mp.clone()
    ctx.dps = EXTENDED_DPS
    return ctx


def _ext_err(ctx, value) -> float:
    return float(abs(value) * ctx.mpf(10) ** (-(EXTENDED_DPS - 4)))


# ---------------------------------------------------------------------------
# power series (independent second route)

def bessel_j_series(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> BesselEval:
    """J_n(x) from its Maclaurin series with a cancellation-aware error bound."""
    n = _check_order(n)
    x = _check_arg(x)
    if x == 0.0:
        return BesselEval(1.0 if n == 0 else 0.0, 0.0)
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    abs_total = 1.0
    k = 0
    while True:
        k += 1
        if k > acc.max_terms:
            raise NonConvergence("series for J did not converge within max_terms")
        term *= q / (k * (n + k))
        total += term
        abs_total += abs(term)
        nxt = abs(q) / ((k + 1) * (n + k + 1))
        if nxt < 0.5 and abs(term) * nxt <= EPS * 1e-3 * abs_total:
            tail = 2.0 * abs(term) * nxt
            break
    log_pref = n * math.log(0.5 * x) - math.lgamma(n + 1)
    if log_pref > _LOG_MAX_FLOAT:
        raise Overflow("series prefactor overflows")
    pref = math.exp(log_pref)
    value = pref * total
    err = pref * (tail + 2.0 * (k + 2) * EPS * abs_total) + abs(value) * 4.0 * EPS * (abs(log_pref) + 1.0)
    return BesselEval(value, err)


def log_bessel_i_series(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> BesselEval:
    """log I_n(x) from the Maclaurin series (all terms positive)."""
    n = _check_order(n)
    x = _check_arg(x)
    if x == 0.0:
        raise DomainError("log I_n(0) is not finite for this route")
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        if k > acc.max_terms:
            raise NonConvergence("series for I did not converge within max_terms")
        term *= q / (k * (n + k))
        total += term
        nxt = q / ((k + 1) * (n + k + 1))
        if nxt < 0.5 and term * nxt <= EPS * 1e-3 * total:
            tail = 2.0 * term * nxt
            break
    log_pref = n * math.log(0.5 * x) - math.lgamma(n + 1)
    value = log_pref + math.log(total)
    err = tail / total + 2.0 * (k + 2) * EPS + 4.0 * EPS * (abs(log_pref) + 1.0)
    return BesselEval(value, err)


# ---------------------------------------------------------------------------
# public scalar API

def log_bessel_j(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> LogBesselEval:
    """log|J_n(x)| and the sign of J_n(x); never underflows."""
    n = _check_order(n)
    x = _check_arg(x)
    if x == 0.0:
        return LogBesselEval(0.0, 1, 0.0) if n == 0 else LogBesselEval(-math.inf, 0, 0.0)
    if acc.extended:
        ctx = _mp_context()
        v = ctx.besselj(n, ctx.mpf(x))
        if v == 0:
            return LogBesselEval(-math.inf, 0, 0.0)
        return LogBesselEval(float(ctx.log(abs(v))), 1 if v > 0 else -1, 10.0 ** (-(EXTENDED_DPS - 4)))
    # near a zero of J_n the log error is large; it is reported, not raised
    kern, _abs_err, log_err = _j_log_eval(n, x, acc)
    return LogBesselEval(kern.log_abs, kern.sign, log_err)


def bessel_j(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY, method: str = "auto") -> BesselEval:
    """J_n(x) for integer n >= 0 and real x >= 0."""
    n = _check_order(n)
    x = _check_arg(x)
    if x == 0.0:
        return BesselEval(1.0 if n == 0 else 0.0, 0.0)
    if acc.extended:
        ctx = _mp_context()
        v = ctx.besselj(n, ctx.mpf(x))
        return BesselEval(float(v), max(_ext_err(ctx, v), 1e-300))
    if method == "series":
        res = bessel_j_series(n, x, acc)
    elif method in ("auto", "recurrence"):
        kern, abs_err, _ = _j_log_eval(n, x, acc)
        value = 0.0 if kern.sign == 0 else kern.sign * math.exp(kern.log_abs)
        res = BesselEval(value, abs_err)
    else:
        raise ValueError(f"unknown method {method!r}")
    if res.err > acc.target_abs_err:
        raise NonConvergence(f"J_{n}({x}) error {res.err:.3g} exceeds {acc.target_abs_err:.3g}")
    return res


def log_bessel_i(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY, method: str = "auto") -> BesselEval:
    """log I_n(x) for x > 0; ``err`` bounds the error of the logarithm."""
    n = _check_order(n)
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log I_n needs x > 0, got {x!r}")
    if acc.extended:
        ctx = _mp_context()
        v = ctx.log(ctx.besseli(n, ctx.mpf(x)))
        return BesselEval(float(v), 10.0 ** (-(EXTENDED_DPS - 4)) * max(1.0, abs(float(v))))
    if method == "series":
        res = log_bessel_i_series(n, x, acc)
    elif method in ("auto", "recurrence"):
        res = BesselEval(*_i_log_eval(n, x, acc))
    else:
        raise ValueError(f"unknown method {method!r}")
    if res.err > acc.target_rel_err:
        raise NonConvergence(f"log I_{n}({x}) error {res.err:.3g} exceeds {acc.target_rel_err:.3g}")
    return res


def bessel_i(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY, method: str = "auto") -> BesselEval:
    """I_n(x); raises Overflow when the value leaves the float range."""
    n = _check_order(n)
    x = _check_arg(x)
    if x == 0.0:
        return BesselEval(1.0 if n == 0 else 0.0, 0.0)
    lg = log_bessel_i(n, x, acc, method)
    if lg.value > _LOG_MAX_FLOAT:
        raise Overflow(f"I_{n}({x}) exceeds the float range; use log_bessel_i")
    value = math.exp(lg.value)
    return BesselEval(value, value * math.expm1(lg.err) + value * EPS)


def bessel_deriv_j(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> BesselEval:
    """J_n'(x) = -J_{n+1}(x) + (n/x) J_n(x)."""
    n = _check_order(n)
    x = _check_arg(x)
    if n == 0:
        j1 = bessel_j(1, x, acc)
        return BesselEval(-j1.value, j1.err)
    if x == 0.0:
        raise DomainError("the n/x term is undefined at x = 0")
    a = bessel_j(n + 1, x, acc)
    b = bessel_j(n, x, acc)
    return BesselEval(-a.value + n / x * b.value, a.err + n / x * b.err)


def bessel_deriv_i(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> BesselEval:
    """I_n'(x) = I_{n+1}(x) + (n/x) I_n(x)."""
    n = _check_order(n)
    x = _check_arg(x)
    if n == 0:
        return bessel_i(1, x, acc)
    if x == 0.0:
        raise DomainError("the n/x term is undefined at x = 0")
    a = bessel_i(n + 1, x, acc)
    b = bessel_i(n, x, acc)
    return BesselEval(a.value + n / x * b.value, a.err + n / x * b.err)


# ---------------------------------------------------------------------------
# ratios used by cross ratios and Newton steps

def ratio_j(n: int, x: float) -> tuple[float, int, float]:
    """(J_{n+1}/J_n, sign of J_n, log|J_n|) at x > 0."""
    k = _j_kernel(n, x, start_order_j(n, x))
    return k.ratio, k.sign, k.log_abs


def ratio_i(n: int, x: float) -> float:
    """I_{n+1}(x)/I_n(x) at x > 0."""
    return _i_kernel(n, x, start_order_i(n, x)).ratio


def ratio_errors(n: int, x: float) -> tuple[float, float]:
    """Truncation-plus-rounding estimates for ``ratio_j`` and ``ratio_i``."""
    mj = start_order_j(n, x)
    mi = start_order_i(n, x)
    a, b = _j_kernel(n, x, mj), _j_kernel(n, x, _second_order(mj))
    c, d = _i_kernel(n, x, mi), _i_kernel(n, x, _second_order(mi))
    ej = abs(a.ratio - b.ratio) + 4.0 * EPS * _second_order(mj) * (abs(b.ratio) + 1.0)
    ei = abs(c.ratio - d.ratio) + 4.0 * EPS * _second_order(mi) * abs(d.ratio)
    return ej, ei


# ---------------------------------------------------------------------------
# vectorised public helpers

def log_abs_bessel_j_array(n: int, x, with_err: bool = False):
    """log|J_n(x)| and sign(J_n(x)) for an array of x > 0 at fixed order n.

    With ``with_err`` a third array holds the log error estimate.
    """
    n = _check_order(n)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("array arguments must be finite and positive")
    m = start_order_j(n, float(x.max()))
    la, sa = _j_kernel_array(n, x, m)
    if not with_err:
        return la, sa
    m2 = _second_order(m)
    lb, sb = _j_kernel_array(n, x, m2)
    amp = np.array([_oscillation_amplitude(n, float(t)) for t in x])
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        vb = np.exp(lb)
        floor = 4.0 * EPS * m2 * (1.0 + amp / vb)
        err = np.where(sa == sb, np.abs(la - lb), np.inf) + floor
    return lb, sb, err


def log_bessel_i_array(n: int, x, with_err: bool = False):
    """log I_n(x) for an array of x > 0 at fixed order n."""
    n = _check_order(n)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("array arguments must be finite and positive")
    m = start_order_i(n, float(x.max()))
    la = _i_kernel_array(n, x, m)
    if not with_err:
        return la
    m2 = _second_order(m)
    lb = _i_kernel_array(n, x, m2)
    err = np.abs(la - lb) + 4.0 * EPS * (m2 + np.abs(lb))
    return lb, err


# ---------------------------------------------------------------------------
# zeros of J_n

def lang_wong(n: int, beta: float) -> float:
    """Lang-Wong expansion of j_{n,1} with remainder coefficient ``beta``."""
    a1 = abs(AIRY_A1)
    return n + a1 * 2.0 ** (-1.0 / 3.0) * n ** (1.0 / 3.0) + 0.15 * a1 * a1 * 2.0 ** (1.0 / 3.0) * n ** (-1.0 / 3.0) + beta / n


def lang_wong_window(n: int) -> tuple[float, float]:
    return lang_wong(n, LANG_WONG_BETA[0]), lang_wong(n, LANG_WONG_BETA[1])


def _j_sign_step(n: int):
    def fn(x: float):
        k = _j_kernel(n, x, start_order_j(n, x))
        if k.sign == 0:
            return 0, 0.0
        dlog = n / x - k.ratio  # J_n'/J_n
        step = -1.0 / dlog if dlog != 0.0 else 0.0
        return k.sign, step
    return fn


def _scan_sign_change(n: int, start: float, step: float = 1.0, limit: int = 100000) -> tuple[float, float]:
    fn = _j_sign_step(n)
    a = start
    sa = fn(a)[0]
    for _ in range(limit):
        b = a + step
        sb = fn(b)[0]
        if sb == 0:
            return b, b
        if sa != sb:
            return a, b
        a, sa = b, sb
    raise BracketFailure(f"no sign change of J_{n} found after {start}")


def _zero_xtol(x: float) -> float:
    return 8.0 * EPS * max(1.0, x)


@lru_cache(maxsize=8192)
def _j_zero_double(n: int, k: int) -> float:
    fn = _j_sign_step(n)
    if k == 1 and n >= 10:
        lo, hi = lang_wong_window(n)
        lo -= 1e-12 * n
        hi += 1e-12 * n
        if fn(lo)[0] * fn(hi)[0] < 0:
            return safeguarded_newton(fn, lo, hi, xtol=_zero_xtol(hi))
    if k == 1:
        start = max(float(n), 1.0)
    else:
        start = _j_zero_double(n, k - 1) + 2.5
    a, b = _scan_sign_change(n, start)
    if a == b:
        return a
    return safeguarded_newton(fn, a, b, xtol=_zero_xtol(b))


def bessel_j_zero(n: int, k: int, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """The k-th positive zero j_{n,k} of J_n."""
    n = _check_order(n)
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    k = int(k)
    if acc.extended:
        ctx = _mp_context()
        return float(ctx.besseljzero(n, k))
    return _j_zero_double(n, k)


# ---------------------------------------------------------------------------
# Y_0, modulus and phase

def _j_sequence(x: float, m: int) -> list[float]:
    """Normalised J_0(x), ..., J_m(x) from one backward sweep."""
    c = 2.0 / x
    vals = [0.0] * (m + 2)
    vals[m] = 1.0
    s = 0.0
    for k in range(m, 0, -1):
        if k % 2 == 0:
            s += 2.0 * vals[k]
        vals[k - 1] = k * c * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _BIG:
            for j in range(k - 1, m + 1):
                vals[j] /= _BIG
            s /= _BIG
    s += vals[0]
    return [v / s for v in vals[: m + 1]]


def _y0_pair_kernel(x: float, m: int) -> tuple[float, float, float, float]:
    """(J_0, J_0', Y_0, Y_0') from a Neumann series on one recurrence."""
    j = _j_sequence(x, m)
    g = math.log(0.5 * x) + EULER_GAMMA
    acc_y = 0.0
    acc_dy = 0.0
    for kk in range(1, m // 2):
        sgn = -1.0 if kk % 2 else 1.0
        acc_y += sgn * j[2 * kk] / kk
        acc_dy += sgn * (j[2 * kk - 1] - j[2 * kk + 1]) / (2.0 * kk)
    y0 = 2.0 / math.pi * g * j[0] - 4.0 / math.pi * acc_y
    dy0 = 2.0 / math.pi * j[0] / x - 2.0 / math.pi * g * j[1] - 4.0 / math.pi * acc_dy
    return j[0], -j[1], y0, dy0


def bessel_y0_pair(x: float, acc: Accuracy = DEFAULT_ACCURACY) -> tuple[BesselEval, BesselEval]:
    """Y_0(x) and Y_0'(x) for x > 0."""
    x = _check_arg(x)
    if x == 0.0:
        raise DomainError("Y_0 is singular at 0")
    if acc.extended:
        ctx = _mp_context()
        y = ctx.bessely(0, ctx.mpf(x))
        dy = -ctx.bessely(1, ctx.mpf(x))
        return BesselEval(float(y), _ext_err(ctx, y) + 1e-300), BesselEval(float(dy), _ext_err(ctx, dy) + 1e-300)
    m1 = start_order_j(0, x) + 2
    m2 = _second_order(m1)
    _budget(m2, acc)
    a = _y0_pair_kernel(x, m1)
    b = _y0_pair_kernel(x, m2)
    floor = 8.0 * EPS * m2 * (abs(math.log(0.5 * x)) + 2.0) * max(1.0, 1.0 / x) * math.sqrt(2.0 / (math.pi * x))
    ey = abs(a[2] - b[2]) + floor
    edy = abs(a[3] - b[3]) + floor * (1.0 + 1.0 / x)
    if max(ey, edy) > acc.target_abs_err:
        raise NonConvergence(f"Y_0({x}) error exceeds target")
    return BesselEval(b[2], ey), BesselEval(b[3], edy)


def bessel_y0(x: float, acc: Accuracy = DEFAULT_ACCURACY) -> BesselEval:
    return bessel_y0_pair(x, acc)[0]


def modulus_phase_0(x: float, acc: Accuracy = DEFAULT_ACCURACY) -> ModulusPhase:
    """Modulus M_0 and continuous phase theta_0 with J_0 = M_0 cos(theta_0).

    The branch of the phase is fixed by theta_0(x) ~ x - pi/4 for large x.
    """
    x = _check_arg(x)
    if x < 10.0:
        raise DomainError("modulus/phase is provided for x >= 10")
    j = bessel_j(0, x, acc)
    y = bessel_y0(x, acc)
    m0 = math.hypot(j.value, y.value)
    phi = math.atan2(y.value, j.value)
    ref = x - 0.25 * math.pi
    theta = phi + 2.0 * math.pi * round((ref - phi) / (2.0 * math.pi))
    return ModulusPhase(m0, theta, j.err + y.err, (j.err + y.err) / m0)
