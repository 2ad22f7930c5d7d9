"""Radius of the nodal void: limit radius, positivity condition and per-N certificates.

All tiny magnitudes (t^2, I_0(sqrt(lambda))^-1, 10^-43 ...) are carried as
natural logarithms; decimal values are stored only for display.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import specfun
from .audit import AuditReport, _clean
from .config import DEFAULT_ACCURACY, Accuracy
from .disk_spectrum import certify_nondegenerate
from .envelopes import (
    remainder_envelope_v1,
    remainder_envelope_vtail,
    remainder_envelope_wtail,
    rho,
    sp_lower,
)
from .errors import CertificationFailed, DomainError, KnTooLarge
from .roots import bisect

LOG10 = math.log(10.0)
# 87 log 10: 86 from t^2 at t = 1e-43 plus one absorbing log(5N + 1e-16 + 1e-9) <= log(10 N)
EXP_DECADES = 87.0
THEOREM_CONST = 500.0
THEOREM_LOG_CONST = 50.0
DEFAULT_RADII = 32
DEFAULT_RTOL = 1e-6
VSLACK_LOG = -16.0 * LOG10
WSLACK_LOG = -9.0 * LOG10


def _rho_scalar(x: float) -> float:
    if x >= 1.0:
        return 0.0
    s = math.sqrt((1.0 - x) * (1.0 + x))
    return math.log(x) + s - math.log1p(s)


def limit_profile(r: float) -> float:
    """g(r) = rho(r) - r + 1, whose unique zero in (0, 1) is the limit radius."""
    return _rho_scalar(r) - r + 1.0


def solve_r_infinity(tol: float = 1e-10) -> float:
    """Zero of log r + sqrt(1-r^2) - log(1+sqrt(1-r^2)) - r + 1 with |g| <= tol."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    return _solve_r_infinity(float(tol))


@lru_cache(maxsize=32)
def _solve_r_infinity(tol: float) -> float:
    # g is increasing on (0, 1/sqrt 2), and g(0.1) < 0 < g(0.7)
    lo, hi = bisect(limit_profile, 0.1, 0.7, xtol=1e-16)
    r = lo if abs(limit_profile(lo)) <= abs(limit_profile(hi)) else hi
    if abs(limit_profile(r)) > tol:
        raise DomainError(f"residual {limit_profile(r):.3e} above tol {tol:.1e}")
    return r


def sigma_value() -> float:
    z = solve_r_infinity(1e-14)
    return math.sqrt(1.0 - z * z) - z


def tangent_gap(s, zeta: float | None = None, sigma: float | None = None):
    """sigma log(s/zeta) - (rho(s) - s + 1); nonnegative on (0, 1) with its zero at zeta."""
    zeta = solve_r_infinity(1e-14) if zeta is None else zeta
    sigma = sigma_value() if sigma is None else sigma
    sa = np.asarray(s, dtype=float)
    out = sigma * np.log(sa / zeta) - (rho(sa) - sa + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def sigma_and_tangent_bound(grid=None, slack: float = 1e-12) -> AuditReport:
    """Report sigma and check the tangent-line bound on a grid in (0, 1)."""
    zeta = solve_r_infinity(1e-14)
    sigma = math.sqrt(1.0 - zeta * zeta) - zeta
    s = np.linspace(1e-4, 1.0 - 1e-4, 10_000) if grid is None else np.asarray(grid, dtype=float)
    if np.any(s <= 0) or np.any(s >= 1):
        raise DomainError("grid must lie in (0, 1)")
    gap = tangent_gap(s, zeta, sigma)
    i = int(np.argmin(gap))
    rep = AuditReport("sigma")
    rep.info.update({"zeta_inf": zeta, "sigma": sigma, "grid_points": int(s.size),
                     "grid_range": [float(s.min()), float(s.max())], "argmin_s": float(s[i])})
    rep.ge("min over grid of sigma log(s/zeta) - (rho(s) - s + 1)", float(gap[i]), 0.0, slack)
    rep.close("tangent gap at s = zeta", tangent_gap(zeta, zeta, sigma), 0.0, slack)
    rep.gt("tangent gap at s = 0.2", tangent_gap(0.2, zeta, sigma), 0.0)
    rep.gt("tangent gap at s = 0.9", tangent_gap(0.9, zeta, sigma), 0.0)
    rep.ge("sigma lower reference", sigma, 0.451)
    rep.le("sigma upper reference", sigma, 0.454)
    return rep


# ---------------------------------------------------------------------------
# radius formulas

def default_kn(N: int) -> float:
    """Largest K_N with (2/sigma) K_N log N / N <= N^(-2/3): sigma N^(1/3) / (2 log N)."""
    if N < 2:
        raise DomainError("need N >= 2")
    return sigma_value() * N ** (1.0 / 3.0) / (2.0 * math.log(N))


def kn_slack(N: int, K_N: float) -> float:
    """N^(-2/3) - (2/sigma) K_N log N / N; must be >= 0."""
    return N ** (-2.0 / 3.0) - 2.0 / sigma_value() * K_N * math.log(N) / N


def _exponent_const(N: int, K_N: float) -> float:
    return EXP_DECADES * LOG10 + (22.0 + 2.0 * K_N) * math.log(N)


def sharper_radius(N: int, K_N: float) -> float:
    """zeta exp(-3 N^(-2/3) - (87 log 10 + (22 + 2K) log N) / (sigma N))."""
    zeta = solve_r_infinity(1e-14)
    return zeta * math.exp(-3.0 * N ** (-2.0 / 3.0) - _exponent_const(N, K_N) / (sigma_value() * N))


def tangent_chain_radius(N: int, xi: float, K_N: float) -> float:
    """Radius from the tangent bound keeping the 1 - sqrt(lambda)/N term.

    With s = sqrt(lambda) r / N the positivity condition follows from
    sigma log(s/zeta) < 1 - sqrt(lambda)/N - c/N.
    """
    zeta = solve_r_infinity(1e-14)
    a = xi / N
    return zeta / a * math.exp((1.0 - a - _exponent_const(N, K_N) / N) / sigma_value())


def theorem_radius(N: int, K_N: float | None = None) -> float:
    """r_inf exp(-4 N^(-2/3) - (500 + 50 log N)/N).

    Raises KnTooLarge when K_N breaks (2/sigma) K_N log N / N <= N^(-2/3);
    in that case the closed form no longer dominates the sharper form.
    """
    if N < 100:
        raise DomainError("need N >= 100")
    K = default_kn(N) if K_N is None else float(K_N)
    if K < 0:
        raise DomainError("K_N must be nonnegative")
    # the default K_N meets the slack with equality, hence the relative allowance
    if kn_slack(N, K) < -1e-12 * N ** (-2.0 / 3.0):
        raise KnTooLarge(f"K_N={K} breaks the slack condition at N={N}")
    r_inf = solve_r_infinity(1e-14)
    r = r_inf * math.exp(-4.0 * N ** (-2.0 / 3.0) - (THEOREM_CONST + THEOREM_LOG_CONST * math.log(N)) / N)
    sharp = sharper_radius(N, K)
    if sharp < r * (1.0 - 1e-14):
        raise KnTooLarge(f"sharper radius {sharp} below closed form {r} at N={N}")
    return r


def positivity_condition(N: int, xi: float, r, K_N: float):
    """(sqrt(lambda)/N)(r - 1) - (87 log 10 + (22 + 2K) log N)/N - rho(sqrt(lambda) r/N).

    xi is sqrt(lambda). Positive means |w_t| > |v_t| at radius r.
    """
    ra = np.asarray(r, dtype=float)
    if np.any(ra <= 0) or np.any(ra >= 1.0 - 1.0 / N):
        raise DomainError("r must lie in (0, 1 - 1/N)")
    a = xi / N
    out = a * (ra - 1.0) - _exponent_const(N, K_N) / N - rho(a * ra)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# certificate

def log_t(N: int, K_N: float) -> float:
    return -43.0 * LOG10 - (11.5 + K_N) * math.log(N)


def log_w0_lower(N: int, K_N: float, log_i0: float) -> float:
    """log of t^2 N^2 / 6 * I_0(sqrt(lambda))^-1."""
    return 2.0 * log_t(N, K_N) + 2.0 * math.log(N) - math.log(6.0) - log_i0


def direct_envelope_margin(N: int, xi: float, r, K_N: float):
    """log(lower envelope of w_t) - log(upper envelope of |v_t|), with the w tail moved right.

    Lower w: (t^2 N^2/6) I_0^-1 * I_0 e^{-sqrt(lambda)(1-r)} minus the w tail.
    Upper v: 5N e^{N rho} + 1e-16 e^{N rho} + the v tail.
    """
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    log_i0 = specfun.log_bessel_i(0, xi).value
    lw = log_w0_lower(N, K_N, log_i0) + np.asarray(sp_lower(N, xi, ra))
    nrho = N * np.asarray(rho(xi * ra / N))
    terms = np.stack([
        np.asarray(remainder_envelope_wtail(N, ra)),
        np.asarray(remainder_envelope_v1(N, xi, ra)),
        VSLACK_LOG + nrho,
        np.asarray(remainder_envelope_vtail(N, ra)),
    ])
    top = terms.max(axis=0)
    rhs = top + np.log(np.exp(terms - top).sum(axis=0))
    out = lw - rhs
    return float(out[0]) if np.ndim(r) == 0 else out


@dataclass
class VoidCertificate:
    N: int
    xi: float
    K_N: float
    t: float
    log_t: float
    r_theorem: float
    r_sharp: float
    r_tangent_chain: float
    r_certified: float
    margin_at_r: float
    r_infinity: float
    log_w0_lower: float
    radii: list = field(default_factory=list)
    eq44_margins: list = field(default_factory=list)
    direct_margins: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    passed: bool = True

    def as_dict(self) -> dict:
        return _clean(asdict(self))

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)


def _largest_positive(N: int, xi: float, K: float, rtol: float) -> float:
    a = xi / N
    # the margin decreases for sqrt(lambda) r / N < 1/sqrt 2 and stays negative beyond
    hi = min(1.0 / (math.sqrt(2.0) * a), 1.0 - 1.0 / N) * (1.0 - 1e-12)
    lo = 1e-12
    f = lambda r: positivity_condition(N, xi, r, K)
    if f(lo) <= 0:
        raise CertificationFailed("positivity condition fails already at r = 1e-12")
    if f(hi) > 0:
        raise CertificationFailed("positivity margin does not change sign below the turning point")
    lo, hi = bisect(f, lo, hi, xtol=rtol)
    return lo


def certify_void(N: int, acc: Accuracy = DEFAULT_ACCURACY, *, K_N: float | None = None,
                 rtol: float = DEFAULT_RTOL, radii: int = DEFAULT_RADII) -> VoidCertificate:
    """Certify the void radius for the lowest mode of index N."""
    cert = certify_nondegenerate(N, acc)
    if not cert.passed:
        raise CertificationFailed(f"nondegeneracy check failed for N={N}: {', '.join(cert.failed_checks())}")
    xi = cert.xi1
    K = default_kn(N) if K_N is None else float(K_N)
    r_thm = theorem_radius(N, K)
    r_inf = solve_r_infinity(1e-14)
    lt = log_t(N, K)
    log_i0 = specfun.log_bessel_i(0, xi, acc).value
    lw0 = log_w0_lower(N, K, log_i0)
    checks: dict[str, dict] = {}

    def record(name, value, bound, ok):
        checks[name] = {"value": value, "bound": bound, "pass": bool(ok)}
        if not ok:
            raise CertificationFailed(f"{name}: {value!r} vs {bound!r}")

    # w_t(0) >= t^2/6 N^2 I_0^-1 needs 3/sqrt(pi) - 600e40 N^11.5 t >= 1 and lambda >= N^2
    factor = 3.0 / math.sqrt(math.pi) - 600.0 * math.exp(40.0 * LOG10 + 11.5 * math.log(N) + lt)
    record("3/sqrt(pi) - 600e40 N^11.5 t >= 1", factor, 1.0, factor >= 1.0)
    record("lambda >= N^2", xi * xi, float(N * N), xi * xi >= N * N)
    record("log w_t(0) lower bound finite", lw0, -math.inf, math.isfinite(lw0))

    r_cert = _largest_positive(N, xi, K, rtol)
    margin = positivity_condition(N, xi, r_cert, K)
    record("r_certified >= r_theorem", r_cert, r_thm, r_cert >= r_thm)
    record("r_certified < r_infinity", r_cert, r_inf, r_cert < r_inf)
    record("margin at r_theorem >= 0", positivity_condition(N, xi, r_thm, K), 0.0,
           positivity_condition(N, xi, r_thm, K) >= 0.0)
    r_chain = tangent_chain_radius(N, xi, K)
    record("margin at tangent-chain radius >= 0", positivity_condition(N, xi, r_chain, K), 0.0,
           positivity_condition(N, xi, r_chain, K) >= 0.0)

    rs = r_cert * np.arange(1, radii + 1) / (radii + 1)
    eq44 = positivity_condition(N, xi, rs, K)
    direct = direct_envelope_margin(N, xi, rs, K)
    for r, m44, md in zip(rs, eq44, direct):
        if (m44 > 0) != (md > 0):
            record(f"direct comparison agrees with positivity condition at r={r:.6g}",
                   float(md), float(m44), False)
    checks["direct comparison agrees at all radii"] = {"value": float(np.min(direct)), "bound": 0.0, "pass": True}

    return VoidCertificate(
        N=N,
        xi=xi,
        K_N=K,
        t=math.exp(lt),
        log_t=lt,
        r_theorem=r_thm,
        r_sharp=sharper_radius(N, K),
        r_tangent_chain=r_chain,
        r_certified=r_cert,
        margin_at_r=margin,
        r_infinity=r_inf,
        log_w0_lower=lw0,
        radii=[float(r) for r in rs],
        eq44_margins=[float(m) for m in eq44],
        direct_margins=[float(m) for m in direct],
        checks=checks,
        passed=True,
    )
