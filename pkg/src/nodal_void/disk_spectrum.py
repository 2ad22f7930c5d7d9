"""Clamped-plate eigenvalues of the unit disk and the nondegeneracy checklist.

A mode with angular index N has radial profile J_N(xi r)/J_N(xi) - I_N(xi r)/I_N(xi),
and xi is a zero of the cross ratio

    W_N(x) = J_N'/J_N - I_N'/I_N = -J_{N+1}/J_N - I_{N+1}/I_N.

Between consecutive zeros of J_N the cross ratio runs from +inf to -inf and has
slope exactly -2 wherever it vanishes (from the two Riccati equations), so each
such interval holds exactly one eigenvalue.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from . import specfun
from .config import DEFAULT_ACCURACY, Accuracy
from .errors import BracketFailure, DomainError, PoleProximity
from .roots import safeguarded_newton

POLE_RATIO = 1e14
RADIAL_WINDOW = 10.0


@dataclass(frozen=True)
class PlateMode:
    N: int
    k: int
    xi: float

    @property
    def lam(self) -> float:
        return self.xi * self.xi

    @property
    def plate_eig(self) -> float:
        return self.xi ** 4

    def as_dict(self) -> dict:
        return {"N": self.N, "k": self.k, "xi": self.xi, "lambda": self.lam, "plate_eig": self.plate_eig}


@dataclass
class NondegeneracyCertificate:
    N: int
    xi1: float
    dist_to_radial_zeros: float
    w0_at_xi: float
    j0_at_xi: float
    gap: float
    passed: bool
    checks: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def tau(self) -> float:
        """Spectral gap used downstream."""
        return self.gap

    def failed_checks(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def as_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# cross ratio

def _w_parts(n: int, x: float) -> tuple[float, float, int]:
    rj, sign, _ = specfun.ratio_j(n, x)
    ri = specfun.ratio_i(n, x)
    return rj, ri, sign


def cross_ratio_w(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """W_n(x) through the ratio form -J_{n+1}/J_n - I_{n+1}/I_n."""
    if x <= 0:
        raise DomainError("cross ratio needs x > 0")
    rj, ri, _ = _w_parts(n, x)
    if not math.isfinite(rj) or abs(rj) > POLE_RATIO:
        raise PoleProximity(f"x = {x} is too close to a zero of J_{n}")
    return -rj - ri


def cross_ratio_w_forms(n: int, x: float, acc: Accuracy = DEFAULT_ACCURACY) -> tuple[float, float, float]:
    """Both forms of W_n(x) and an error estimate for the ratio form.

    The second value is J_n'/J_n - I_n'/I_n assembled from derivative
    evaluations (log-scaled for I_n).
    """
    w = cross_ratio_w(n, x, acc)
    ej, ei = specfun.ratio_errors(n, x)
    lj = specfun.log_bessel_j(n, x, acc)
    lj1 = specfun.log_bessel_j(n + 1, x, acc)
    li = specfun.log_bessel_i(n, x, acc)
    li1 = specfun.log_bessel_i(n + 1, x, acc)
    # J_n'/J_n = n/x - J_{n+1}/J_n and I_n'/I_n = n/x + I_{n+1}/I_n
    jr = lj1.sign * lj.sign * math.exp(lj1.log_abs - lj.log_abs)
    ir = math.exp(li1.value - li.value)
    alt = (n / x - jr) - (n / x + ir)
    err = ej + ei + abs(jr) * (lj.err + lj1.err) + ir * (li.err + li1.err)
    return w, alt, err


def cross_ratio_slope(n: int, x: float) -> float:
    """W_n'(x) from the Riccati equations satisfied by J_n'/J_n and I_n'/I_n."""
    rj, ri, _ = _w_parts(n, x)
    f = n / x - rj
    g = n / x + ri
    return -f * f + g * g - (f - g) / x - 2.0


def _w_sign_step(n: int):
    def fn(x: float):
        rj, ri, _ = _w_parts(n, x)
        w = -rj - ri
        f = n / x - rj
        g = n / x + ri
        slope = -f * f + g * g - (f - g) / x - 2.0
        s = (w > 0) - (w < 0)
        return s, (-w / slope if slope != 0.0 else 0.0)
    return fn


def _solve_between_poles(n: int, lo: float, hi: float) -> float:
    return safeguarded_newton(_w_sign_step(n), lo, hi, xtol=8.0 * specfun.EPS * hi)


def _shrink(x: float) -> float:
    return 10.0 * 8.0 * specfun.EPS * max(1.0, x)


# ---------------------------------------------------------------------------
# modes

@lru_cache(maxsize=4096)
def _first_mode_xi(N: int) -> float:
    a = specfun.bessel_j_zero(N, 1)
    b = specfun.bessel_j_zero(N + 1, 1)
    lo = a + _shrink(a)
    fn = _w_sign_step(N)
    if fn(lo)[0] <= 0 or fn(b)[0] >= 0:
        raise BracketFailure(f"W_{N} has no sign change on (j_N1, j_N+1,1)")
    return _solve_between_poles(N, lo, b)


def first_mode(N: int, acc: Accuracy = DEFAULT_ACCURACY) -> PlateMode:
    """Lowest mode with angular index N >= 1; its xi lies in (j_{N,1}, j_{N+1,1})."""
    if int(N) != N or N < 1:
        raise DomainError("first_mode needs N >= 1")
    return PlateMode(int(N), 1, _first_mode_xi(int(N)))


@lru_cache(maxsize=4096)
def _mode_xi(N: int, k: int) -> float:
    a = specfun.bessel_j_zero(N, k)
    b = specfun.bessel_j_zero(N, k + 1)
    return _solve_between_poles(N, a + _shrink(a), b - _shrink(b))


def plate_mode(N: int, k: int, acc: Accuracy = DEFAULT_ACCURACY) -> PlateMode:
    """k-th mode with angular index N; xi_{N,k} lies in (j_{N,k}, j_{N,k+1})."""
    if int(N) != N or N < 0 or int(k) != k or k < 1:
        raise DomainError("need N >= 0 and k >= 1")
    N, k = int(N), int(k)
    if k == 1 and N >= 1:
        return first_mode(N, acc)
    if N == 0:
        return radial_mode(k, acc)
    return PlateMode(N, k, _mode_xi(N, k))


@lru_cache(maxsize=16384)
def _radial_xi(k: int) -> float:
    a = specfun.bessel_j_zero(0, k)
    b = specfun.bessel_j_zero(0, k + 1)
    return _solve_between_poles(0, a + _shrink(a), b - _shrink(b))


def radial_mode(k: int, acc: Accuracy = DEFAULT_ACCURACY) -> PlateMode:
    """k-th rotationally symmetric mode; xi_{0,k} lies in (j_{0,k}, j_{0,k+1})."""
    if int(k) != k or k < 1:
        raise DomainError("radial index must be >= 1")
    return PlateMode(0, int(k), _radial_xi(int(k)))


def radial_modes(count: int, acc: Accuracy = DEFAULT_ACCURACY) -> list[PlateMode]:
    if int(count) != count or count < 1:
        raise DomainError("count must be >= 1")
    return [radial_mode(k, acc) for k in range(1, int(count) + 1)]


def second_mode_lower_bound(N: int) -> float:
    """j_{N,2}, below every xi_{N,k} with k >= 2."""
    return specfun.bessel_j_zero(N, 2)


# ---------------------------------------------------------------------------
# nondegeneracy checklist

W0_COARSE = (-6.0, -1.0)
W0_FINE = (-5.36, -1.21)


def _radial_near(xi: float, window: float = RADIAL_WINDOW) -> list[float]:
    # xi_{0,k} sits within 0.33 of k*pi, so this index range covers the window
    k_lo = max(1, int(math.floor((xi - window) / math.pi)) - 1)
    k_hi = int(math.ceil((xi + window) / math.pi)) + 1
    return [z for z in (_radial_xi(k) for k in range(k_lo, k_hi + 1)) if xi - window < z < xi + window]


def certify_nondegenerate(N: int, acc: Accuracy = DEFAULT_ACCURACY) -> NondegeneracyCertificate:
    """Evaluate the five nondegeneracy checks for the lowest mode of index N."""
    if int(N) != N or N < 100:
        raise DomainError("certification is defined for N >= 100")
    N = int(N)
    xi = first_mode(N, acc).xi
    near = _radial_near(xi)
    if not near:
        raise BracketFailure("no radial zero found near xi")
    dist = min(abs(xi - z) for z in near)
    gap = min(abs(xi ** 4 - z ** 4) for z in near)
    # radial zeros outside the window are at least RADIAL_WINDOW away
    tail = min(xi ** 4 - (xi - RADIAL_WINDOW) ** 4, (xi + RADIAL_WINDOW) ** 4 - xi ** 4)
    w0 = cross_ratio_w(0, xi, acc)
    j0 = specfun.bessel_j(0, xi, acc).value
    n3 = N ** (1.0 / 3.0)
    j0_lo = 0.1 / math.sqrt(xi)
    j0_hi = math.sqrt(2.0 / math.pi) / math.sqrt(xi)
    four_n3 = 4.0 * N ** 3
    checks = {
        "dist_to_radial_zeros": dist >= 1.0,
        "w0_range": W0_COARSE[0] <= w0 <= W0_COARSE[1],
        "j0_range": j0_lo <= j0 <= j0_hi,
        "xi_window": N + n3 < xi < N + 3.0 * n3,
        "gap": gap >= four_n3,
    }
    margins = {
        "dist_to_radial_zeros": dist - 1.0,
        "w0_range": min(w0 - W0_COARSE[0], W0_COARSE[1] - w0),
        "j0_range": min(j0 - j0_lo, j0_hi - j0),
        "xi_window": min(xi - N - n3, N + 3.0 * n3 - xi),
        "gap": gap - four_n3,
    }
    j2 = second_mode_lower_bound(N)
    j_n1 = specfun.bessel_j_zero(N, 1)
    j_n11 = specfun.bessel_j_zero(N + 1, 1)
    extra = {
        "w0_fine_range": W0_FINE[0] <= w0 <= W0_FINE[1],
        "xi_simple_window": N + 1.85 * n3 < xi < N + 2.13 * n3,
        "bracket": j_n1 < xi < j_n11,
        "radial_tail_bound": tail,
        "radial_tail_ok": tail >= four_n3,
        "second_mode_gap": j2 ** 4 - xi ** 4,
        "second_mode_ok": j2 ** 4 - xi ** 4 >= four_n3,
        "higher_angular_gap": (2.0 * N) ** 4 - xi ** 4,
        "higher_angular_ok": (2.0 * N) ** 4 - xi ** 4 >= four_n3,
        "j_n1_mod_pi": math.fmod(j_n1, math.pi),
        "j_n1_mod_2pi": math.fmod(j_n1, 2.0 * math.pi),
        "radial_zeros_checked": near,
    }
    return NondegeneracyCertificate(
        N=N,
        xi1=xi,
        dist_to_radial_zeros=dist,
        w0_at_xi=w0,
        j0_at_xi=j0,
        gap=gap,
        passed=all(checks.values()),
        checks=checks,
        margins=margins,
        extra=extra,
    )


def scan_admissible(n_from: int, n_to: int, acc: Accuracy = DEFAULT_ACCURACY) -> list[int]:
    """Every N in [n_from, n_to] whose certificate passes, in increasing order."""
    if n_from < 100 or n_to < n_from:
        raise DomainError("scan range must satisfy 100 <= n_from <= n_to")
    return [N for N in range(int(n_from), int(n_to) + 1) if certify_nondegenerate(N, acc).passed]


def in_pi_window(N: int, lo: float = 1.02, hi: float = 1.10) -> bool:
    """Window test j_{N,1} mod pi in (lo, hi)."""
    r = math.fmod(specfun.bessel_j_zero(N, 1), math.pi)
    return lo < r < hi
