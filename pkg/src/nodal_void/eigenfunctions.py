"""Disk clamped-plate eigenfunctions and their Helmholtz / screened-Poisson parts.

For a mode (N, xi) with lambda = xi**2 and trig = cos or sin of N*theta,

    u = c * trig * (J_N(xi r)/J_N(xi) - I_N(xi r)/I_N(xi)),
    v = (Lap u - lambda u) / (2 lambda) = -c * trig * J_N(xi r)/J_N(xi),
    w = (Lap u + lambda u) / (2 lambda) = -c * trig * I_N(xi r)/I_N(xi),

so that u = w - v.  The normalising constant is c = 1/sqrt(pi) (times an
optional ``scale`` used for bilinearity checks).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import specfun
from .config import DEFAULT_ACCURACY, Accuracy
from .disk_spectrum import PlateMode
from .errors import DomainError
from .quadrature import QuadResult, integrate, integrate_log, trapezoid_periodic

CSV_HEADER = ("r", "theta", "u", "v", "w", "log_abs_v", "log_abs_w")
PARITIES = ("cos", "sin")


@dataclass(frozen=True)
class ComponentPair:
    """Helmholtz part v and screened-Poisson part w, with log-magnitudes.

    ``log_abs_*`` stay finite where the plain values underflow.
    """

    v: np.ndarray | float
    w: np.ndarray | float
    log_abs_v: np.ndarray | float
    log_abs_w: np.ndarray | float
    sign_v: np.ndarray | int
    sign_w: np.ndarray | int


@dataclass(frozen=True)
class DiskEigenfunction:
    mode: PlateMode
    parity: str = "cos"
    scale: float = 1.0

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}")
        if self.parity == "sin" and self.mode.N == 0:
            raise DomainError("a radial mode has no sin parity")

    @property
    def c(self) -> float:
        return self.scale / math.sqrt(math.pi)

    @property
    def N(self) -> int:
        return self.mode.N

    @property
    def xi(self) -> float:
        return self.mode.xi

    @property
    def lam(self) -> float:
        return self.mode.lam

    def trig(self, theta):
        arg = self.N * np.asarray(theta, dtype=float)
        return np.cos(arg) if self.parity == "cos" else np.sin(arg)


def _as_result(x):
    return float(x) if np.ndim(x) == 0 else x


class _RadialRatios:
    """log|J_N(xi r)/J_N(xi)|, its sign, and log(I_N(xi r)/I_N(xi)) on arrays of r."""

    def __init__(self, N: int, xi: float, acc: Accuracy = DEFAULT_ACCURACY):
        self.N = N
        self.xi = xi
        jb = specfun.log_bessel_j(N, xi, acc)
        if jb.sign == 0:
            raise DomainError("xi is a zero of J_N")
        self.log_jb = jb.log_abs
        self.sign_jb = jb.sign
        self.log_ib = specfun.log_bessel_i(N, xi, acc).value

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r < 0) or not np.all(np.isfinite(r)):
            raise DomainError("radii must be finite and nonnegative")
        flat = np.atleast_1d(r).ravel()
        lj = np.empty_like(flat)
        sj = np.empty_like(flat)
        li = np.empty_like(flat)
        pos = flat > 0
        if np.any(pos):
            la, sa = specfun.log_abs_bessel_j_array(self.N, self.xi * flat[pos])
            lj[pos] = la - self.log_jb
            sj[pos] = sa * self.sign_jb
            li[pos] = specfun.log_bessel_i_array(self.N, self.xi * flat[pos]) - self.log_ib
        zero = ~pos
        if np.any(zero):
            if self.N == 0:
                lj[zero] = -self.log_jb
                sj[zero] = self.sign_jb
                li[zero] = -self.log_ib
            else:
                lj[zero] = -np.inf
                sj[zero] = 0.0
                li[zero] = -np.inf
        shape = r.shape
        return lj.reshape(shape), sj.reshape(shape), li.reshape(shape)


def _ratios(ef: DiskEigenfunction) -> _RadialRatios:
    return _RadialRatios(ef.N, ef.xi)


def radial_profile(ef: DiskEigenfunction, r):
    """J_N(xi r)/J_N(xi) - I_N(xi r)/I_N(xi)."""
    lj, sj, li = _ratios(ef)(r)
    return _as_result(sj * np.exp(lj) - np.exp(li))


def eval_u(ef: DiskEigenfunction, r, theta):
    """u(r, theta); accepts scalars or broadcastable arrays."""
    lj, sj, li = _ratios(ef)(r)
    return _as_result(ef.c * ef.trig(theta) * (sj * np.exp(lj) - np.exp(li)))


def eval_components(ef: DiskEigenfunction, r, theta) -> ComponentPair:
    lj, sj, li = _ratios(ef)(r)
    tr = ef.trig(theta)
    lj, sj, li, tr = np.broadcast_arrays(lj, sj, li, tr)
    base = -ef.c * tr
    with np.errstate(divide="ignore"):
        log_c = np.log(np.abs(base))
    sign_t = np.sign(base)
    v = base * sj * np.exp(lj)
    w = base * np.exp(li)
    return ComponentPair(
        v=_as_result(v),
        w=_as_result(w),
        log_abs_v=_as_result(log_c + lj),
        log_abs_w=_as_result(log_c + li),
        sign_v=_as_result(sign_t * sj),
        sign_w=_as_result(sign_t),
    )


def radial_derivative(ef: DiskEigenfunction, r: float, theta: float) -> float:
    """du/dr from J_N' = (N/x) J_N - J_{N+1} and I_N' = (N/x) I_N + I_{N+1}."""
    if r <= 0:
        raise DomainError("radial derivative is evaluated for r > 0")
    x = ef.xi * r
    jr, sj, lj = specfun.ratio_j(ef.N, x)
    ir = specfun.ratio_i(ef.N, x)
    rr = _ratios(ef)
    j_part = sj * rr.sign_jb * math.exp(lj - rr.log_jb) * (ef.N / x - jr)
    i_part = math.exp(specfun.log_bessel_i(ef.N, x).value - rr.log_ib) * (ef.N / x + ir)
    return float(ef.c * ef.trig(theta) * ef.xi * (j_part - i_part))


# ---------------------------------------------------------------------------
# norms and boundary data

def _angular_sq_integral(ef: DiskEigenfunction) -> float:
    return 2.0 * math.pi if ef.N == 0 else math.pi


def l2_norm_sq(ef: DiskEigenfunction, quad_points: int = 64, rtol: float = 1e-12) -> float:
    """Squared L2 norm over the unit disk (exact in theta, Gauss-Legendre in r)."""
    return l2_norm_sq_result(ef, quad_points, rtol).value


def l2_norm_sq_result(ef: DiskEigenfunction, quad_points: int = 64, rtol: float = 1e-12) -> QuadResult:
    if quad_points < 64:
        raise DomainError("quad_points must be at least 64")
    rr = _ratios(ef)

    def f(r):
        lj, sj, li = rr(r)
        prof = sj * np.exp(lj) - np.exp(li)
        return r * prof * prof

    res = integrate(f, 0.0, 1.0, points=quad_points, rtol=rtol)
    k = ef.c ** 2 * _angular_sq_integral(ef)
    return QuadResult(k * res.value, k * res.err, res.points)


def boundary_laplacian(ef: DiskEigenfunction, theta):
    """Laplacian of u on the unit circle, -2 lambda c trig(N theta)."""
    return _as_result(-2.0 * ef.lam * ef.c * ef.trig(theta))


def boundary_laplacian_fd(ef: DiskEigenfunction, theta: float, h: float = 1e-4) -> float:
    """One-sided second-order stencil for u_rr + u_r / r at r = 1 (u vanishes there)."""
    r = 1.0 - h * np.arange(4)
    u = np.asarray(eval_u(ef, r, theta))
    urr = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h)
    ur = (3.0 * u[0] - 4.0 * u[1] + u[2]) / (2.0 * h)
    return float(urr + ur)


# ---------------------------------------------------------------------------
# identities used as quadrature checks

def lommel_check(n: int, a: float, R: float, rtol: float = 1e-13) -> tuple[float, float]:
    """Quadrature and closed form of the integral of s J_n(a s)^2 over [0, R].

    Closed form: (R^2/2) (J_n'(aR)^2 + (1 - n^2/(aR)^2) J_n(aR)^2).
    """
    if a <= 0 or R <= 0:
        raise DomainError("need a > 0 and R > 0")

    def f(s):
        la, sa = specfun.log_abs_bessel_j_array(n, a * np.maximum(s, 1e-300))
        return s * np.exp(2.0 * la)

    quad = integrate(f, 0.0, R, points=64, rtol=rtol).value
    x = a * R
    j = specfun.bessel_j(n, x).value
    jp = specfun.bessel_deriv_j(n, x).value if n else -specfun.bessel_j(1, x).value
    closed = 0.5 * R * R * (jp * jp + (1.0 - (n / x) ** 2) * j * j)
    return quad, closed


def log_i0_norm_sq(lam_sqrt: float, R: float, tol: float = 1e-12) -> float:
    """log of the squared L2 norm of I_0(sqrt(lambda) |x|) over the disk of radius R."""

    def lf(s):
        s = np.maximum(s, 1e-300)
        return np.log(s) + 2.0 * specfun.log_bessel_i_array(0, lam_sqrt * s)

    return math.log(2.0 * math.pi) + integrate_log(lf, 0.0, R, tol=tol).value


def i0_coefficient(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    lam_sqrt: float,
    R: float,
    *,
    n_theta: int = 1024,
    rtol: float = 1e-12,
) -> float:
    """Coefficient b of f = b * I_0(sqrt(lambda) r)/I_0(sqrt(lambda) R) + (rest orthogonal).

    Projection in L2 of the disk of radius R: the angular mean is taken by the
    periodic trapezoid rule (exact below degree ``n_theta``), the radial inner
    products by Gauss-Legendre with the normalised basis function.
    """
    log_top = specfun.log_bessel_i(0, lam_sqrt * R).value
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta

    def basis(s):
        return np.exp(specfun.log_bessel_i_array(0, lam_sqrt * np.maximum(s, 1e-300)) - log_top)

    def numer(s):
        mean = np.mean(f(s[:, None], theta[None, :]), axis=1)
        return s * mean * basis(s)

    def denom(s):
        b = basis(s)
        return s * b * b

    top = integrate(numer, 0.0, R, points=64, rtol=rtol).value
    bot = integrate(denom, 0.0, R, points=64, rtol=rtol).value
    return top / bot


def boundary_integral(g: Callable[[np.ndarray], np.ndarray], points: int = 1 << 14) -> float:
    return trapezoid_periodic(g, points)


# ---------------------------------------------------------------------------
# grid export

def grid_rows(ef: DiskEigenfunction, r_grid: Iterable[float], theta_grid: Iterable[float]) -> list[tuple]:
    r = np.asarray(list(r_grid), dtype=float)
    th = np.asarray(list(theta_grid), dtype=float)
    R, T = np.meshgrid(r, th, indexing="ij")
    comp = eval_components(ef, R, T)
    u = np.asarray(comp.w) - np.asarray(comp.v)
    rows = []
    for idx in np.ndindex(R.shape):
        rows.append(
            (
                float(R[idx]),
                float(T[idx]),
                float(u[idx]),
                float(np.asarray(comp.v)[idx]),
                float(np.asarray(comp.w)[idx]),
                float(np.asarray(comp.log_abs_v)[idx]),
                float(np.asarray(comp.log_abs_w)[idx]),
            )
        )
    return rows


def write_grid_csv(ef: DiskEigenfunction, r_grid, theta_grid, stream) -> int:
    """Write the grid as CSV with '.' decimals and '\\n' line endings; returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    rows = grid_rows(ef, r_grid, theta_grid)
    for row in rows:
        writer.writerow([repr(v) for v in row])
    return len(rows)


def read_grid_csv(stream) -> list[dict]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise DomainError(f"unexpected CSV header {reader.fieldnames}")
    return [{k: float(v) for k, v in row.items()} for row in reader]


def grid_csv_text(ef: DiskEigenfunction, r_grid, theta_grid) -> str:
    buf = io.StringIO()
    write_grid_csv(ef, r_grid, theta_grid, buf)
    return buf.getvalue()
