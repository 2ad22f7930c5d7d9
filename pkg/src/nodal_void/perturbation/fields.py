"""Boundary deformations as finite cosine series and their first-order effects."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..config import DEFAULT_ACCURACY, Accuracy
from ..disk_spectrum import NondegeneracyCertificate, PlateMode, cross_ratio_w
from ..errors import DomainError, NondegeneracyRequired
from .. import specfun
from ..quadrature import trapezoid_periodic


@dataclass(frozen=True)
class BoundaryField:
    """Normal component X.n(theta) = sum_m a_m cos(m theta) on the unit circle."""

    coeffs: Mapping[int, float]

    def __post_init__(self):
        clean = {}
        for m, a in dict(self.coeffs).items():
            if int(m) != m or m < 0:
                raise DomainError("harmonic indices must be nonnegative integers")
            a = float(a)
            if not math.isfinite(a):
                raise DomainError("coefficients must be finite")
            if a != 0.0:
                clean[int(m)] = clean.get(int(m), 0.0) + a
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def a(self, m: int) -> float:
        return self.coeffs.get(int(m), 0.0)

    def __call__(self, theta):
        th = np.asarray(theta, dtype=float)
        out = np.zeros_like(th)
        for m, a in self.coeffs.items():
            out = out + a * np.cos(m * th)
        return float(out) if np.ndim(out) == 0 else out

    def __add__(self, other: "BoundaryField") -> "BoundaryField":
        merged = dict(self.coeffs)
        for m, a in other.coeffs.items():
            merged[m] = merged.get(m, 0.0) + a
        return BoundaryField(merged)

    def __mul__(self, other):
        if isinstance(other, BoundaryField):
            return self.product(other)
        return BoundaryField({m: float(other) * a for m, a in self.coeffs.items()})

    __rmul__ = __mul__

    def product(self, other: "BoundaryField") -> "BoundaryField":
        """Exact product via cos(p)cos(q) = (cos(p-q) + cos(p+q))/2."""
        out: dict[int, float] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                for m in (abs(p - q), p + q):
                    out[m] = out.get(m, 0.0) + 0.5 * a * b
        return BoundaryField(out)

    def square(self) -> "BoundaryField":
        return self.product(self)

    def integral_against_cos(self, n: int) -> float:
        """Closed form of the integral over [0, 2 pi) of X.n(theta) cos(n theta)."""
        if n == 0:
            return 2.0 * math.pi * self.a(0)
        return math.pi * self.a(n)

    def as_dict(self) -> dict:
        return {str(m): a for m, a in self.coeffs.items()}


def scaling_field() -> BoundaryField:
    """Normal component of r d/dr on the unit circle."""
    return BoundaryField({0: 1.0})


def field_x1(N: int) -> BoundaryField:
    return BoundaryField({0: 1.0, 2 * N: 1.0})


def field_x2(N: int) -> BoundaryField:
    return BoundaryField({N: 1.0})


def field_x3(N: int) -> BoundaryField:
    return BoundaryField({0: -0.5, 2 * N: 1.0, 3 * N: 1.0})


def _cos_mode(mode: PlateMode, parity: str):
    if parity != "cos":
        raise DomainError("the closed forms here assume the cos parity")
    if mode.N < 1:
        raise DomainError("need angular index N >= 1")


# ---------------------------------------------------------------------------
# eigenvalue variation

def hadamard_dlambda2(mode: PlateMode, field: BoundaryField, parity: str = "cos") -> float:
    """d(lambda^2)/dt = -(2 lambda^2/pi) int X.n (1 + cos 2N theta) = -2 lambda^2 (2 a_0 + a_2N)."""
    _cos_mode(mode, parity)
    return -2.0 * mode.lam ** 2 * (2.0 * field.a(0) + field.a(2 * mode.N))


def hadamard_dlambda2_quadrature(mode: PlateMode, field: BoundaryField, points: int = 1 << 14) -> float:
    """Same quantity as -(4 lambda^2/pi) int X.n cos^2(N theta), by the trapezoid rule."""
    lam = mode.lam
    N = mode.N
    integral = trapezoid_periodic(lambda th: field(th) * np.cos(N * th) ** 2, points)
    return -(4.0 * lam ** 2 / math.pi) * integral


# ---------------------------------------------------------------------------
# Helmholtz value at the origin

def _require_certificate(mode: PlateMode, cert: NondegeneracyCertificate | None):
    if cert is None:
        raise NondegeneracyRequired("a nondegeneracy certificate is required")
    if cert.N != mode.N:
        raise NondegeneracyRequired(f"certificate is for N={cert.N}, mode has N={mode.N}")
    if not cert.passed:
        raise NondegeneracyRequired(f"certificate for N={cert.N} failed: {cert.failed_checks()}")


def dv0_coefficient(mode: PlateMode, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """sqrt(lambda)/sqrt(pi) / (J_0(sqrt(lambda)) W_0(sqrt(lambda))), the response to a_N = 1."""
    x = mode.xi
    j0 = specfun.bessel_j(0, x, acc).value
    w0 = cross_ratio_w(0, x, acc)
    return x / math.sqrt(math.pi) / (j0 * w0)


def dv0(mode: PlateMode, field: BoundaryField, cert: NondegeneracyCertificate | None = None,
        acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """First variation of the Helmholtz component at the origin.

    (sqrt(lambda)/sqrt(pi^3)) J_0^{-1} W_0^{-1} times the integral of X.n cos(N theta),
    which is pi a_N.
    """
    _cos_mode(mode, "cos")
    _require_certificate(mode, cert)
    aN = field.a(mode.N)
    if aN == 0.0:
        return 0.0
    return dv0_coefficient(mode, acc) * aN


# ---------------------------------------------------------------------------
# second variation of the screened-Poisson component at the origin

@dataclass(frozen=True)
class SecondVariation:
    gamma_N: float
    alpha: float
    w0dd: float
    log_abs_w0dd: float
    sign_w0dd: int

    def __iter__(self):
        return iter((self.alpha, self.w0dd))


def alpha_and_w0dd(mode: PlateMode, field: BoundaryField, parity: str = "cos",
                   acc: Accuracy = DEFAULT_ACCURACY) -> SecondVariation:
    """alpha = (1/2pi) int (X.n)^2 Lap u with Lap u = -(2 lambda/sqrt(pi)) cos(N theta).

    The cos(N theta) coefficient gamma_N of (X.n)^2 is exact, so
    alpha = -lambda gamma_N / sqrt(pi); the second variation of w at the
    origin is alpha / I_0(sqrt(lambda)), formed in log space.
    """
    _cos_mode(mode, parity)
    gamma = field.square().a(mode.N)
    alpha = -mode.lam * gamma / math.sqrt(math.pi)
    if alpha == 0.0:
        return SecondVariation(gamma, 0.0, 0.0, -math.inf, 0)
    log_i0 = specfun.log_bessel_i(0, mode.xi, acc).value
    la = math.log(abs(alpha)) - log_i0
    sign = 1 if alpha > 0 else -1
    return SecondVariation(gamma, alpha, sign * math.exp(la), la, sign)


def square_cos_integral_quadrature(field: BoundaryField, n: int, points: int = 1 << 14) -> float:
    """Trapezoid value of the integral of (X.n)^2 cos(n theta) over the circle."""
    return trapezoid_periodic(lambda th: field(th) ** 2 * np.cos(n * th), points)


# ---------------------------------------------------------------------------
# tangent space of the level set {lambda = const, v(0) = 0}

def tangent_constraints(field: BoundaryField, N: int) -> tuple[float, float]:
    """(a_N, 2 a_0 + a_2N): both vanish exactly on the tangent space."""
    return field.a(N), 2.0 * field.a(0) + field.a(2 * N)


def tangent_space_member(field: BoundaryField, N: int, tol: float = 0.0) -> bool:
    c1, c2 = tangent_constraints(field, N)
    return abs(c1) <= tol and abs(c2) <= tol
