"""Analytic Jacobians of the D_N-equivariant fields and their C^1 norms.

F_K(x, y) = Re((x + iy)^K) chi((x^2 + y^2)^N) (x, y), with chi a C^1 ramp from
0 below e^-2 to 1 above 1. The three deformations are
X1 = F_2N + F_0, X2 = F_N and X3 = F_3N + F_2N - F_0/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..audit import AuditReport
from ..errors import DomainError, RampViolation

RAMP_START = math.exp(-2.0)
RAMP_BUDGET = 6.0

FIELD_TERMS = {
    "X1": ((2, 1.0), (0, 1.0)),
    "X2": ((1, 1.0),),
    "X3": ((3, 1.0), (2, 1.0), (0, -0.5)),
}
# multiples of N in the harmonic index, stated bounds in units of N^2
STATED_BOUNDS = {"X1": 600.0, "X2": 230.0, "X3": 1070.0}
# coefficient polynomials (a N^2 + b N + c) times the ramp budget
STATED_POLYS = {"X1": (80.0, 36.0, 4.0), "X2": (36.0, 18.0, 2.0), "X3": (172.0, 60.0, 5.0)}


@dataclass(frozen=True)
class RampSpec:
    """chi together with its first two derivatives, all vectorised."""

    chi: Callable[[np.ndarray], np.ndarray]
    dchi: Callable[[np.ndarray], np.ndarray]
    d2chi: Callable[[np.ndarray], np.ndarray]
    start: float = RAMP_START
    name: str = "custom"

    def norms(self, samples: int = 20001) -> tuple[float, float, float]:
        s = np.linspace(0.0, 1.5, samples)
        s = np.union1d(s, np.linspace(self.start, 1.0, samples))
        return (
            float(np.max(np.abs(self.chi(s)))),
            float(np.max(np.abs(self.dchi(s)))),
            float(np.max(np.abs(self.d2chi(s)))),
        )

    def validate(self, budget: float = RAMP_BUDGET, samples: int = 20001) -> tuple[float, float, float]:
        """Check the shape constraints and the derivative budget; returns the sampled norms."""
        below = np.linspace(0.0, self.start, 64, endpoint=False)
        above = np.linspace(1.0, 2.0, 64)
        if np.any(self.chi(below) != 0.0) or np.any(self.dchi(below) != 0.0):
            raise RampViolation("ramp must vanish identically below its start")
        if np.any(np.abs(self.chi(above) - 1.0) > 1e-14) or np.any(np.abs(self.dchi(above)) > 1e-12):
            raise RampViolation("ramp must equal 1 at and above 1")
        norms = self.norms(samples)
        if max(norms) > budget:
            raise RampViolation(f"ramp derivative norms {norms} exceed budget {budget}")
        return norms


def quadratic_ramp(start: float = RAMP_START) -> RampSpec:
    """Piecewise-quadratic C^1 ramp on [start, 1]; |chi''| = 4/(1 - start)^2."""
    if not 0.0 <= start < 1.0:
        raise DomainError("ramp start must lie in [0, 1)")
    L = 1.0 - start
    mid = 0.5 * (start + 1.0)

    def chi(s):
        s = np.asarray(s, dtype=float)
        u = (s - start) / L
        out = np.where(s < mid, 2.0 * u * u, 1.0 - 2.0 * (1.0 - u) ** 2)
        return np.where(s <= start, 0.0, np.where(s >= 1.0, 1.0, out))

    def dchi(s):
        s = np.asarray(s, dtype=float)
        u = (s - start) / L
        out = np.where(s < mid, 4.0 * u / L, 4.0 * (1.0 - u) / L)
        return np.where((s <= start) | (s >= 1.0), 0.0, out)

    def d2chi(s):
        s = np.asarray(s, dtype=float)
        out = np.where(s < mid, 4.0 / L ** 2, -4.0 / L ** 2)
        return np.where((s <= start) | (s >= 1.0), 0.0, out)

    return RampSpec(chi, dchi, d2chi, start, "quadratic")


def _zpow(z: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return np.zeros_like(z)
    return z ** k


def field_jacobians(K: int, N: int, ramp: RampSpec, x: np.ndarray, y: np.ndarray):
    """Value phi, Jacobian J and its partials dJ/dx, dJ/dy for F_K = phi (x, y).

    Arrays J, Jx, Jy have shape x.shape + (2, 2).
    """
    z = x + 1j * y
    rho = x * x + y * y
    p = np.real(_zpow(z, K))
    dz = K * _zpow(z, K - 1)
    px, py = np.real(dz), -np.imag(dz)
    d2z = K * (K - 1) * _zpow(z, K - 2)
    pxx, pxy, pyy = np.real(d2z), -np.imag(d2z), -np.real(d2z)

    s = rho ** N
    c0, c1, c2 = ramp.chi(s), ramp.dchi(s), ramp.d2chi(s)
    rN1 = rho ** (N - 1)
    sx, sy = 2.0 * N * rN1 * x, 2.0 * N * rN1 * y
    rN2 = rho ** (N - 2) if N >= 2 else np.zeros_like(rho)
    sxx = 2.0 * N * rN1 + 4.0 * N * (N - 1) * rN2 * x * x
    syy = 2.0 * N * rN1 + 4.0 * N * (N - 1) * rN2 * y * y
    sxy = 4.0 * N * (N - 1) * rN2 * x * y
    cx, cy = c1 * sx, c1 * sy
    cxx = c2 * sx * sx + c1 * sxx
    cyy = c2 * sy * sy + c1 * syy
    cxy = c2 * sx * sy + c1 * sxy

    phi = p * c0
    g = (px * c0 + p * cx, py * c0 + p * cy)
    H = (
        (pxx * c0 + 2.0 * px * cx + p * cxx, pxy * c0 + px * cy + py * cx + p * cxy),
        (pxy * c0 + px * cy + py * cx + p * cxy, pyy * c0 + 2.0 * py * cy + p * cyy),
    )
    X = (x, y)
    # J_ij = phi delta_ij + x_i d_j phi
    J = np.empty(x.shape + (2, 2))
    for i in range(2):
        for j in range(2):
            J[..., i, j] = (phi if i == j else 0.0) + X[i] * g[j]
    # d_k J_ij = d_k phi delta_ij + delta_ik d_j phi + x_i d_jk phi
    dJ = []
    for k in range(2):
        D = np.empty(x.shape + (2, 2))
        for i in range(2):
            for j in range(2):
                D[..., i, j] = (g[k] if i == j else 0.0) + (g[j] if i == k else 0.0) + X[i] * H[j][k]
        dJ.append(D)
    return phi, J, dJ[0], dJ[1]


def op_norm_2x2(A: np.ndarray) -> np.ndarray:
    """Largest singular value of a stack of 2x2 matrices."""
    a, b, c, d = A[..., 0, 0], A[..., 0, 1], A[..., 1, 0], A[..., 1, 1]
    S = a * a + b * b + c * c + d * d
    det = a * d - b * c
    disc = np.sqrt(np.maximum(S * S - 4.0 * det * det, 0.0))
    return np.sqrt(0.5 * (S + disc))


def combined_jacobians(name: str, N: int, ramp: RampSpec, x, y):
    J = Jx = Jy = 0.0
    for mult, coef in FIELD_TERMS[name]:
        _, j, jx, jy = field_jacobians(mult * N, N, ramp, x, y)
        J = J + coef * j
        Jx = Jx + coef * jx
        Jy = Jy + coef * jy
    return J, Jx, Jy


@dataclass
class C1Norm:
    sup_J: float
    sup_dxJ: float
    sup_dyJ: float
    argmax_r: float = math.nan
    extras: dict = field(default_factory=dict)

    @property
    def total(self) -> float:
        return self.sup_J + self.sup_dxJ + self.sup_dyJ


def c1_norm(name: str, N: int, ramp: RampSpec, *, n_r: int = 512, n_theta: int = 2048,
            chunk: int = 64) -> C1Norm:
    """Sampled ||J||_C1 = sup|J| + sup|dJ/dx| + sup|dJ/dy| over the support annulus.

    The fields vanish for r^(2N) <= ramp start, so the grid covers
    [start^(1/(2N)), 1] in r; the ramp breakpoints are included as nodes.
    """
    if name not in FIELD_TERMS:
        raise DomainError(f"unknown field {name!r}")
    r0 = ramp.start ** (1.0 / (2 * N))
    r = np.linspace(r0, 1.0, n_r)
    mid = (0.5 * (ramp.start + 1.0)) ** (1.0 / (2 * N))
    r = np.union1d(r, [mid])
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    ct, st = np.cos(theta), np.sin(theta)
    best = [0.0, 0.0, 0.0]
    arg_r = math.nan
    for start in range(0, r.size, chunk):
        rr = r[start:start + chunk, None]
        x, y = rr * ct[None, :], rr * st[None, :]
        J, Jx, Jy = combined_jacobians(name, N, ramp, x, y)
        vals = [op_norm_2x2(J), op_norm_2x2(Jx), op_norm_2x2(Jy)]
        for i, v in enumerate(vals):
            m = float(np.max(v))
            if m > best[i]:
                best[i] = m
                if i == 1:
                    arg_r = float(rr.ravel()[np.unravel_index(np.argmax(v), v.shape)[0]])
    return C1Norm(best[0], best[1], best[2], arg_r)


def audit_lemma10_jacobians(N: int, chi: RampSpec | None = None, *, n_r: int = 512,
                            n_theta: int = 2048) -> AuditReport:
    """Sampled C^1 norms of X1, X2, X3 against 600 N^2, 230 N^2 and 1070 N^2."""
    if N < 1:
        raise DomainError("N must be positive")
    ramp = chi if chi is not None else quadratic_ramp()
    norms = ramp.validate()
    rep = AuditReport("10")
    rep.info.update({"N": N, "ramp": ramp.name, "ramp_norms": list(norms), "grid": [n_r, n_theta]})
    rep.le("ramp derivative budget max(|chi|,|chi'|,|chi''|)", max(norms), RAMP_BUDGET)
    rep.le("(1 - 1/N)^(2N) <= ramp start", (1.0 - 1.0 / N) ** (2 * N), ramp.start)

    # identically zero on r <= 1 - 1/N
    rr = np.linspace(0.0, 1.0 - 1.0 / N, 64)
    th = np.linspace(0.0, 2.0 * math.pi, 37)
    R, T = np.meshgrid(rr, th)
    worst = 0.0
    for name in FIELD_TERMS:
        J, Jx, Jy = combined_jacobians(name, N, ramp, R * np.cos(T), R * np.sin(T))
        worst = max(worst, float(np.max(np.abs(J))), float(np.max(np.abs(Jx))), float(np.max(np.abs(Jy))))
    rep.le("fields vanish on r <= 1 - 1/N", worst, 0.0)

    # F_0 is the radial field at r = 1, where chi = 1 and chi' = 0
    th = np.linspace(0.0, 2.0 * math.pi, 17)
    _, J0, _, _ = field_jacobians(0, N, ramp, np.cos(th), np.sin(th))
    dev = float(np.max(np.abs(J0 - np.eye(2))))
    # rounding in rho^N near 1 leaks through chi' ~ 4/(1 - start)
    rep.le("Jacobian of F_0 on the unit circle is the identity", dev, 1e-12 * N)

    total = 0.0
    for name in ("X1", "X2", "X3"):
        cn = c1_norm(name, N, ramp, n_r=n_r, n_theta=n_theta)
        total += cn.total
        a, b, c = STATED_POLYS[name]
        poly = (a * N * N + b * N + c) * RAMP_BUDGET
        rep.info[name] = {"sup_J": cn.sup_J, "sup_dxJ": cn.sup_dxJ, "sup_dyJ": cn.sup_dyJ,
                          "c1": cn.total, "ratio_to_N2": cn.total / N ** 2}
        rep.le(f"||J_{name}||_C1 sampled <= {STATED_BOUNDS[name]:g} N^2", cn.total, STATED_BOUNDS[name] * N * N)
        rep.le(f"||J_{name}||_C1 sampled <= coefficient polynomial", cn.total, poly)
        rep.le(f"coefficient polynomial for {name} <= {STATED_BOUNDS[name]:g} N^2", poly, STATED_BOUNDS[name] * N * N)
    rep.le("sum of C1 norms <= 1900 N^2", total, 1900.0 * N * N)
    rep.info["sum_c1"] = total
    return rep
