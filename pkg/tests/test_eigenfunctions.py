import io
import math

import numpy as np
import pytest

from nodal_void import DomainError
from nodal_void import specfun as sf
from nodal_void.disk_spectrum import first_mode, radial_mode
from nodal_void.eigenfunctions import (
    CSV_HEADER,
    DiskEigenfunction,
    boundary_laplacian,
    boundary_laplacian_fd,
    eval_components,
    eval_u,
    grid_csv_text,
    grid_rows,
    i0_coefficient,
    l2_norm_sq,
    lommel_check,
    radial_derivative,
    read_grid_csv,
)


@pytest.fixture(scope="module")
def ef100():
    return DiskEigenfunction(first_mode(100))


def test_normalisation_constant(ef100):
    assert abs(ef100.c ** 2 - 1 / math.pi) < 1e-16


def test_parity_validation():
    with pytest.raises(DomainError):
        DiskEigenfunction(first_mode(5), parity="tan")
    with pytest.raises(DomainError):
        DiskEigenfunction(radial_mode(1), parity="sin")


class TestPointValues:
    def test_clamped_boundary(self, ef100):
        th = np.linspace(0, 2 * math.pi, 17)
        assert np.max(np.abs(eval_u(ef100, np.ones_like(th), th))) < 1e-12

    def test_normal_derivative_vanishes(self, ef100):
        h = 1e-6
        fd = (eval_u(ef100, 1.0, 0.0) - eval_u(ef100, 1.0 - h, 0.0)) / h
        assert abs(fd) < 1e-6 * ef100.lam
        assert abs(radial_derivative(ef100, 1.0, 0.0)) < 1e-8 * ef100.xi

    def test_nodal_line_of_cos(self, ef100):
        assert abs(eval_u(ef100, 0.7, math.pi / (2 * ef100.N))) < 1e-14

    def test_matches_mpmath(self):
        import mpmath

        m = first_mode(12)
        ef = DiskEigenfunction(m, parity="sin")
        r, th = 0.63, 0.21
        x = mpmath.mpf(m.xi)
        ref = (mpmath.besselj(12, x * r) / mpmath.besselj(12, x) - mpmath.besseli(12, x * r) / mpmath.besseli(12, x))
        ref = float(ref * mpmath.sin(12 * th) / mpmath.sqrt(mpmath.pi))
        assert abs(eval_u(ef, r, th) - ref) < 1e-13


class TestComponents:
    def test_u_is_w_minus_v(self, ef100):
        r = np.linspace(0, 1, 41)[:, None]
        th = np.linspace(0, 1, 7)[None, :]
        c = eval_components(ef100, r, th)
        assert np.max(np.abs(c.w - c.v - eval_u(ef100, r, th))) < 1e-14

    def test_boundary_and_origin(self, ef100):
        c = eval_components(ef100, 1.0, 0.3)
        assert abs(c.v - c.w) < 1e-14
        assert eval_components(ef100, 0.0, 0.3).v == 0.0

    def test_log_magnitudes_survive_underflow(self, ef100):
        c = eval_components(ef100, 1e-4, 0.0)
        assert c.v == 0.0 and c.w == 0.0
        assert -1e4 < c.log_abs_w < c.log_abs_v < -745

    def test_helmholtz_residual(self, ef100):
        r, h, N = 0.5, 1e-5, ef100.N
        v = [eval_components(ef100, r + k * h, 0.0).v for k in (-1, 0, 1)]
        lap = (v[2] - 2 * v[1] + v[0]) / h ** 2 + (v[2] - v[0]) / (2 * h * r) - N * N * v[1] / r ** 2
        assert abs(lap + ef100.lam * v[1]) <= 1e-4 * ef100.lam * abs(v[1])


class TestNorms:
    @pytest.mark.parametrize("N", [105, 111, 117])
    def test_unit_norm_for_certified_modes(self, N):
        assert abs(l2_norm_sq(DiskEigenfunction(first_mode(N))) - 1) < 1e-6

    def test_bilinear_in_scale(self):
        m = first_mode(30)
        assert abs(l2_norm_sq(DiskEigenfunction(m, scale=2.0)) - 4 * l2_norm_sq(DiskEigenfunction(m))) < 1e-10

    def test_parities_agree(self):
        m = first_mode(30)
        a = l2_norm_sq(DiskEigenfunction(m, "cos"))
        b = l2_norm_sq(DiskEigenfunction(m, "sin"))
        assert abs(a - b) < 1e-12

    def test_too_few_points(self, ef100):
        with pytest.raises(DomainError):
            l2_norm_sq(ef100, quad_points=32)


class TestBoundaryLaplacian:
    def test_closed_form(self, ef100):
        assert abs(boundary_laplacian(ef100, math.pi / (2 * ef100.N))) < 1e-9 * ef100.lam
        exact = -2 * ef100.lam / math.sqrt(math.pi)
        assert abs(boundary_laplacian(ef100, 0.0) - exact) <= 1e-15 * abs(exact)

    def test_finite_difference(self, ef100):
        exact = boundary_laplacian(ef100, 0.0)
        assert abs(boundary_laplacian_fd(ef100, 0.0) - exact) < 1e-3 * abs(exact)


class TestIdentities:
    @pytest.mark.parametrize("r", [0.3, 0.7, 1 - 1 / 105])
    def test_lommel(self, first_mode_105, r):
        quad, closed = lommel_check(0, first_mode_105.xi, r)
        assert abs(quad - closed) <= 1e-8 * abs(closed)

    def test_i0_coefficient_round_trip(self, first_mode_105):
        m = first_mode_105
        R = 1 - 1 / m.N
        s = m.xi
        ef = DiskEigenfunction(m)
        b = -0.37
        log_top = sf.log_bessel_i(0, s * R).value

        def f(r, th):
            base = np.exp(sf.log_bessel_i_array(0, s * np.maximum(r, 1e-300)) - log_top)
            w = eval_components(ef, r, th).w
            return b * base + w

        assert abs(i0_coefficient(f, s, R) - b) < 1e-8


class TestCsv:
    def test_header_and_round_trip(self, ef100):
        text = grid_csv_text(ef100, [0.5, 1.0], [0.0, 0.1])
        assert text.splitlines()[0] == ",".join(CSV_HEADER)
        assert "\r" not in text
        rows = read_grid_csv(io.StringIO(text))
        assert rows == [dict(zip(CSV_HEADER, r)) for r in grid_rows(ef100, [0.5, 1.0], [0.0, 0.1])]
        for row in rows:
            if row["r"] == 1.0:
                assert abs(row["u"]) < 1e-12
            assert abs(row["u"] - eval_u(ef100, row["r"], row["theta"])) <= 1e-13 * abs(row["v"])

    def test_bad_header(self):
        with pytest.raises(DomainError):
            read_grid_csv(io.StringIO("a,b\n1,2\n"))
