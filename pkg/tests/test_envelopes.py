import math

import mpmath
import numpy as np
import pytest

from nodal_void import DivergentEnvelope, DomainError
from nodal_void.envelopes import (
    check_lemma3_i,
    check_lemma3_i0,
    check_lemma3_j,
    lemma3_i_quantity,
    lemma3_sweep,
    lemma5_lower_bounds,
    lemma6_oracle,
    remainder_envelope_v1,
    remainder_envelope_vtail,
    remainder_envelope_wtail,
    rho,
    rho_difference_monotone,
    rho_plus,
    rho_prime,
    sp_lower,
)


class TestProfiles:
    def test_rho_at_one(self):
        assert rho(1.0) == 0.0
        assert rho(3.0) == 0.0

    def test_log_divergence(self):
        assert rho(0.001) < -6

    def test_derivative(self):
        x, h = 0.5, 1e-6
        fd = (rho(x + h) - rho(x - h)) / (2 * h)
        assert abs(fd - math.sqrt(1 - x * x) / x) < 1e-8
        assert rho_prime(x) == math.sqrt(0.75) / 0.5

    def test_stable_near_one(self):
        x = 1 - 1e-12
        ref = mpmath.mpf(x)
        s = mpmath.sqrt(1 - ref ** 2)
        exact = float(mpmath.log(ref) + s - mpmath.log(1 + s))
        assert abs(rho(x) - exact) < 1e-16 * 10

    def test_monotone(self):
        x = np.linspace(1e-3, 1.5, 3000)
        assert np.all(np.diff(rho(x)) >= 0)
        t = np.geomspace(1e-3, 100, 3000)
        assert np.all(np.diff(rho_plus(t)) > 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            rho(0.0)
        with pytest.raises(DomainError):
            rho_plus(-1.0)

    def test_difference_increasing(self):
        assert rho_difference_monotone().passed


class TestLemma3Sweep:
    def test_j_sandwich_examples(self):
        assert check_lemma3_j(10, 0.5).ok()
        assert check_lemma3_j(1, 0.1).ok()
        m = check_lemma3_j(40, 1 - 1e-9)
        assert m.upper >= 0 and m.ok()

    @pytest.mark.parametrize("n,x", [(1, 0.5), (10, 2.0), (100, 1.0)])
    def test_i_interval_examples(self, n, x):
        m = check_lemma3_i(n, x)
        assert m.lower > 0 and m.upper > 0

    def test_antiderivative_increasing(self):
        # r(y) = rho_+(y) - log((n+1)/n + y^2)/(4n) - log(I_n(n y))/n
        n = 5
        ys = (0.5, 1.0, 2.0)
        r = [rho_plus(y) - math.log((n + 1) / n + y * y) / (4 * n)
             - float(mpmath.log(mpmath.besseli(n, n * y))) / n for y in ys]
        assert r[0] < r[1] < r[2]
        for y, ry in zip(ys, r):
            q = lemma3_i_quantity(n, y)[0]
            assert abs(ry - (0.5 * math.log(2 * math.pi * n) - q) / n) < 1e-12

    def test_i_upper_gap_at_n1(self):
        assert check_lemma3_i(1, 3.0).upper > 0

    def test_i0_examples(self):
        assert check_lemma3_i0(100.0, 0.5)[0] > 0
        assert check_lemma3_i0(400.0, 0.44)[0] > 0
        near = check_lemma3_i0(100.0, 1 - 1e-7)[0]
        assert 0 < near < 1e-5

    def test_domain(self):
        with pytest.raises(DomainError):
            check_lemma3_j(0, 0.5)
        with pytest.raises(DomainError):
            check_lemma3_i0(10.0, 1.0)

    def test_small_sweep(self):
        rep = lemma3_sweep(n_max=25)
        assert rep.passed, rep.table()
        assert rep.info["grid"]["n"] == [1, 25]


class TestLemma5LowerBounds:
    def test_bounds(self, first_mode_105):
        res = lemma5_lower_bounds(105, first_mode_105.xi)
        assert res.ratio_j >= 1 and res.ratio_i >= 1 and res.intermediate_ratio_j >= 1
        assert res.quad_err <= 1e-8
        # the J_0 norm and its Lommel closed form are two routes to one number
        assert abs(res.half_integral_j - math.pi * res.lommel_closed_form) <= 1e-8 * res.half_integral_j

    def test_window_required(self):
        with pytest.raises(DomainError):
            lemma5_lower_bounds(105, 200.0)
        with pytest.raises(DomainError):
            lemma5_lower_bounds(50, 55.0)


class TestLemma6Oracle:
    def test_wtail_algebra(self):
        N = 100
        r = (1 - 1 / N) * 2 ** (-1 / N)
        assert abs(remainder_envelope_wtail(N, r) - math.log(4 * math.sqrt(N))) < 1e-12

    def test_vtail_formula(self):
        N, r = 120, 0.3
        q = math.exp(N * rho(r / (1 - 1 / N)))
        assert abs(remainder_envelope_vtail(N, r) - math.log(10 * N * q * q / (1 - q) ** 2)) < 1e-10

    def test_v1_and_sp_lower_formulas(self, first_mode_105):
        s = first_mode_105.xi
        r = 0.25
        assert abs(remainder_envelope_v1(105, s, r) - (math.log(525) + 105 * rho(s * r / 105))) < 1e-12
        ref = float(mpmath.log(mpmath.besseli(0, s))) - s * (1 - r)
        assert abs(sp_lower(105, s, r) - ref) < 1e-9

    def test_near_edge_is_finite(self):
        N = 100
        r = np.nextafter(1 - 1 / N, 0.0)
        assert 60 < remainder_envelope_vtail(N, r) < math.inf
        assert 60 < remainder_envelope_wtail(N, r) < math.inf

    def test_divergent_guard(self, monkeypatch):
        import nodal_void.envelopes as env

        monkeypatch.setattr(env, "rho", lambda x: np.zeros_like(np.asarray(x, dtype=float)))
        with pytest.raises(DivergentEnvelope):
            env.remainder_envelope_vtail(100, 0.5)

    def test_radius_domain(self):
        with pytest.raises(DomainError):
            remainder_envelope_wtail(100, 0.995)

    def test_small_oracle(self, first_mode_105):
        outs = lemma6_oracle(105, first_mode_105.xi, trials=500, points=40, seed=5)
        assert [o.envelope for o in outs] == ["v1", "vtail", "wtail", "sp_lower"]
        assert all(o.violations == 0 for o in outs)

    def test_oracle_reproducible(self, first_mode_105):
        a = lemma6_oracle(105, first_mode_105.xi, trials=50, points=10, seed=9)
        b = lemma6_oracle(105, first_mode_105.xi, trials=50, points=10, seed=9)
        assert [o.as_dict() for o in a] == [o.as_dict() for o in b]
