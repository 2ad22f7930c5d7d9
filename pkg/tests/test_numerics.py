import math

import numpy as np
import pytest

from nodal_void import BracketFailure, DomainError, QuadratureUnconverged
from nodal_void.quadrature import composite_nodes, integrate, integrate_log, trapezoid_periodic
from nodal_void.roots import bisect, safeguarded_newton


def cubic_step(x):
    f = x ** 3 - 2.0
    return (f > 0) - (f < 0), -f / (3.0 * x * x)


class TestRoots:
    def test_newton_cube_root(self):
        x = safeguarded_newton(cubic_step, 0.5, 3.0, xtol=1e-15)
        assert abs(x - 2 ** (1 / 3)) < 1e-14

    def test_newton_survives_bad_steps(self):
        # the step points away from the root everywhere
        fn = lambda x: ((x > 1.0) - (x < 1.0), 10.0)
        assert abs(safeguarded_newton(fn, 0.0, 2.0, xtol=1e-12) - 1.0) < 1e-12

    def test_newton_requires_sign_change(self):
        with pytest.raises(BracketFailure):
            safeguarded_newton(cubic_step, 2.0, 3.0, xtol=1e-12)
        with pytest.raises(BracketFailure):
            safeguarded_newton(cubic_step, 3.0, 2.0, xtol=1e-12)

    def test_bisect_bracket(self):
        a, b = bisect(math.cos, 1.0, 2.0, xtol=1e-12)
        assert a <= math.pi / 2 <= b and b - a <= 1e-12

    def test_bisect_failure(self):
        with pytest.raises(BracketFailure):
            bisect(math.cos, 2.0, 3.0, xtol=1e-9)


class TestQuadrature:
    def test_nodes_and_weights(self):
        x, w = composite_nodes(0.0, 2.0, 64)
        assert x.size == 64 and abs(w.sum() - 2.0) < 1e-14
        assert np.all((x > 0) & (x < 2))

    def test_polynomial_exact(self):
        res = integrate(lambda s: s ** 7, 0.0, 1.0)
        assert abs(res.value - 1 / 8) < 1e-15

    def test_oscillatory(self):
        res = integrate(lambda s: np.cos(200.0 * s), 0.0, 1.0, rtol=1e-12)
        assert abs(res.value - math.sin(200.0) / 200.0) < 1e-13

    def test_log_domain_huge_integrand(self):
        # integral of e^{a s} over [0, 1] with a = 2000
        a = 2000.0
        res = integrate_log(lambda s: a * s, 0.0, 1.0, tol=1e-12)
        exact = a - math.log(a) + math.log1p(-math.exp(-a))
        assert abs(res.value - exact) < 1e-11

    def test_unconverged(self):
        with pytest.raises(QuadratureUnconverged):
            integrate(lambda s: np.sign(s - 1 / 3), 0.0, 1.0, rtol=1e-15, max_points=256)

    def test_bad_limits(self):
        with pytest.raises(DomainError):
            integrate(np.sin, 1.0, 0.0)
        with pytest.raises(DomainError):
            integrate(np.sin, 0.0, 1.0, points=4)

    def test_periodic_trapezoid_exact_for_trig_polynomials(self):
        val = trapezoid_periodic(lambda t: (1 + np.cos(3 * t)) ** 2 * np.cos(6 * t), 64)
        assert abs(val - math.pi / 2) < 1e-14
