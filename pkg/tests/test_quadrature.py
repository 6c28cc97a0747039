import cmath
import math

import numpy as np
import pytest

from baxterq.difference_ops import gaussian
from baxterq.errors import RegimeViolation, StripExceeded
from baxterq.kernels import ModelParams
from baxterq.quadrature import (
    IntegrationPlan,
    apply_Q_operator,
    eigenfunction_check_n2,
    integrate_Q,
    lambda_analyticity,
    self_convergence,
    verify_commutativity,
    verify_MQ_commutation,
    verify_series_vs_quadrature,
)
from baxterq.residue_series import SeriesOrder

PLAN = IntegrationPlan(tol=1e-10)


class TestIntegrateQ:
    def test_symmetric_point_is_real_positive(self, unit_params):
        q = integrate_Q([0.0, 0.0], 0.0, unit_params, PLAN)
        assert q.value.real > 0
        assert abs(q.value.imag) < 1e-10 * q.value.real

    def test_self_convergence(self, unit_params):
        out = self_convergence([0.3, -0.2], 0.2, unit_params, PLAN)
        assert out["change"] < 1e-9 * abs(out["value"])

    def test_swap_symmetry(self, unit_params):
        # the kernel is even and the measure is symmetric in y
        a = integrate_Q([0.3, -0.2], 0.0, unit_params, PLAN).value
        b = integrate_Q([-0.2, 0.3], 0.0, unit_params, PLAN).value
        assert abs(a - b) < 1e-9 * abs(a)

    def test_regime_violation(self, unit_params):
        with pytest.raises(RegimeViolation):
            integrate_Q([0.3, -0.2], 1j * unit_params.nu_g, unit_params, PLAN)

    def test_strip_exceeded(self, unit_params):
        with pytest.raises(StripExceeded):
            integrate_Q([0.3 + 0.9j, -0.2 - 0.9j], 0.1, unit_params, PLAN)

    def test_rejects_n3(self, unit_params):
        with pytest.raises(ValueError):
            integrate_Q([0.1] * 6, 0.1, unit_params, PLAN)

    def test_analytic_in_lambda(self, unit_params):
        out = lambda_analyticity([0.3, -0.2], unit_params, centre=0.1, radius=0.1, plan=IntegrationPlan(tol=1e-9))
        assert out["residual"] < 1e-5


class TestCommutativity:
    @pytest.mark.parametrize("lam", [0.2, -0.5, 0.8])
    def test_n1(self, unit_params, lam):
        rep = verify_commutativity([0.3, -0.2], lam, unit_params, PLAN)
        assert rep.worst() < 1e-6

    def test_n1_complex_periods(self):
        p = ModelParams.from_numbers(1.0, 1.0 + 0.3j, 0.5)
        rep = verify_commutativity([0.3, -0.2], 0.3, p, PLAN)
        assert rep.worst() < 1e-6

    def test_n2(self, unit_params):
        rep = verify_commutativity([0.3, -0.2, 0.1, 0.45], 0.3, unit_params, IntegrationPlan.coarse())
        assert rep.worst() < 1e-4

    def test_zero_lambda(self, unit_params):
        assert verify_commutativity([0.3, -0.2], 0.0, unit_params, PLAN).passed


class TestOperator:
    plan = IntegrationPlan(tol=1e-10, decay_radius=9.0)

    def test_linearity(self, unit_params):
        f = gaussian([0.1], 1.0)
        g = gaussian([-0.3], 0.8)
        h = lambda x: 2.0 * f(x) - 0.5j * g(x)
        a = apply_Q_operator(f, [0.3], 0.2, unit_params, self.plan).value
        b = apply_Q_operator(g, [0.3], 0.2, unit_params, self.plan).value
        c = apply_Q_operator(h, [0.3], 0.2, unit_params, self.plan).value
        assert abs(c - (2.0 * a - 0.5j * b)) < 1e-10 * abs(c)

    def test_conjugation(self, unit_params):
        # real f, real z, real lambda: conj(Qf)(z; lam) = (Qf)(z; -lam)
        f = gaussian([0.1], 1.0)
        a = apply_Q_operator(f, [0.3], 0.2, unit_params, self.plan).value
        b = apply_Q_operator(f, [0.3], -0.2, unit_params, self.plan).value
        assert abs(a.conjugate() - b) < 1e-10 * abs(a)

    def test_mq_n1(self, unit_params):
        rep = verify_MQ_commutation(1, gaussian([0.1], 1.0), [0.3], 0.2, unit_params, self.plan)
        assert rep.worst() < 1e-6

    @pytest.mark.parametrize("r", [1, 2])
    def test_mq_n2(self, unit_params, r):
        f = gaussian([0.1, -0.2], 1.0, [0.3, -0.1])
        rep = verify_MQ_commutation(r, f, [0.3, -0.2], 0.2, unit_params, self.plan)
        assert rep.worst() < 1e-5

    def test_mq_needs_small_coupling(self):
        p = ModelParams.from_numbers(1.0, 1.0, 1.2)
        with pytest.raises(RegimeViolation):
            verify_MQ_commutation(1, gaussian([0.1], 1.0), [0.3], 0.2, p, self.plan)


class TestEigenfunction:
    def test_generic(self, unit_params):
        rep = eigenfunction_check_n2(0.1, -0.2, [0.4, -0.3], unit_params)
        assert rep.worst() < 1e-5

    def test_equal_parameters(self, unit_params):
        rep = eigenfunction_check_n2(0.15, 0.15, [0.4, -0.3], unit_params)
        assert rep.worst() < 1e-5

    def test_needs_real_parameters(self):
        p = ModelParams.from_numbers(1.0, 1.0 + 0.2j, 0.5)
        with pytest.raises(RegimeViolation):
            eigenfunction_check_n2(0.1, -0.2, [0.4, -0.3], p)


class TestSeriesAgainstQuadrature:
    def test_n1(self):
        p = ModelParams.from_numbers(1.0, math.sqrt(2), 0.5)
        rep = verify_series_vs_quadrature([0.3, -0.2], -1.0, p, SeriesOrder(8, 8), IntegrationPlan(tol=1e-11))
        assert rep.worst() < 1e-6
