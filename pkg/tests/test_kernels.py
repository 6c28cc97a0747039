import math

import numpy as np
import pytest

from baxterq.errors import PoleHit
from baxterq.kernels import (
    ModelParams,
    d_const,
    envelope_constants,
    kernel_K,
    kernel_K_gamma,
    kernel_product,
    lambda_kernel,
    measure_mu,
    measure_product,
    q_kernel,
)
from baxterq.special_functions import Periods, double_sine


class TestModelParams:
    def test_derived_fields(self):
        p = ModelParams.from_numbers(1.0, 2.0, 0.5)
        assert abs(p.gstar - 2.5) < 1e-15
        assert abs(p.nu_g - 0.25) < 1e-15

    def test_flags(self):
        p = ModelParams.from_numbers(1.0, 1.0, 1.5)
        flags = p.flags()
        assert flags["basic_regime"] and flags["decaying"] and flags["real_parameters"]
        assert not flags["below_omega2"]


class TestKernel:
    def test_even(self, generic_params):
        for z in (0.3, 1.7 + 0.1j, -2.2):
            assert abs(kernel_K(z, generic_params) - kernel_K(-z, generic_params)) < 1e-13

    def test_value_at_origin(self):
        p = ModelParams.from_numbers(1, 1, 1.0)
        assert abs(kernel_K(0.0, p) - 0.5) < 1e-13

    def test_gamma_form(self, generic_params):
        z = np.array([0.2, -1.3, 0.7 + 0.1j])
        a = kernel_K(z, generic_params)
        b = kernel_K_gamma(z, generic_params)
        assert np.max(np.abs(a - b) / np.abs(a)) < 1e-10

    def test_pole(self, generic_params):
        # K has a pole where i z + g*/2 reaches the origin
        z = -1j * (-0.5 * generic_params.gstar)
        with pytest.raises(PoleHit):
            kernel_K(z, generic_params)

    def test_envelopes(self, generic_params):
        ys = np.linspace(-30, 30, 241)
        c = envelope_constants(generic_params, ys)
        k = np.abs(kernel_K(ys, generic_params))
        m = np.abs(measure_mu(ys, generic_params))
        nu = generic_params.nu_g
        assert np.all(k <= c["C_K"] * np.exp(-np.pi * nu * np.abs(ys)) * (1 + 1e-12))
        assert np.all(m <= c["C_mu"] * np.exp(np.pi * nu * np.abs(ys)) * (1 + 1e-12))
        assert c["C_K"] < 10 * abs(kernel_K(0.0, generic_params))


class TestMeasure:
    def test_zero_at_origin(self, generic_params):
        assert measure_mu(0.0, generic_params) == 0

    def test_pair_nonnegative(self, unit_params):
        for x in (0.3, 1.2, 4.0):
            v = measure_mu(x, unit_params) * measure_mu(-x, unit_params)
            assert abs(v.imag) < 1e-12 * abs(v) and v.real > 0

    def test_product_single_point(self, generic_params):
        assert measure_product([0.4], generic_params) == 1

    def test_product_diagonal(self, generic_params):
        assert measure_product([0.4, 0.4], generic_params) == 0


class TestProducts:
    def test_reduces_to_single(self, generic_params):
        assert abs(kernel_product([0.3], [-0.2], generic_params) - kernel_K(0.5, generic_params)) < 1e-14

    def test_permutation_invariance(self, generic_params):
        z, y = [0.3, -0.4, 1.1], [0.2, 0.9, -1.0]
        a = kernel_product(z, y, generic_params)
        b = kernel_product(z[::-1], [y[1], y[2], y[0]], generic_params)
        assert abs(a - b) < 1e-13 * abs(a)

    def test_q_kernel_lambda_zero(self, generic_params):
        v = q_kernel([0.3], [-0.1], 0.0, generic_params)
        assert abs(v - kernel_K(0.4, generic_params)) < 1e-14

    def test_q_kernel_diagonal(self, generic_params):
        assert q_kernel([0.3, 0.5], [0.3, 0.3], 0.2, generic_params) == 0

    def test_q_kernel_modulus(self, generic_params):
        z, y = [0.3, 0.5], [0.1, -0.7]
        v = q_kernel(z, y, 0.37, generic_params)
        ref = kernel_product(z, y, generic_params) * measure_product(y, generic_params)
        assert abs(abs(v) - abs(ref)) < 1e-13 * abs(ref)

    def test_lambda_kernel_n2(self, generic_params):
        v = lambda_kernel([0.3, -0.5], [0.1], 0.0, generic_params)
        ref = kernel_K(0.2, generic_params) * kernel_K(-0.6, generic_params)
        assert abs(v - ref) < 1e-14


class TestDConst:
    def test_unit_periods(self):
        p = ModelParams.from_numbers(1, 1, 1.0)
        s = double_sine(1.0, Periods(1, 1))
        assert abs(d_const(2, p) - 1 / s) < 1e-13

    def test_needs_two(self, generic_params):
        with pytest.raises(ValueError):
            d_const(1, generic_params)
