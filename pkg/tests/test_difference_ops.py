import cmath
import math

import numpy as np
import pytest

from baxterq.difference_ops import (
    AnalyticTestFunction,
    binomial,
    elementary_symmetric,
    gaussian,
    hyperbolic_dressing,
    kernel_identity_residual,
    kernel_identity_sides,
    macdonald_apply,
    plane_wave,
    ruijsenaars_apply,
    ruijsenaars_apply_direct,
)
from baxterq.errors import CoincidingCoordinates, GaugeSingular, SingularDenominator, StripExceeded
from baxterq.kernels import ModelParams, kernel_product


class TestElementary:
    def test_small_cases(self):
        assert elementary_symmetric(1, [2, 5]) == 7
        assert elementary_symmetric(2, [2, 5]) == 10
        assert elementary_symmetric(0, [2, 5]) == 1


class TestMacdonald:
    def test_plane_wave_n1(self, generic_params):
        lam = 0.3
        val = macdonald_apply(1, plane_wave([lam]), [0.4], generic_params)
        ref = cmath.exp(2 * math.pi * lam * generic_params.omega.omega1) * cmath.exp(2j * math.pi * lam * 0.4)
        assert abs(val - ref) < 1e-13

    def test_full_shift(self, generic_params):
        f = gaussian([0.1, -0.3], 1.2, [0.2, 0.1])
        x = np.array([0.4, -0.2])
        val = macdonald_apply(2, f, x, generic_params)
        assert abs(val - f(x - 1j * generic_params.omega.omega1)) < 1e-14

    def test_zero_coupling(self):
        p = ModelParams.from_numbers(1.0, 1.3, 0.0)
        f = gaussian([0.1, -0.3, 0.2], 1.0)
        x = np.array([0.4, -0.2, 0.9])
        ref = sum(f(x - 1j * np.eye(3)[i]) for i in range(3))
        assert abs(macdonald_apply(1, f, x, p) - ref) < 1e-13

    def test_coinciding(self, generic_params):
        with pytest.raises(CoincidingCoordinates):
            macdonald_apply(1, gaussian([0, 0]), [0.2, 0.2], generic_params)

    def test_strip(self, generic_params):
        f = AnalyticTestFunction(lambda x: np.sum(x, axis=-1), strip_halfwidth=0.5)
        with pytest.raises(StripExceeded):
            macdonald_apply(1, f, [0.1, 0.4], generic_params)

    @pytest.mark.parametrize("n", [2, 3])
    def test_commuting(self, generic_params, n):
        rng = np.random.default_rng(n)
        f = gaussian(rng.uniform(-0.3, 0.3, n), 1.0, rng.uniform(-0.2, 0.2, n))
        x = rng.uniform(-1, 1, n)
        F1 = AnalyticTestFunction(lambda y: macdonald_apply(1, f, y, generic_params))
        F2 = AnalyticTestFunction(lambda y: macdonald_apply(2, f, y, generic_params))
        a = macdonald_apply(2, F1, x, generic_params)
        b = macdonald_apply(1, F2, x, generic_params)
        assert abs(a - b) < 1e-8 * max(1.0, abs(a))

    @pytest.mark.parametrize("r", [1, 2])
    def test_kernel_eigenrelation(self, unit_params, r):
        # M_r in z against M_r in -y annihilate the kernel product
        y = np.array([0.25, -0.6])
        z = np.array([0.3, -0.1])
        Kz = AnalyticTestFunction(lambda zz: kernel_product(zz, y, unit_params))
        Ky = AnalyticTestFunction(lambda yy: kernel_product(z, -yy, unit_params))
        a = macdonald_apply(r, Kz, z, unit_params)
        b = macdonald_apply(r, Ky, -y, unit_params)
        assert abs(a - b) < 1e-8 * abs(a)


class TestRuijsenaars:
    def test_n1_equals_macdonald(self, generic_params):
        f = gaussian([0.2])
        a = ruijsenaars_apply(1, f, [0.3], generic_params)
        assert abs(a - macdonald_apply(1, f, [0.3], generic_params)) < 1e-13

    def test_routes_agree(self, unit_params):
        rng = np.random.default_rng(5)
        f = gaussian([0.1, -0.2], 1.0, [0.3, 0.0])
        for _ in range(4):
            x = rng.uniform(-1, 1, 2)
            for r in (1, 2):
                a = ruijsenaars_apply(r, f, x, unit_params)
                b = ruijsenaars_apply_direct(r, f, x, unit_params)
                assert abs(a - b) < 1e-9 * abs(a)

    def test_gauge_singular(self, unit_params):
        with pytest.raises(GaugeSingular):
            ruijsenaars_apply(1, gaussian([0, 0]), [0.3, 0.3], unit_params)


class TestKernelIdentity:
    def test_single_variable(self):
        z, y, a = [0.4 + 0.1j], [-0.3], 0.2
        lhs, rhs = kernel_identity_sides(z, y, a, 1)
        ref = cmath.sin(z[0] - y[0] + a) / cmath.sin(z[0] - y[0])
        assert abs(lhs - ref) < 1e-14 and abs(rhs - ref) < 1e-14

    def test_alpha_zero(self):
        z, y = [0.1, 0.5, -0.4], [0.3, -0.2, 0.8]
        for r in range(4):
            lhs, rhs = kernel_identity_sides(z, y, 0.0, r)
            assert abs(lhs - binomial(3, r)) < 1e-12 and abs(rhs - binomial(3, r)) < 1e-12

    @pytest.mark.parametrize("n", [2, 3])
    def test_random_complex(self, n):
        rng = np.random.default_rng(10 + n)
        for _ in range(20):
            z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-0.5, 0.5, n)
            y = rng.uniform(-1, 1, n) + 1j * rng.uniform(-0.5, 0.5, n)
            a = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
            for r in range(n + 1):
                assert kernel_identity_residual(z, y, a, r) < 1e-11

    def test_hyperbolic_dressing(self, generic_params):
        zt, yt, a = hyperbolic_dressing([0.3, -0.2], [0.1, 0.6], generic_params)
        for r in (1, 2):
            assert kernel_identity_residual(zt, yt, a, r) < 1e-11

    def test_singular(self):
        with pytest.raises(SingularDenominator):
            kernel_identity_sides([0.3, 0.3], [0.1, 0.2], 0.5, 1)
