import cmath
import math

import numpy as np
import pytest

from baxterq.errors import DegenerateConfiguration, NonconvergentSeries
from baxterq.kernels import ModelParams, kernel_K
from baxterq.residue_series import (
    PairSpec,
    ResidueIndex,
    SeriesOrder,
    block_sum,
    double_zero_check,
    index_block,
    residue_L_term,
    residue_R_term,
    series_Q_sum,
    subsets,
    verify_LR_equality,
)
from baxterq.special_functions import contour_residue, double_sine

Z1 = [0.13, -0.41]
Z2 = [0.13, -0.41, 0.37, -0.05]


def zero_index(n, subset):
    return ResidueIndex(subset, (0,) * n, (0,) * n)


class TestResidueIndex:
    def test_sorted(self):
        idx = ResidueIndex((2, 0), (1, 0), (0, 1))
        assert idx.subset_I == (0, 2)
        assert idx.complement() == (1, 3)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ResidueIndex((0,), (-1,), (0,))

    def test_order_nonnegative(self):
        with pytest.raises(ValueError):
            SeriesOrder(-1, 2)


class TestTerms:
    def test_n1_closed_form(self, generic_params):
        p = generic_params
        z, x = 1j * Z1[0], 1j * Z1[1]
        ref = math.sqrt(p.omega.product.real) / (-2j * math.pi * double_sine(p.gstar, p.omega))
        ref /= double_sine(z - x + p.gstar, p.omega) * double_sine(x - z, p.omega)
        val = residue_L_term(zero_index(1, (0,)), Z1, p)
        assert abs(val - ref) < 1e-12 * abs(ref)

    def test_n1_is_kernel_residue(self, generic_params):
        p = generic_params
        f = lambda y: kernel_K(y - Z1[0], p) * kernel_K(y - Z1[1], p)
        res = contour_residue(f, Z1[0] - 0.5j * p.gstar, 0.05)
        val = residue_L_term(zero_index(1, (0,)), Z1, p)
        assert abs(val - res) < 1e-10 * abs(res)

    def test_right_orientation_sign(self, generic_params):
        p = generic_params
        left = residue_L_term(zero_index(1, (0,)), Z1, p)
        right = residue_R_term(zero_index(1, (0,)), Z1, p)
        assert abs(right + left) < 1e-13 * abs(left)

    def test_forms_agree_n2(self, generic_params):
        for sub in subsets(4, 2):
            for M in range(3):
                for K in range(3):
                    for idx in index_block(sub, M, K):
                        for term in (residue_L_term, residue_R_term):
                            a = term(idx, Z2, generic_params, "pochhammer")
                            b = term(idx, Z2, generic_params, "direct")
                            assert abs(a - b) < 1e-9 * abs(b)

    def test_label_symmetry(self, generic_params):
        a = residue_L_term(ResidueIndex((0, 1), (2, 0), (1, 1)), Z2, generic_params)
        swapped = [Z2[1], Z2[0], Z2[2], Z2[3]]
        b = residue_L_term(ResidueIndex((0, 1), (0, 2), (1, 1)), swapped, generic_params)
        assert abs(a - b) < 1e-10 * abs(a)

    def test_termwise_n1(self, generic_params):
        for sub in subsets(2, 1):
            for m1 in range(3):
                for m2 in range(3 - m1):
                    idx = ResidueIndex(sub, (m1,), (m2,))
                    a = residue_L_term(idx, Z1, generic_params)
                    b = -residue_R_term(idx, Z1, generic_params)
                    assert abs(a - b) < 1e-10 * abs(a)

    def test_degenerate(self, generic_params):
        with pytest.raises(DegenerateConfiguration):
            verify_LR_equality(1, 0, 0, [0.2, 0.2], generic_params)


class TestBlockEquality:
    @pytest.mark.parametrize("n,z", [(1, Z1), (2, Z2)])
    def test_blocks(self, generic_params, n, z):
        rep = verify_LR_equality(n, 2, 2, z, generic_params)
        assert rep.passed
        assert rep.worst() < 1e-8

    def test_complex_periods(self):
        p = ModelParams.from_numbers(1.0, 1.0 + 0.5j, 0.6)
        assert verify_LR_equality(2, 1, 1, Z2, p).passed


class TestSeries:
    def test_order_zero_hand_expansion(self, generic_params):
        p = generic_params
        lam = -1.0
        out = series_Q_sum(Z1, lam, SeriesOrder(0, 0), p)
        ref = 0j
        for a, b in ((0, 1), (1, 0)):
            z, x = 1j * Z1[a], 1j * Z1[b]
            term = math.sqrt(p.omega.product.real) / (-2j * math.pi * double_sine(p.gstar, p.omega))
            term /= double_sine(z - x + p.gstar, p.omega) * double_sine(x - z, p.omega)
            ref += cmath.exp(2 * math.pi * lam * (p.gstar / 2 + 1j * Z1[a])) * (-2j * math.pi) * term
        assert abs(out.value - ref) < 1e-12 * abs(ref)

    def test_nomes_for_unit_periods(self):
        u = cmath.exp(2 * math.pi * -1.0 * 1.0)
        assert abs(u - math.exp(-2 * math.pi)) < 1e-18

    def test_nonconvergent(self, generic_params):
        with pytest.raises(NonconvergentSeries):
            series_Q_sum(Z1, 0.1, SeriesOrder(2, 2), generic_params)

    def test_tail_shrinks(self, generic_params):
        vals = [series_Q_sum(Z1, -0.4, SeriesOrder(m, m), generic_params) for m in (2, 4, 8)]
        diffs = [abs(vals[i].value - vals[-1].value) for i in range(2)]
        assert diffs[1] < diffs[0]
        assert vals[-1].tail_bound < vals[0].tail_bound


class TestDoubleZeros:
    eps = [1e-2, 1e-3, 1e-4]

    def test_single_pair(self, generic_params):
        rep = double_zero_check([PairSpec(0.2 + 0.1j, (1, 2), (0, 0))], self.eps, generic_params, Z2, lam=-0.3)
        slope = [c for c in rep.cases if c.get("part") == "slope"][0]["slope"]
        assert abs(slope - 2.0) < 0.1
        # each term alone stays finite on the hyperplane
        assert abs(rep.config["single_term_slope"]) < 0.1

    def test_two_pairs(self, generic_params):
        pairs = [PairSpec(0.2 + 0.1j, (1, 2), (0, 0)), PairSpec(0.31 - 0.25j, (2, 1), (0, 0))]
        z = [0.13, -0.41, 0.37, -0.05, 0.22, -0.3, 0.05, 0.5]
        rep = double_zero_check(pairs, self.eps, generic_params, z, lam=-0.3)
        slope = [c for c in rep.cases if c.get("part") == "slope"][0]["slope"]
        assert abs(slope - 4.0) < 0.2

    def test_factored_matches_direct(self, generic_params):
        rep = double_zero_check([PairSpec(0.25 - 0.05j, (2, 1), (0, 1))], self.eps, generic_params, Z2, strict=False)
        part = [c for c in rep.cases if c.get("part") == "factored_vs_direct"][0]
        assert part["residual"] < 1e-10

    def test_wrong_parameter_count(self, generic_params):
        with pytest.raises(ValueError):
            double_zero_check([PairSpec(0.2, (1, 1), (0, 0))], self.eps, generic_params, Z1)
