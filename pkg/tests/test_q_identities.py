import random
from fractions import Fraction

import pytest

from baxterq.errors import ZeroDenominator
from baxterq.q_identities import (
    compositions,
    hyp_pochhammer,
    hyp_pochhammer_s2,
    q_pochhammer,
    random_hyp_sample,
    sym_pochhammer,
    theorem2_side,
    verify_involution,
    verify_lemma_2p,
    verify_lemma_p1,
    verify_pochhammer_lemmas,
    verify_theorem2,
)


class TestPochhammer:
    def test_positive(self):
        assert q_pochhammer(Fraction(2), Fraction(3), 2) == Fraction(5)

    def test_negative_convention(self):
        z, q = Fraction(2, 7), Fraction(3, 5)
        for n in range(1, 4):
            assert q_pochhammer(z, q, -n) * q_pochhammer(z / q**n, q, n) == 1

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            q_pochhammer(Fraction(3), Fraction(3), -1)

    def test_symmetric_zero_length(self):
        assert sym_pochhammer(0.3 + 0.2j, 0.7, 0) == 1

    def test_compositions(self):
        assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
        assert len(list(compositions(3, 4))) == 15


class TestHyperbolicPochhammer:
    @pytest.mark.parametrize("m,k", [(0, 0), (1, 0), (2, 1), (-1, 2), (1, -2)])
    def test_factorized_matches_definition(self, generic_params, m, k):
        x = 0.31 + 0.12j
        a = hyp_pochhammer(x, m, k, generic_params)
        b = hyp_pochhammer_s2(x, m, k, generic_params)
        assert abs(a - b) < 1e-10 * abs(b)


class TestDualityIdentity:
    def test_n1(self):
        assert verify_theorem2(1, 3, 5, seed=1).passed

    @pytest.mark.parametrize("K", [0, 1, 2, 3])
    def test_n2(self, K):
        assert verify_theorem2(2, K, 10, seed=7).passed

    def test_n3_k4(self):
        assert verify_theorem2(3, 4, 5, seed=2).passed

    def test_sides_are_fractions(self):
        s = random_hyp_sample(random.Random(0), 2)
        lhs = theorem2_side("left", s, 2)
        assert isinstance(lhs, Fraction)
        assert lhs == theorem2_side("right", s, 2)

    def test_deterministic(self):
        a = verify_theorem2(2, 2, 4, seed=11).to_json(with_timing=False)
        b = verify_theorem2(2, 2, 4, seed=11).to_json(with_timing=False)
        assert a == b


class TestResidueRecursion:
    @pytest.mark.parametrize("K", [0, 1, 2, 3])
    def test_residue_cancellation(self, K):
        for p in range(-K - 1, K + 2):
            assert verify_lemma_p1(2, K, p, seed=3).passed

    def test_involution(self):
        for K in range(4):
            assert verify_involution(2, K, seed=1).passed

    @pytest.mark.parametrize("k1,kp", [(1, 0), (1, 2), (2, 0), (2, 1), (3, 0)])
    def test_recursion(self, k1, kp):
        for p in range(1, k1 + 1):
            rep = verify_lemma_2p(2, k1, p, (kp,), seed=4)
            assert all(c["ratio"] == "1" for c in rep.cases)

    def test_printed_prefactor_differs(self):
        rep = verify_lemma_2p(2, 2, 1, (0,), seed=4)
        assert any(c["printed_prefactor_ratio"] != "1" for c in rep.cases)

    def test_bracket_rules(self):
        roots = (Fraction(3, 2), Fraction(5, 7))
        for m in range(-2, 3):
            for n in range(-2, 3):
                for p in range(0, 3):
                    assert verify_pochhammer_lemmas(roots, m, n, p).passed

    def test_reflect_rule_negative_p_is_only_noted(self):
        rep = verify_pochhammer_lemmas((Fraction(3, 2), Fraction(5, 7)), 1, 2, -1)
        assert rep.passed
        assert all(c["rule"] == "shift" for c in rep.cases)
        assert len(rep.notes) == 2
