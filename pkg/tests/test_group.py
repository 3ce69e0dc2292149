#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
群・リー代数モジュールのテスト
"""

import math

import numpy as np
import pytest

from src.string2g.group import (
    SPIN4_ALGEBRA,
    SU2_ALGEBRA,
    U1_ALGEBRA,
    AlgebraElement,
    Spin4Element,
    SU2Element,
    bracket,
    create_lie_algebra,
    exp_map,
    killing,
    lambda03_linear,
    log_map,
)
from src.string2g.utils import create_rng


class TestSU2Element:
    """SU2Elementクラスのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.rng = create_rng(11)

    def test_identity_is_unit(self):
        """単位元の左右作用テスト"""
        g = SU2Element.random(self.rng)
        assert (SU2Element.identity() * g).distance(g) < 1e-15
        assert (g * SU2Element.identity()).distance(g) < 1e-15

    def test_inverse(self):
        """逆元のテスト"""
        g = SU2Element.random(self.rng)
        assert (g * g.inverse()).distance(SU2Element.identity()) < 1e-14

    def test_quaternion_table(self):
        """i·j = k のテスト"""
        product = SU2Element(0, 1, 0, 0) * SU2Element(0, 0, 1, 0)
        assert product.as_tuple() == pytest.approx((0.0, 0.0, 0.0, 1.0))

    def test_associativity_campaign(self):
        """乱数三つ組での結合律テスト"""
        worst = 0.0
        for _ in range(2000):
            a, b, c = (SU2Element.random(self.rng) for _ in range(3))
            worst = max(worst, ((a * b) * c).distance(a * (b * c)))
        assert worst < 1e-12

    def test_non_unit_rejected(self):
        """非単位四元数の拒否テスト"""
        with pytest.raises(ValueError):
            SU2Element(1.0, 1.0, 0.0, 0.0)

    def test_matrix_is_homomorphism(self):
        """行列表現が準同型であることのテスト"""
        a, b = SU2Element.random(self.rng), SU2Element.random(self.rng)
        assert np.allclose(a.matrix() @ b.matrix(), (a * b).matrix(), atol=1e-14)
        assert np.allclose(
            a.matrix() @ a.matrix().conj().T, np.eye(2), atol=1e-14
        )

    def test_adjoint_matches_matrix_conjugation(self):
        """随伴作用と行列共役の一致テスト"""
        g = SU2Element.random(self.rng)
        c = self.rng.normal(size=3)
        conjugated = g.matrix() @ SU2_ALGEBRA.to_matrix(c) @ g.matrix().conj().T
        assert np.allclose(g.adjoint(c), SU2_ALGEBRA.from_matrix(conjugated))


class TestExpLog:
    """指数・対数写像のテスト"""

    def test_exp_zero_is_identity(self):
        """exp(a, 0) = 1 のテスト"""
        a = AlgebraElement(SU2_ALGEBRA, (0.3, -0.2, 0.7))
        assert exp_map(a, 0.0) == SU2Element.identity()

    def test_log_identity_is_zero(self):
        """log(1) = 0 のテスト"""
        assert log_map(SU2Element.identity()).norm() == 0.0

    def test_exp_e3_quarter_turn(self):
        """exp(e₃, π/2) = i のテスト（x=0 の境界）"""
        g = exp_map(AlgebraElement.basis_element(SU2_ALGEBRA, 3), math.pi / 2)
        assert g.as_tuple() == pytest.approx((0.0, 1.0, 0.0, 0.0), abs=1e-15)
        assert np.allclose(log_map(g).as_array(), [0.0, 0.0, math.pi / 2])

    def test_log_exp_roundtrip_small_t(self):
        """小さいtでの log(exp(a,t)) = t·a のテスト"""
        rng = create_rng(3)
        a = AlgebraElement.random(SU2_ALGEBRA, rng)
        t = 1e-3
        assert np.allclose(log_map(exp_map(a, t)).as_array(), t * a.as_array())

    def test_exp_matches_matrix_exponential_series(self):
        """行列表現での指数写像の一致テスト"""
        c = np.array([0.4, -0.1, 0.25])
        g = SU2Element.exp(c)
        m = SU2_ALGEBRA.to_matrix(c)
        series = np.eye(2, dtype=complex)
        term = np.eye(2, dtype=complex)
        for n in range(1, 30):
            term = term @ m / n
            series = series + term
        assert np.allclose(g.matrix(), series, atol=1e-13)

    def test_log_outside_branch(self):
        """主枝外の対数写像でエラーになるテスト"""
        with pytest.raises(ValueError):
            log_map(SU2Element(-1.0, 0.0, 0.0, 0.0))

    def test_log_branch_edge(self):
        """実部 x = 0 は主枝に含まれ x < 0 は含まれないテスト"""
        edge = SU2Element(0.0, 1.0, 0.0, 0.0).log()
        assert np.linalg.norm(edge) == pytest.approx(math.pi / 2)
        with pytest.raises(ValueError):
            SU2Element(-1e-3, math.sqrt(1.0 - 1e-6), 0.0, 0.0).log()

    def test_spin4_roundtrip(self):
        """Spin(4)の指数・対数写像テスト"""
        c = np.array([0.1, 0.2, -0.3, 0.05, -0.4, 0.2])
        g = exp_map(AlgebraElement(SPIN4_ALGEBRA, tuple(c)))
        assert isinstance(g, Spin4Element)
        assert np.allclose(log_map(g).as_array(), c)


class TestLieAlgebra:
    """リー代数のテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.rng = create_rng(5)

    def test_bracket_antisymmetric(self):
        """括弧積の反対称性テスト"""
        a = AlgebraElement.random(SU2_ALGEBRA, self.rng)
        assert bracket(a, a).norm() == 0.0

    def test_bracket_basis(self):
        """[e₁, e₂] = −2e₃ のテスト（f = −2ε）"""
        e1 = AlgebraElement.basis_element(SU2_ALGEBRA, 1)
        e2 = AlgebraElement.basis_element(SU2_ALGEBRA, 2)
        assert bracket(e1, e2).components == (0.0, 0.0, -2.0)

    def test_bracket_matches_commutator(self):
        """構造定数と行列交換子の一致テスト"""
        for algebra in (SU2_ALGEBRA, SPIN4_ALGEBRA):
            a = self.rng.normal(size=algebra.dim)
            b = self.rng.normal(size=algebra.dim)
            ma, mb = algebra.to_matrix(a), algebra.to_matrix(b)
            assert np.allclose(
                algebra.to_matrix(algebra.bracket(a, b)), ma @ mb - mb @ ma
            )

    def test_u1_is_abelian(self):
        """𝔲(1)の括弧積が零であるテスト"""
        a = AlgebraElement(U1_ALGEBRA, (1.5,))
        b = AlgebraElement(U1_ALGEBRA, (-0.5,))
        assert bracket(a, b).components == (0.0,)

    def test_jacobi(self):
        """Jacobi恒等式のテスト"""
        for algebra in (SU2_ALGEBRA, SPIN4_ALGEBRA):
            a, b, c = (self.rng.normal(size=algebra.dim) for _ in range(3))
            br = algebra.bracket
            total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
            assert np.max(np.abs(total)) < 1e-13

    def test_killing_normalization(self):
        """Killing形式が正規直交になるテスト"""
        assert np.array_equal(SU2_ALGEBRA.gram, np.eye(3))
        assert np.array_equal(SPIN4_ALGEBRA.gram, np.eye(6))
        e1 = AlgebraElement.basis_element(SU2_ALGEBRA, 1)
        e2 = AlgebraElement.basis_element(SU2_ALGEBRA, 2)
        assert killing(e1, e2) == 0.0

    def test_killing_ad_invariance(self):
        """Killing形式の随伴不変性テスト"""
        worst = 0.0
        for _ in range(200):
            a, b, c = (AlgebraElement.random(SU2_ALGEBRA, self.rng) for _ in range(3))
            value = killing(bracket(a, b), c) + killing(b, bracket(a, c))
            worst = max(worst, abs(value))
        assert worst < 1e-12

    def test_dimension_mismatch(self):
        """次元不一致のエラーテスト"""
        with pytest.raises(ValueError):
            AlgebraElement(SU2_ALGEBRA, (1.0, 2.0))
        with pytest.raises(ValueError):
            bracket(
                AlgebraElement.basis_element(SU2_ALGEBRA, 1),
                AlgebraElement.basis_element(SPIN4_ALGEBRA, 1),
            )
        with pytest.raises(ValueError):
            SU2_ALGEBRA.bracket(np.zeros(3), np.zeros(6))

    def test_create_lie_algebra(self):
        """名前による代数取得のテスト"""
        assert create_lie_algebra("spin4") is SPIN4_ALGEBRA
        with pytest.raises(ValueError):
            create_lie_algebra("g2")


class TestTrilinear:
    """共有三重線形写像のテスト"""

    def test_basis_value(self):
        """T₁₂₃ = −2 のテスト"""
        e = np.eye(3)
        assert lambda03_linear(SU2_ALGEBRA, 1.0, e[0], e[1], e[2]) == -2.0

    def test_scales_with_k_and_sign(self):
        """kとKoszul符号の扱いテスト"""
        rng = create_rng(8)
        x, y, z = (rng.normal(size=3) for _ in range(3))
        base = lambda03_linear(SU2_ALGEBRA, 1.0, x, y, z)
        assert lambda03_linear(SU2_ALGEBRA, 2.5, x, y, z) == pytest.approx(2.5 * base)
        assert lambda03_linear(SU2_ALGEBRA, 1.0, x, y, z, odd_pairs=3) == pytest.approx(
            -base
        )

    def test_matches_invariant_form(self):
        """k·(x, [y, z]) をそのまま与える（係数 −½ がない）テスト"""
        rng = create_rng(9)
        x, y, z = (rng.normal(size=3) for _ in range(3))
        expected = 1.5 * SU2_ALGEBRA.killing(x, SU2_ALGEBRA.bracket(y, z))
        assert lambda03_linear(SU2_ALGEBRA, 1.5, x, y, z) == pytest.approx(expected)

    def test_totally_antisymmetric(self):
        """三重線形写像の完全反対称性テスト"""
        t = SU2_ALGEBRA.trilinear_tensor()
        assert np.array_equal(t, -np.transpose(t, (1, 0, 2)))
        assert np.array_equal(t, -np.transpose(t, (0, 2, 1)))

    def test_u1_vanishes(self):
        """可換代数で三重線形写像が消えるテスト"""
        one = np.array([1.0])
        assert lambda03_linear(U1_ALGEBRA, 1.0, one, one, one) == 0.0
