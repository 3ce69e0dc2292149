#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
微分モジュールのテスト
"""

import numpy as np
import pytest

from src.string2g.group import SU2Element
from src.string2g.simplicial import phi1
from src.string2g.superdiff import (
    CHI,
    N_GENERATORS,
    CoboundaryModuli,
    GrassmannNumber,
    ModuliPoint,
    TransformedModuli,
    all_monomials,
    build_descent_cocycle,
    coboundary_relation,
    cubic_relation_residual,
    d_K,
    descent_residuals,
    differentiate,
    equivalence_residuals,
    equivalence_transform,
    graded_commutator,
    lambda_components,
    lambda_trace,
    merge_sign,
    odd_vector,
    string_lie2_products,
    superdiff_demo,
    theta,
    theta_order_part,
)
from src.string2g.utils import create_rng

TOL = 1e-10


def random_number(rng: np.random.Generator, n: int) -> GrassmannNumber:
    """すべての単項式に乱数係数をもつGrassmann数"""
    return GrassmannNumber(n, {m: rng.normal() for m in all_monomials(n)})


def random_homogeneous(
    rng: np.random.Generator, n: int, parity: int
) -> GrassmannNumber:
    """偶奇が parity の単項式だけに乱数係数をもつGrassmann数"""
    terms = {m: rng.normal() for m in all_monomials(n) if len(m) % 2 == parity}
    return GrassmannNumber(n, terms)


class TestGrassmannNumber:
    """Grassmann数のテスト"""

    def setup_method(self):
        """テストセットアップ"""
        self.rng = create_rng(7)

    def test_merge_sign(self):
        """並べ替えの符号のテスト"""
        assert merge_sign((0,), (1,)) == 1
        assert merge_sign((1,), (0,)) == -1
        assert merge_sign((1, 2), (0,)) == 1
        assert merge_sign((0, 1), (1,)) == 0

    def test_generators_anticommute(self):
        """生成元の反可換性のテスト"""
        g0 = GrassmannNumber.generator(0, 4)
        g1 = GrassmannNumber.generator(1, 4)
        assert (g0 * g0).max_abs() == 0.0
        assert (g0 * g1 + g1 * g0).max_abs() == 0.0
        assert GrassmannNumber.monomial((1, 0), 4).coefficient((0, 1)) == -1.0

    def test_associativity(self):
        """積の結合律のテスト（4生成元のすべての単項式）"""
        a, b, c = (random_number(self.rng, 4) for _ in range(3))
        assert ((a * b) * c).distance(a * (b * c)) < 1e-12

    def test_matrix_coefficients(self):
        """行列係数の積の順序のテスト"""
        x = np.array([[0.0, 1.0], [0.0, 0.0]])
        y = np.array([[0.0, 0.0], [1.0, 0.0]])
        product = GrassmannNumber.constant(x, 2) * GrassmannNumber.constant(y, 2)
        np.testing.assert_allclose(product.coefficient(()), x @ y)

    def test_parity(self):
        """偶奇のテスト"""
        assert GrassmannNumber.generator(0, 3).parity() == 1
        assert GrassmannNumber.monomial((0, 2), 3).parity() == 0
        assert GrassmannNumber(3).parity() == 0
        mixed = GrassmannNumber.constant(1.0, 3) + GrassmannNumber.generator(1, 3)
        assert mixed.parity() is None

    def test_right_coefficient(self):
        """右係数の読み取りのテスト"""
        number = GrassmannNumber.monomial((2, 0), 3, 5.0)
        coefficient = number.right_coefficient((0,), (0, 1))
        assert coefficient.distance(GrassmannNumber.generator(2, 3, 5.0)) == 0.0

    def test_invalid_monomial(self):
        """不正な単項式のテスト"""
        with pytest.raises(ValueError, match="狭義増加列"):
            GrassmannNumber(3, {(1, 0): 1.0})
        with pytest.raises(ValueError, match="範囲外"):
            GrassmannNumber(3, {(0, 3): 1.0})

    def test_arity_mismatch(self):
        """生成元の数が異なる場合のテスト"""
        with pytest.raises(ValueError, match="生成元の数が一致しません"):
            GrassmannNumber.generator(0, 2) + GrassmannNumber.generator(0, 3)

    def test_graded_commutator(self):
        """次数付き交換子のテスト"""
        g0 = GrassmannNumber.generator(0, 3)
        g1 = GrassmannNumber.generator(1, 3)
        # 奇同士は反交換子なので γ₀γ₁ + γ₁γ₀ = 0
        assert graded_commutator(g0, g1).max_abs() == 0.0
        mixed = GrassmannNumber.constant(1.0, 3) + g0
        with pytest.raises(ValueError, match="斉次"):
            graded_commutator(mixed, g1)


class TestShiftDifferential:
    """同時シフトの微分 d_K のテスト"""

    def setup_method(self):
        """テストセットアップ"""
        self.rng = create_rng(11)

    def test_constant(self):
        """定数の微分のテスト"""
        assert d_K(GrassmannNumber.constant(3.0, N_GENERATORS)).max_abs() == 0.0

    def test_difference_is_closed(self):
        """ω(θ₀ − θ₁) の微分のテスト"""
        omega = GrassmannNumber.generator(4, N_GENERATORS, 2.0)
        assert d_K(omega * (theta(0) - theta(1))).max_abs() == 0.0

    def test_quadratic(self):
        """d_K(ψθ₀θ₁) = ψ(θ₁ − θ₀) のテスト"""
        result = d_K((theta(0) * theta(1)).scale(1.5))
        assert result.distance((theta(1) - theta(0)).scale(1.5)) == 0.0

    def test_squares_to_zero(self):
        """d_K² = 0 のテスト"""
        number = random_number(self.rng, 6)
        assert d_K(d_K(number)).max_abs() < 1e-12

    @pytest.mark.parametrize("parity", [0, 1])
    def test_leibniz(self, parity):
        """次数付きLeibniz則のテスト"""
        f = random_homogeneous(self.rng, 6, parity)
        g = random_number(self.rng, 6)
        sign = -1.0 if parity else 1.0
        expected = d_K(f) * g + (f * d_K(g)).scale(sign)
        assert d_K(f * g).distance(expected) < 1e-10


class TestDescentData:
    """降下データのテスト"""

    def setup_method(self):
        """テストセットアップ"""
        self.rng = create_rng(13)

    def test_cocycle_conditions(self):
        """v のコサイクル条件と a の関係式のテスト"""
        for _ in range(3):
            data = build_descent_cocycle(ModuliPoint.random(self.rng))
            residuals = descent_residuals(data)
            assert residuals["v_cocycle"] < TOL
            assert residuals["a_relation"] < TOL

    def test_trivial_data(self):
        """ω = 0 のとき v = 1, λ⁰³ = 0 のテスト"""
        data = build_descent_cocycle(ModuliPoint((0.0, 0.0, 0.0), 0.0))
        np.testing.assert_allclose(data.v(0, 1).coefficient(()), np.eye(2))
        assert len(data.v(0, 1).terms) == 1
        assert data.lam.max_abs() == 0.0

    def test_invalid_point(self):
        """成分数が不正な場合のテスト"""
        with pytest.raises(ValueError, match="成分である必要"):
            ModuliPoint((1.0, 2.0), 0.0)
        with pytest.raises(ValueError, match="未知のリー代数"):
            ModuliPoint((1.0,), 0.0, "so3")

    def test_lambda_routes_agree(self):
        """トレースの経路と三重線形写像の経路の一致のテスト"""
        point = ModuliPoint.random(self.rng)
        by_trace = lambda_trace(1.0, *([point.omega_matrix()] * 3))
        by_components = lambda_components(1.0, *([point.omega_vector()] * 3))
        assert by_trace.distance(by_components) < 1e-12
        assert by_components.max_abs() > 0.0


class TestDifferentiate:
    """微分の2経路のテスト"""

    def setup_method(self):
        """テストセットアップ"""
        self.rng = create_rng(17)

    @pytest.mark.parametrize("k", [1.0, 2.0])
    def test_routes_agree(self, k):
        """閉じた式と係数の読み取りの一致のテスト"""
        routes = differentiate(ModuliPoint.random(self.rng), k)
        assert routes["omega_closed"].distance(routes["omega_read"]) < TOL
        assert routes["psi_closed"].distance(routes["psi_read"]) < TOL
        assert routes["psi_read"].max_abs() > 0.0

    def test_spin4_routes_agree(self):
        """𝔰𝔭𝔦𝔫(4) での2経路の一致とコサイクル条件のテスト"""
        point = ModuliPoint.random(self.rng, "spin4")
        assert point.matrix_size == 4
        routes = differentiate(point)
        assert routes["omega_closed"].distance(routes["omega_read"]) < TOL
        assert routes["psi_closed"].distance(routes["psi_read"]) < TOL
        residuals = descent_residuals(build_descent_cocycle(point))
        assert residuals["v_cocycle"] < TOL
        assert residuals["a_relation"] < TOL

    def test_abelian_case(self):
        """k = 0 のとき d_K ψ = 0 のテスト"""
        routes = differentiate(ModuliPoint.random(self.rng), 0.0)
        assert routes["psi_read"].max_abs() < 1e-14

    def test_single_direction(self):
        """ω が1方向のとき d_K ω = 0 のテスト"""
        routes = differentiate(ModuliPoint((0.7, 0.0, 0.0), 1.0))
        assert routes["omega_read"].max_abs() < 1e-14
        assert routes["psi_read"].max_abs() < 1e-14

    def test_string_lie2_products(self):
        """読み取れる弦リー2代数のテスト"""
        products = string_lie2_products(1)
        assert products.dim0 == 3
        assert products.dim1 == 1
        assert "k=1" in products.name


class TestEquivalence:
    """同値変換のテスト"""

    def setup_method(self):
        """テストセットアップ"""
        self.rng = create_rng(19)

    def test_identity_transform(self):
        """恒等変換で (ω, ψ) が変わらないことのテスト"""
        point = ModuliPoint.random(self.rng)
        transformed = equivalence_transform(point, CoboundaryModuli.identity())
        assert transformed.omega_matrix.distance(point.omega_matrix()) < 1e-14
        expected = GrassmannNumber.constant(point.psi, N_GENERATORS)
        assert transformed.psi.distance(expected) < 1e-14

    def test_random_relations(self):
        """ランダムな余境界のモジュライでの関係式のテスト"""
        for _ in range(3):
            point = ModuliPoint.random(self.rng)
            coboundary = CoboundaryModuli.random(self.rng)
            transformed = equivalence_transform(point, coboundary)
            residuals = equivalence_residuals(point, coboundary, transformed)
            for name, value in residuals.items():
                assert value < TOL, name

    def test_psi_read_from_expansion(self):
        """関係式の θ の2次の項から ψ' が再現されることのテスト"""
        for _ in range(3):
            point = ModuliPoint.random(self.rng)
            coboundary = CoboundaryModuli.random(self.rng)
            transformed = equivalence_transform(point, coboundary)
            relation = coboundary_relation(point, coboundary, transformed)
            assert theta_order_part(relation, 2).max_abs() < TOL

    def test_shifted_psi_detected(self):
        """ψ' がずれると2次の項に現れることのテスト"""
        point = ModuliPoint.random(self.rng)
        coboundary = CoboundaryModuli.random(self.rng)
        transformed = equivalence_transform(point, coboundary)
        shifted = TransformedModuli(
            transformed.omega_matrix,
            transformed.omega_vector,
            transformed.psi + GrassmannNumber.constant(0.5, N_GENERATORS),
        )
        relation = coboundary_relation(point, coboundary, shifted)
        assert theta_order_part(relation, 2).max_abs() == pytest.approx(0.5)

    def test_cubic_relation_finite_rotation(self):
        """有限の回転 β で θ₀θ₁θ₂ 成分が成り立つことのテスト"""
        beta = phi1(SU2Element.exp((0.3, -0.5, 0.4)))
        coboundary = CoboundaryModuli(beta, (0.0, 0.0, 0.0), 0.7)
        for _ in range(3):
            point = ModuliPoint.random(self.rng)
            transformed = equivalence_transform(point, coboundary)
            residual = cubic_relation_residual(point, coboundary, transformed)
            assert residual < TOL

    def test_cubic_relation_shift(self):
        """β = 1, d_K β ≠ 0 で θ₀θ₁θ₂ 成分が成り立つことのテスト"""
        identity = phi1(SU2Element.identity())
        coboundary = CoboundaryModuli(identity, (0.8, -1.1, 0.5), -0.4)
        for _ in range(3):
            point = ModuliPoint.random(self.rng)
            transformed = equivalence_transform(point, coboundary)
            residual = cubic_relation_residual(point, coboundary, transformed)
            assert residual < TOL

    def test_cubic_relation_detects_wrong_omega(self):
        """ω' の d_K β の符号を誤ると θ₀θ₁θ₂ 成分が残ることのテスト"""
        identity = phi1(SU2Element.identity())
        eta = (0.8, -1.1, 0.5)
        coboundary = CoboundaryModuli(identity, eta, 0.0)
        point = ModuliPoint.random(self.rng)
        transformed = equivalence_transform(point, coboundary)
        unit = np.eye(3)
        flipped = point.omega_vector() - odd_vector(
            [eta[a] * unit[a] for a in range(3)], CHI
        )
        wrong = TransformedModuli(transformed.omega_matrix, flipped, transformed.psi)
        assert cubic_relation_residual(point, coboundary, wrong) > 1e-3

    def test_random_coboundary_switches(self):
        """rotate・shift の指定でβとηが単位元・0になることのテスト"""
        fixed = CoboundaryModuli.random(self.rng, rotate=False)
        assert fixed.element.distance(SU2Element.identity()) == 0.0
        assert np.linalg.norm(fixed.eta) > 0.0
        constant = CoboundaryModuli.random(self.rng, shift=False)
        assert constant.eta == (0.0, 0.0, 0.0)

    def test_abelian_reduction(self):
        """k = 0 のとき ψ' = ψ − d_K ζ のテスト"""
        point = ModuliPoint.random(self.rng)
        coboundary = CoboundaryModuli.random(self.rng)
        transformed = equivalence_transform(point, coboundary, 0.0)
        expected = point.psi - coboundary.zeta_dot
        assert transformed.psi.distance(
            GrassmannNumber.constant(expected, N_GENERATORS)
        ) < 1e-14

    def test_non_su2_rejected(self):
        """𝔰𝔲(2) 以外のモジュライのテスト"""
        point = ModuliPoint.random(self.rng, "spin4")
        with pytest.raises(ValueError, match="𝔰𝔲\\(2\\)のみ"):
            equivalence_transform(point, CoboundaryModuli.identity())

    def test_beta_outside_branch(self):
        """β の実部が負の場合のテスト"""
        beta = phi1(SU2Element.from_components((-0.6, 0.8, 0.0, 0.0)))
        with pytest.raises(ValueError, match="可解な枝"):
            CoboundaryModuli(beta, (0.0, 0.0, 0.0), 0.0)


class TestSuperdiffDemo:
    """微分の手続き全体のテスト"""

    def test_demo_passes(self):
        """既定のデモのテスト"""
        report = superdiff_demo(seed=0, samples=2, tol=1e-9)
        assert report["passed"] is True
        for name in (
            "v_cocycle",
            "a_relation",
            "omega_dual_route",
            "psi_dual_route",
            "omega_relation",
            "group_relation",
            "jacobi",
            "mu3_closure",
            "spin4_omega_dual_route",
            "spin4_psi_dual_route",
            "psi_expansion",
            "cubic_relation_rotation",
            "cubic_relation_shift",
        ):
            assert report["checks"][name]["passed"], name
        assert report["mu3"]

    def test_demo_is_reproducible(self):
        """同じシードで同じレポートになることのテスト"""
        first = superdiff_demo(seed=5, samples=1, tol=1e-9)
        second = superdiff_demo(seed=5, samples=1, tol=1e-9)
        assert first == second

    def test_zero_samples_fail(self):
        """標本数0では失敗することのテスト"""
        assert superdiff_demo(seed=0, samples=0, tol=1e-9)["passed"] is False
