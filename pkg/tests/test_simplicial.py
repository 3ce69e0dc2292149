#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
脈体・単体的被覆モジュールのテスト
"""

import json

import pytest

from src.string2g.group import SU2Element
from src.string2g.simplicial import (
    CoverPoint,
    NervePoint,
    SimplicialIndex,
    cover_check,
    describe_cover,
    fill_horn,
    otimes,
    patch_membership,
    patches_containing,
    pentagon_simplex,
    phi1,
    phi2,
    phi3,
    random_cover_point,
    random_object,
    simplicial_identities_check,
    unit_object,
)
from src.string2g.utils import create_rng


class TestPatchMembership:
    """パッチ所属判定のテスト"""

    def test_identity_in_patch_1(self):
        """単位元はx≥0のパッチ1に属する"""
        assert patch_membership(SU2Element.identity(), 1) is True

    def test_identity_not_in_patch_2(self):
        """単位元はx<0のパッチ2に属さない"""
        assert patch_membership(SU2Element.identity(), 2) is False

    def test_y_predicate(self):
        """y≥0のパッチ3のテスト"""
        assert patch_membership(SU2Element(0, 1, 0, 0), 3) is True

    def test_index_out_of_range(self):
        """範囲外の添字でエラーになるテスト"""
        with pytest.raises(ValueError):
            patch_membership(SU2Element.identity(), 0)
        with pytest.raises(ValueError):
            patch_membership(SU2Element.identity(), 9)

    def test_patches_tile_group(self):
        """各座標で1つずつ、常に4パッチに属するテスト"""
        rng = create_rng(1)
        for _ in range(200):
            options = patches_containing(SU2Element.random(rng))
            assert len(options) == 4
            assert sorted((i - 1) // 2 for i in options) == [0, 1, 2, 3]


class TestNervePoint:
    """NervePointクラスのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.rng = create_rng(2)
        self.g1 = SU2Element.random(self.rng)
        self.g2 = SU2Element.random(self.rng)

    def test_faces_of_level_one(self):
        """f¹₀(g) = f¹₁(g) = * のテスト"""
        s = NervePoint((self.g1,))
        assert s.face(0) == NervePoint.star()
        assert s.face(1) == NervePoint.star()

    def test_middle_face_merges(self):
        """f²₁(g₁, g₂) = (g₁g₂) のテスト"""
        merged = NervePoint((self.g1, self.g2)).face(1)
        assert merged.same_as(NervePoint((self.g1 * self.g2,)))

    def test_degeneracy_of_star(self):
        """d⁰₀(*) = 1_G のテスト"""
        assert NervePoint.star().degeneracy(0) == NervePoint((SU2Element.identity(),))

    def test_index_out_of_range(self):
        """範囲外の面・退化写像でエラーになるテスト"""
        s = NervePoint((self.g1, self.g2))
        with pytest.raises(ValueError):
            s.face(3)
        with pytest.raises(ValueError):
            s.degeneracy(-1)
        with pytest.raises(ValueError):
            NervePoint.star().face(0)

    def test_level_cap(self):
        """レベル上限を超えるとエラーになるテスト"""
        with pytest.raises(ValueError):
            NervePoint.random(self.rng, 5)

    def test_simplicial_identities_report(self):
        """単体的恒等式の検証レポートが合格するテスト"""
        report = simplicial_identities_check(seed=4, samples=20)
        assert report["passed"] is True
        assert set(report["checks"]) == {
            "face_face",
            "face_degeneracy",
            "face_degeneracy_id",
            "degeneracy_degeneracy",
        }


class TestSimplicialIndex:
    """SimplicialIndexクラスのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.rng = create_rng(3)

    def test_label_count_validated(self):
        """ラベル数の検証テスト"""
        with pytest.raises(ValueError):
            SimplicialIndex(2, (1, 1))
        with pytest.raises(ValueError):
            SimplicialIndex(1, (9,))

    def test_face_of_degeneracy_is_identity(self):
        """f_j d_j = f_{j+1} d_j = id のテスト"""
        index = random_cover_point(self.rng, 2).index
        for j in range(3):
            assert index.degeneracy(j).face(j) == index
            assert index.degeneracy(j).face(j + 1) == index

    def test_face_face(self):
        """f_i f_j = f_{j−1} f_i のテスト"""
        index = random_cover_point(self.rng, 3).index
        for j in range(4):
            for i in range(j):
                assert index.face(j).face(i) == index.face(i).face(j - 1)

    def test_total_order(self):
        """全順序（反対称・推移的）のテスト"""
        indices = [random_cover_point(self.rng, 2).index for _ in range(40)]
        ordered = sorted(indices)
        for a, b in zip(ordered, ordered[1:]):
            assert a <= b
            assert not (b < a)
        distinct = set(indices)
        assert len(sorted(distinct)) == len(distinct)


class TestCoverPoint:
    """被覆点と切断・ホーン充填のテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.rng = create_rng(5)

    def test_phi1_identity(self):
        """φ₁(1) のパッチは1"""
        assert phi1(SU2Element.identity()).patch == 1

    def test_phi1_minus_identity(self):
        """φ₁(−1) のパッチは2（x<0の最小添字）"""
        assert phi1(SU2Element(-1.0, 0.0, 0.0, 0.0)).patch == 2

    def test_phi1_is_section(self):
        """π∘φ₁ = id と φ₁∘π∘φ₁ = φ₁ のテスト"""
        g = SU2Element.random(self.rng)
        v = phi1(g)
        assert v.group_element() == g
        assert phi1(v.group_element()) == v
        assert v.is_member()

    def test_otimes_unit(self):
        """1 ⊗ v = φ₁(π(v)) のテスト"""
        v = random_object(self.rng)
        product = otimes(unit_object(), v)
        assert product.same_as(phi1(v.group_element()))

    def test_otimes_projection_and_associativity(self):
        """π(v₀⊗v₁) = π(v₀)π(v₁) と ⊗ の結合性のテスト"""
        v0, v1, v2 = (random_object(self.rng) for _ in range(3))
        product = otimes(v0, v1)
        assert product.group_element().distance(
            v0.group_element() * v1.group_element()
        ) < 1e-15
        assert otimes(otimes(v0, v1), v2).same_as(otimes(v0, otimes(v1, v2)))

    def test_phi2_labels(self):
        """φ₂の辺ラベルのテスト"""
        v0, v1 = random_object(self.rng), random_object(self.rng)
        s = phi2(v0, v1)
        assert s.index.label(0, 1) == v0.patch
        assert s.index.label(1, 2) == v1.patch
        assert s.index.label(0, 2) == otimes(v0, v1).patch
        assert s.is_member()

    def test_phi3_of_units(self):
        """単位対象のφ₃は完全に退化した3単体"""
        unit = unit_object()
        s = phi3(unit, unit, unit)
        assert s.index.labels == (1,) * 6
        assert s.point == NervePoint((SU2Element.identity(),) * 3)

    def test_phi3_faces(self):
        """φ₃の面条件のテスト"""
        v0, v1, v2 = (random_object(self.rng) for _ in range(3))
        s = phi3(v0, v1, v2)
        assert s.face(0).same_as(phi2(v1, v2))
        assert s.face(2).same_as(phi2(v0, otimes(v1, v2)))
        assert s.face(3).same_as(phi2(v0, v1))
        assert s.face(2).face(2).same_as(v0)
        assert s.face(0).face(0).same_as(v2)

    def test_pentagon_simplex_faces(self):
        """五角形用4単体の面が5つのφ₃になるテスト"""
        x0, x1, x2, x3 = (random_object(self.rng) for _ in range(4))
        s = pentagon_simplex(x0, x1, x2, x3)
        expected = [
            phi3(x1, x2, x3),
            phi3(otimes(x0, x1), x2, x3),
            phi3(x0, otimes(x1, x2), x3),
            phi3(x0, x1, otimes(x2, x3)),
            phi3(x0, x1, x2),
        ]
        for i, target in enumerate(expected):
            assert s.face(i).same_as(target)

    def test_fill_horn_rejects_invalid_label(self):
        """不正な固定ラベルでエラーになるテスト"""
        with pytest.raises(ValueError):
            fill_horn(NervePoint((SU2Element.identity(),)), {(0, 1): 2})

    def test_level_mismatch(self):
        """点と添字のレベル不一致でエラーになるテスト"""
        with pytest.raises(ValueError):
            CoverPoint(NervePoint.star(), SimplicialIndex(1, (1,)))

    def test_faces_stay_in_cover(self):
        """被覆点の面・退化が被覆点になるテスト"""
        for level in range(1, 4):
            v = random_cover_point(self.rng, level)
            assert v.is_member()
            for i in range(level + 1):
                assert v.face(i).is_member()
                assert v.degeneracy(i).is_member()


class TestCoverReports:
    """被覆の記述・検証レポートのテスト"""

    def test_describe_cover_is_json(self):
        """被覆の記述がJSON化できるテスト"""
        description = describe_cover()
        assert len(description["patches"]) == 8
        assert description["patches"][0]["predicate"] == "x >= 0"
        json.dumps(description)

    def test_cover_check_passes(self):
        """被覆の整合性検証が合格するテスト"""
        report = cover_check(seed=6, samples=15)
        assert report["passed"] is True
        assert "section_property" in report["checks"]
        assert "cover_compatibility" in report["checks"]

    def test_cover_check_is_deterministic(self):
        """同じシードで同じレポートになるテスト"""
        assert cover_check(seed=9, samples=5) == cover_check(seed=9, samples=5)
