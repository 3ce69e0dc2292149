#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Čech・Deligneコサイクルモジュールのテスト
"""

import json
import os
import tempfile

import numpy as np
import pytest

from src.string2g.cocycles import (
    AdjointCrossedModule,
    CentralCircleCrossedModule,
    StrictCoboundary,
    ValidationSettings,
    WeakCoboundary,
    a_coboundary_residual,
    a_gluing_residual,
    abelian_deligne_coboundary,
    adjoint_solved_cocycle,
    apply_deligne_coboundary,
    apply_strict_coboundary,
    apply_weak_coboundary,
    b_coboundary_residual,
    b_gluing_residual,
    central_coboundary_cocycle,
    coboundary_ordinary_cocycle,
    create_crossed_module,
    create_single_patch_cover,
    create_sphere_cover,
    identity_strict_coboundary,
    identity_weak_coboundary,
    linearization_tolerance,
    load_bundle,
    perturb_deligne_b,
    perturb_strict_h,
    perturb_weak_a,
    pure_gauge_cocycle,
    random_deligne_coboundary,
    random_ordinary_cocycle,
    random_strict_coboundary,
    random_weak_coboundary,
    smooth_su2_map,
    trivial_deligne_cocycle,
    trivial_ordinary_cocycle,
    trivial_strict_cocycle,
    trivial_weak_cocycle,
    validate_bundle,
    validate_deligne,
    validate_deligne_coboundary,
    validate_ordinary,
    validate_strict,
    validate_strict_coboundary,
    validate_weak,
    validate_weak_coboundary,
)
from src.string2g.cohomology import generate_coboundary_cocycle
from src.string2g.config import CoverConfig
from src.string2g.group import SU2_ALGEBRA
from src.string2g.utils import create_rng

TOL = 1e-9


def small_cover(seed=0, points=48, per_overlap=2):
    """テスト用の小さな3パッチ被覆"""
    config = CoverConfig(n_base_points=points, max_points_per_overlap=per_overlap)
    return create_sphere_cover(config, seed)


class TestFiniteCover:
    """FiniteCoverクラスのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.cover = small_cover()

    def test_every_point_is_covered(self):
        """すべての標本点が少なくとも1つのパッチに属するテスト"""
        for x in self.cover.base_points:
            assert self.cover.patches_containing(x)

    def test_overlap_samples_lie_in_patches(self):
        """重なりの標本が指定パッチすべてに属するテスト"""
        samples = self.cover.overlaps(3)
        assert samples.tuples == 27
        for indices, x in samples.items:
            assert all(self.cover.contains(i, x) for i in indices)

    def test_overlap_cap(self):
        """重なりごとの標本数の上限テスト"""
        samples = self.cover.overlaps(2)
        counts = {}
        for indices, _ in samples.items:
            counts[indices] = counts.get(indices, 0) + 1
        assert max(counts.values()) <= 2

    def test_empty_overlaps_are_skipped(self):
        """空の重なりが数えられて飛ばされるテスト"""
        normals = np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
        points = np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
        from src.string2g.cocycles import FiniteCover

        cover = FiniteCover(normals, 0.5, points)
        samples = cover.overlaps(2)
        assert samples.skipped == 2
        assert samples.summary()["samples"] == 2

    def test_uncovered_point_rejected(self):
        """どのパッチにも属さない点でエラーになるテスト"""
        from src.string2g.cocycles import FiniteCover

        with pytest.raises(ValueError):
            FiniteCover(np.array([[1.0, 0, 0, 0]]), 0.5, np.array([[-1.0, 0, 0, 0]]))

    def test_invalid_order(self):
        """次数0の重なりでエラーになるテスト"""
        with pytest.raises(ValueError):
            self.cover.overlaps(0)

    def test_single_patch_cover(self):
        """1パッチ被覆のテスト"""
        cover = create_single_patch_cover(8, seed=1)
        assert cover.n_patches == 1
        assert len(cover.overlaps(3)) == 8


class TestOrdinaryCocycle:
    """通常のコサイクルの検証テスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.cover = small_cover(1)

    @pytest.mark.parametrize("group", ["su2", "spin4"])
    def test_trivial_passes(self, group):
        """g ≡ 1 が合格するテスト"""
        report = validate_ordinary(trivial_ordinary_cocycle(group), self.cover, TOL)
        assert report["passed"] is True

    @pytest.mark.parametrize("group", ["su2", "spin4"])
    def test_coboundary_passes(self, group):
        """g_ij = γ_iγ_j⁻¹ が合格するテスト"""
        cocycle = coboundary_ordinary_cocycle(self.cover, 3, group)
        assert validate_ordinary(cocycle, self.cover, TOL)["passed"] is True

    def test_random_fails(self):
        """無関係な g_ij が不合格になるテスト"""
        cocycle = random_ordinary_cocycle(self.cover, 3)
        report = validate_ordinary(cocycle, self.cover, TOL)
        assert report["checks"]["triple_product"]["passed"] is False

    def test_unknown_group(self):
        """未知の構造群でエラーになるテスト"""
        with pytest.raises(ValueError):
            trivial_ordinary_cocycle("so3")


class TestStrictCocycle:
    """厳密2群のコサイクルのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.cover = small_cover(2)

    def test_crossed_module_factory(self):
        """交差加群の作成テスト"""
        assert isinstance(create_crossed_module("adjoint"), AdjointCrossedModule)
        module = create_crossed_module("central-u1")
        assert isinstance(module, CentralCircleCrossedModule)
        with pytest.raises(ValueError):
            create_crossed_module("free")

    @pytest.mark.parametrize("name", ["adjoint", "central-u1"])
    def test_trivial_passes(self, name):
        """g ≡ 1, h ≡ 1 が合格するテスト"""
        cocycle = trivial_strict_cocycle(create_crossed_module(name))
        assert validate_strict(cocycle, self.cover, TOL)["passed"] is True

    def test_adjoint_solved_passes(self):
        """h を解いた随伴交差加群のコサイクルが合格するテスト"""
        cocycle = adjoint_solved_cocycle(self.cover, 4)
        assert validate_strict(cocycle, self.cover, TOL)["passed"] is True

    def test_central_coboundary_passes(self):
        """h = δc の中心U(1)コサイクルが合格するテスト"""
        cocycle = central_coboundary_cocycle(self.cover, 5)
        assert validate_strict(cocycle, self.cover, TOL)["passed"] is True

    def test_perturbed_h_fails_second_relation(self):
        """h の摂動で2番目の関係式だけが破れるテスト"""
        cocycle = perturb_strict_h(central_coboundary_cocycle(self.cover, 5))
        checks = validate_strict(cocycle, self.cover, TOL)["checks"]
        assert checks["boundary_relation"]["passed"] is True
        assert checks["h_relation"]["passed"] is False

    def test_identity_coboundary(self):
        """恒等余境界で同じコサイクルの組が合格するテスト"""
        cocycle = adjoint_solved_cocycle(self.cover, 6)
        coboundary = identity_strict_coboundary(cocycle.module)
        report = validate_strict_coboundary(
            cocycle, cocycle, coboundary, self.cover, TOL
        )
        assert report["passed"] is True

    @pytest.mark.parametrize(
        "builder", [adjoint_solved_cocycle, central_coboundary_cocycle]
    )
    def test_forward_transform(self, builder):
        """余境界で変換した組と変換後のコサイクルが合格するテスト"""
        cocycle = builder(self.cover, 7)
        coboundary = random_strict_coboundary(self.cover, cocycle.module, 8)
        transformed = apply_strict_coboundary(cocycle, coboundary)
        assert validate_strict(transformed, self.cover, TOL)["passed"] is True
        report = validate_strict_coboundary(
            cocycle, transformed, coboundary, self.cover, TOL
        )
        assert report["passed"] is True

    def test_mismatched_pair_fails(self):
        """別の余境界との組が不合格になるテスト"""
        cocycle = adjoint_solved_cocycle(self.cover, 9)
        coboundary = random_strict_coboundary(self.cover, cocycle.module, 10)
        other = random_strict_coboundary(self.cover, cocycle.module, 11)
        transformed = apply_strict_coboundary(cocycle, coboundary)
        report = validate_strict_coboundary(
            cocycle, transformed, other, self.cover, TOL
        )
        assert report["passed"] is False


class TestWeakCocycle:
    """弱2群値のコサイクルのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.cover = small_cover(3)
        self.lam = generate_coboundary_cocycle(1)
        self.base = trivial_weak_cocycle()
        self.coboundary = random_weak_coboundary(self.cover, 12)
        self.transformed = apply_weak_coboundary(self.base, self.coboundary, self.lam)

    def test_trivial_passes(self):
        """v ≡ 1, a ≡ 0 が合格するテスト"""
        report = validate_weak(self.base, self.lam, self.cover, TOL)
        assert report["passed"] is True
        assert set(report["checks"]) == {"projection", "normalization", "a_relation"}

    def test_forward_transform_passes(self):
        """自明束を余境界で変換したコサイクルが合格するテスト"""
        report = validate_weak(self.transformed, self.lam, self.cover, TOL)
        assert report["passed"] is True

    def test_forward_pair_passes(self):
        """変換の組が余境界の関係式を満たすテスト"""
        report = validate_weak_coboundary(
            self.base, self.transformed, self.coboundary, self.lam, self.cover, TOL
        )
        assert report["passed"] is True

    def test_perturbed_a_fails(self):
        """1つの三重の重なりで a を摂動すると不合格になるテスト"""
        report = validate_weak(
            perturb_weak_a(self.transformed), self.lam, self.cover, TOL
        )
        assert report["checks"]["a_relation"]["passed"] is False
        assert report["checks"]["projection"]["passed"] is True

    def test_wrong_alpha_sign_fails(self):
        """α の符号を反転すると不合格になるテスト"""
        alpha = self.coboundary.alpha
        flipped = WeakCoboundary(
            self.coboundary.beta, lambda i, j, x: -alpha(i, j, x), "flipped"
        )
        report = validate_weak_coboundary(
            self.base, self.transformed, flipped, self.lam, self.cover, TOL
        )
        assert report["checks"]["alpha_relation"]["passed"] is False

    def test_identity_coboundary(self):
        """恒等余境界でコサイクル自身との組が合格するテスト"""
        identity = identity_weak_coboundary()
        for cocycle in (self.base, self.transformed):
            report = validate_weak_coboundary(
                cocycle, cocycle, identity, self.lam, self.cover, TOL
            )
            assert report["passed"] is True


class TestDeligneCocycle:
    """Deligneコサイクルのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.cover = small_cover(4, points=32, per_overlap=1)
        self.lam = generate_coboundary_cocycle(2, nerve_part=False)
        self.h = 1e-3

    def test_trivial_passes(self):
        """A = B = ζ = 0, v ≡ 1, a = 0 が合格するテスト"""
        report = validate_deligne(
            trivial_deligne_cocycle(), self.lam, self.cover, TOL, self.h
        )
        assert report["passed"] is True
        assert {"flatness", "A_gluing", "B_gluing", "zeta_relation"} <= set(
            report["checks"]
        )

    def test_pure_gauge_flatness(self):
        """1パッチの純ゲージ接続が平坦性に合格するテスト"""
        cover = create_single_patch_cover(6, seed=2)
        cocycle = pure_gauge_cocycle(smooth_su2_map(create_rng(5), 0.5), self.h)
        report = validate_deligne(cocycle, self.lam, cover, TOL, self.h)
        assert report["checks"]["flatness"]["passed"] is True
        assert report["passed"] is True

    def test_forward_transform(self):
        """余境界で変換したコサイクルと組が合格するテスト"""
        base = trivial_deligne_cocycle()
        coboundary = abelian_deligne_coboundary(self.cover, 13)
        transformed = apply_deligne_coboundary(base, coboundary, self.lam, 1.0, self.h)
        report = validate_deligne(transformed, self.lam, self.cover, TOL, self.h)
        assert report["passed"]
        report = validate_deligne_coboundary(
            base, transformed, coboundary, self.lam, self.cover, TOL, self.h
        )
        assert report["passed"] is True

    def _nonabelian_transform(self, amplitude):
        base = trivial_deligne_cocycle()
        coboundary = random_deligne_coboundary(self.cover, 13, amplitude)
        transformed = apply_deligne_coboundary(base, coboundary, self.lam, 1.0, self.h)
        return base, coboundary, transformed

    def test_forward_transform_nonabelian(self):
        """非可換な余境界で変換したコサイクルが振幅³の許容誤差で合格するテスト"""
        amplitude = 0.02
        base, coboundary, transformed = self._nonabelian_transform(amplitude)
        report = validate_deligne(
            transformed,
            self.lam,
            self.cover,
            TOL,
            self.h,
            linearization_amplitude=amplitude,
        )
        assert report["passed"] is True
        assert report["lin_tol"] == pytest.approx(1e3 * amplitude**3)
        report = validate_deligne_coboundary(
            base, transformed, coboundary, self.lam, self.cover, TOL, self.h
        )
        assert report["passed"] is True

    def test_linearization_error_is_cubic(self):
        """振幅を半分にすると貼り合わせの残差がおよそ1/8になるテスト"""
        maxima = []
        for amplitude in (0.02, 0.01):
            _, _, transformed = self._nonabelian_transform(amplitude)
            checks = validate_deligne(
                transformed, self.lam, self.cover, TOL, self.h
            )["checks"]
            maxima.append(
                max(checks["B_gluing"]["max"], checks["zeta_relation"]["max"])
            )
        assert maxima[1] > 1e-9
        assert 5.0 < maxima[0] / maxima[1] < 12.0

    def test_linearization_tolerance(self):
        """線形化の許容誤差の値と負の振幅のテスト"""
        assert linearization_tolerance(0.0, 1.0, 1e3) == 0.0
        assert linearization_tolerance(0.1, -2.0, 1e3) == pytest.approx(2.0)
        with pytest.raises(ValueError):
            linearization_tolerance(-0.1, 1.0, 1e3)

    def test_perturbed_b_fails_gluing(self):
        """1つのパッチで B を摂動すると B の貼り合わせが破れるテスト"""
        cocycle = perturb_deligne_b(trivial_deligne_cocycle())
        report = validate_deligne(cocycle, self.lam, self.cover, TOL, self.h)
        assert report["checks"]["B_gluing"]["passed"] is False
        assert report["checks"]["flatness"]["passed"] is True

    def test_step_too_large(self):
        """ステップ幅が上限を超えるとエラーになるテスト"""
        with pytest.raises(ValueError):
            validate_deligne(trivial_deligne_cocycle(), self.lam, self.cover, TOL, 0.5)


class TestIndexDeletion:
    """貼り合わせの関係式から添字を1つ消すと余境界の関係式になるテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        rng = create_rng(6)
        antisym = lambda m: m - m.T
        self.B_new = antisym(rng.normal(size=(4, 4)))
        self.B_old = antisym(rng.normal(size=(4, 4)))
        self.dzeta = antisym(rng.normal(size=(4, 4)))
        self.log_beta = rng.normal(size=3)
        self.A_new = rng.normal(size=(4, 3))
        self.A_old = rng.normal(size=(4, 3))

    def _b_arguments(self, k):
        return (
            self.B_new,
            self.B_old,
            self.dzeta,
            self.log_beta,
            self.A_new,
            self.A_old,
            k,
        )

    def test_b_relation(self):
        """B_i→B'_i, B_j→B_i, v→β, A_i→A'_i, A_j→A_i, ζ_ij→ζ_i"""
        for k in (1.0, 2.5):
            gluing = b_gluing_residual(*self._b_arguments(k))
            coboundary = b_coboundary_residual(*self._b_arguments(k))
            np.testing.assert_allclose(gluing, coboundary, atol=1e-14)

    def test_a_relation(self):
        """g→β, A_i→A_i, A_j→A'_i"""
        g = SU2_ALGEBRA.to_matrix(self.log_beta)
        dg = SU2_ALGEBRA.to_matrix(self.A_old)
        gluing = a_gluing_residual(g, dg, self.A_old, self.A_new)
        coboundary = a_coboundary_residual(g, dg, self.A_new, self.A_old)
        np.testing.assert_allclose(gluing, coboundary, atol=1e-14)

    def test_b_terms_are_nontrivial(self):
        """λ⁰³の項が非零で比較が意味を持つテスト"""
        with_k = b_gluing_residual(*self._b_arguments(1.0))
        without_k = b_gluing_residual(*self._b_arguments(0.0))
        assert np.max(np.abs(with_k - without_k)) > 1e-3


class TestRegistry:
    """JSONバンドルのレジストリのテスト"""

    def setup_method(self):
        """テストメソッドの前処理"""
        self.settings = ValidationSettings(tol=TOL)
        self.cover = {"n_base_points": 32, "max_points_per_overlap": 1}

    @pytest.mark.parametrize(
        "kind,generator,expected",
        [
            ("ordinary", "coboundary", True),
            ("ordinary", "random", False),
            ("strict", "adjoint_solved", True),
            ("strict", "perturbed", False),
            ("weak", "forward", True),
            ("weak", "perturbed", False),
            ("deligne", "trivial", True),
            ("deligne", "perturbed_b", False),
        ],
    )
    def test_generators(self, kind, generator, expected):
        """登録済み生成器の合否テスト"""
        bundle = {"kind": kind, "generator": generator, "seed": 3, "cover": self.cover}
        assert validate_bundle(bundle, self.settings)["passed"] is expected

    def test_deligne_nonabelian_forward(self):
        """非可換な余境界の生成器で振幅³の許容誤差が記録されるテスト"""
        bundle = {
            "kind": "deligne",
            "generator": "forward_nonabelian",
            "seed": 3,
            "params": {"amplitude": 0.005},
            "cover": self.cover,
        }
        report = validate_bundle(bundle, self.settings)
        assert report["passed"] is True
        checks = report["checks"]
        extra = checks["B_gluing"]["tol"] - checks["flatness"]["tol"]
        assert extra == pytest.approx(1e3 * abs(self.settings.k) * 0.005**3)

    def test_strict_with_coboundary(self):
        """余境界つきのバンドルで3種類の検証が行われるテスト"""
        bundle = {
            "kind": "strict",
            "generator": "central_coboundary",
            "seed": 2,
            "cover": self.cover,
            "coboundary": {"seed": 5},
        }
        report = validate_bundle(bundle, self.settings)
        assert report["passed"] is True
        assert "transformed.h_relation" in report["checks"]
        assert "coboundary.g_relation" in report["checks"]

    def test_kind_mismatch(self):
        """期待する種類と異なるとエラーになるテスト"""
        with pytest.raises(ValueError):
            validate_bundle({"kind": "weak"}, self.settings, kind="strict")

    def test_unknown_generator(self):
        """未知の生成器でエラーになるテスト"""
        with pytest.raises(ValueError):
            validate_bundle({"kind": "weak", "generator": "magic"}, self.settings)

    def test_unknown_key(self):
        """未知のキーでエラーになるテスト"""
        with pytest.raises(ValueError):
            validate_bundle({"kind": "ordinary", "colour": 1}, self.settings)

    def test_load_bundle(self):
        """ファイルからの読み込みテスト"""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "bundle.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"kind": "ordinary", "generator": "trivial"}, f)
            assert load_bundle(path)["kind"] == "ordinary"

    def test_load_invalid_json(self):
        """不正なJSONでエラーになるテスト"""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "bundle.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write("{not json")
            with pytest.raises(ValueError):
                load_bundle(path)

    def test_missing_file(self):
        """存在しないファイルでエラーになるテスト"""
        with pytest.raises(ValueError):
            load_bundle("/nonexistent/bundle.json")
