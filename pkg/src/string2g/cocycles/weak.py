#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
弱ストリング2群値のČechコサイクルモジュール

次数2のČechコサイクル (v_ij, a_ijk) と余境界 (β_i, α_ij) の生成・変換・検証
"""

from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..cohomology import SMThreeCocycle, circle_distance
from ..group import SU2Element
from ..simplicial import (
    PATCH_INDICES,
    CoverPoint,
    NervePoint,
    SimplicialIndex,
    otimes,
    patch_membership,
    phi1,
    phi2,
    phi3,
    unit_object,
)
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)
from .finite_cover import FiniteCover, smooth_su2_map

ObjectFunc2 = Callable[[int, int, np.ndarray], CoverPoint]


@dataclass(frozen=True)
class WeakCocycle:
    """重なり上の v_ij ∈ V₁ と三重の重なり上の a_ijk ∈ U(1)（実数の代表元）"""

    v: ObjectFunc2
    a: Callable[[int, int, int, np.ndarray], float]
    name: str = "weak"


@dataclass(frozen=True)
class WeakCoboundary:
    """パッチ上の β_i ∈ V₁ と重なり上の α_ij ∈ U(1)"""

    beta: Callable[[int, np.ndarray], CoverPoint]
    alpha: Callable[[int, int, np.ndarray], float]
    name: str = "weak-coboundary"


def lambda03_at(
    lam: SMThreeCocycle, x: CoverPoint, y: CoverPoint, z: CoverPoint
) -> float:
    """Λ(x, y, z) = λ⁰³(φ₃(x, y, z))"""
    return lam.lambda03.value(phi3(x, y, z))


def lambda12_at(lam: SMThreeCocycle, s0: CoverPoint, s1: CoverPoint) -> float:
    """λ¹²(s₀, s₁)（射影が一致しない場合は ValueError）"""
    return lam.lambda12.value(s0, s1)


def trivial_weak_cocycle() -> WeakCocycle:
    """自明束 v ≡ 1, a ≡ 0"""
    unit = unit_object()
    return WeakCocycle(lambda i, j, x: unit, lambda i, j, k, x: 0.0, "trivial")


def identity_weak_coboundary() -> WeakCoboundary:
    """β ≡ 1, α ≡ 0"""
    unit = unit_object()
    return WeakCoboundary(lambda i, x: unit, lambda i, j, x: 0.0, "identity")


def _labelled(element: SU2Element, order: np.ndarray) -> CoverPoint:
    label = next(int(i) for i in order if patch_membership(element, int(i)))
    return CoverPoint(NervePoint((element,)), SimplicialIndex(1, (label,)))


def random_weak_coboundary(
    cover: FiniteCover,
    seed: int,
    amplitude: float = 1.0,
    beta_maps: Optional[Dict[int, Callable[[np.ndarray], SU2Element]]] = None,
) -> WeakCoboundary:
    """
    ランダムな余境界

    β_i のラベルはパッチ添字のランダムな並びのうち最初に元を含むもの、
    α_ij は i ≠ j で c_ij + w_ij·x、対角では0です。

    Args:
        cover: 有限被覆
        seed: 乱数シード
        amplitude: 振幅
        beta_maps: β_i の群の元を与える写像（省略時はランダム）

    Returns:
        WeakCoboundary: 余境界
    """
    rng = create_rng(seed, 70)
    maps = beta_maps or {
        i: smooth_su2_map(rng, amplitude) for i in range(cover.n_patches)
    }
    orders = {i: rng.permutation(PATCH_INDICES) for i in range(cover.n_patches)}
    constants = amplitude * rng.normal(size=(cover.n_patches, cover.n_patches))
    slopes = amplitude * rng.normal(size=(cover.n_patches, cover.n_patches, 4))

    def beta(i: int, x: np.ndarray) -> CoverPoint:
        return _labelled(maps[i](x), orders[i])

    def alpha(i: int, j: int, x: np.ndarray) -> float:
        if i == j:
            return 0.0
        return float(constants[i, j] + slopes[i, j] @ np.asarray(x, dtype=float))

    return WeakCoboundary(beta, alpha, f"random-{seed}")


def transition_triangle(
    lam: SMThreeCocycle,
    v_ij: CoverPoint,
    v_jk: CoverPoint,
    v_ik: CoverPoint,
    beta_i: CoverPoint,
    beta_j: CoverPoint,
    beta_k: CoverPoint,
    w_ij: CoverPoint,
    w_jk: CoverPoint,
    w_ik: CoverPoint,
) -> float:
    """
    α の関係式のうち a, α を含まない部分

    λ¹²(φ₂(v_ik,β_k), φ₂(v_ij⊗v_jk,β_k)) − λ¹²(φ₂(β_i,v'_ik), φ₂(β_i,v'_ij⊗v'_jk))
    − Λ(β_i,v'_ij,v'_jk) + Λ(v_ij,β_j,v'_jk) − Λ(v_ij,v_jk,β_k)
    """
    first = lambda12_at(lam, phi2(v_ik, beta_k), phi2(otimes(v_ij, v_jk), beta_k))
    second = lambda12_at(lam, phi2(beta_i, w_ik), phi2(beta_i, otimes(w_ij, w_jk)))
    terms = (
        lambda03_at(lam, beta_i, w_ij, w_jk)
        - lambda03_at(lam, v_ij, beta_j, w_jk)
        + lambda03_at(lam, v_ij, v_jk, beta_k)
    )
    return first - second - terms


def apply_weak_coboundary(
    cocycle: WeakCocycle, coboundary: WeakCoboundary, lam: SMThreeCocycle
) -> WeakCocycle:
    """
    余境界によるコサイクルの変換

    v'_ij = φ₁(π(β_i)⁻¹ π(v_ij) π(β_j)) とし、α の関係式を a'_ijk について解きます。
    """
    beta, alpha = coboundary.beta, coboundary.alpha

    def v(i: int, j: int, x: np.ndarray) -> CoverPoint:
        element = (
            beta(i, x).group_element().inverse()
            * cocycle.v(i, j, x).group_element()
            * beta(j, x).group_element()
        )
        return phi1(element)

    def a(i: int, j: int, k: int, x: np.ndarray) -> float:
        rest = transition_triangle(
            lam,
            cocycle.v(i, j, x),
            cocycle.v(j, k, x),
            cocycle.v(i, k, x),
            beta(i, x),
            beta(j, x),
            beta(k, x),
            v(i, j, x),
            v(j, k, x),
            v(i, k, x),
        )
        return (
            cocycle.a(i, j, k, x)
            + alpha(i, k, x)
            - alpha(i, j, x)
            - alpha(j, k, x)
            + rest
        )

    return WeakCocycle(v, a, f"{cocycle.name}*{coboundary.name}")


def perturb_weak_a(
    cocycle: WeakCocycle, triple: tuple = (0, 1, 2), amount: float = 0.1
) -> WeakCocycle:
    """1つの三重の重なり上で a を摂動"""

    def a(i: int, j: int, k: int, x: np.ndarray) -> float:
        value = cocycle.a(i, j, k, x)
        return value + amount if (i, j, k) == tuple(triple) else value

    return WeakCocycle(cocycle.v, a, f"{cocycle.name}+perturbed")


def _object_distance(v: CoverPoint, w: CoverPoint) -> float:
    return v.point.distance(w.point) if v.index == w.index else 1.0


def weak_cocycle_residuals(
    cocycle: WeakCocycle, lam: SMThreeCocycle
) -> Dict[str, Callable[[Any], float]]:
    """
    コサイクル条件の残差関数（添字の組と点を受け取る）

    a の関係式の引数がファイバー積に入らない場合は残差1とします。
    """
    unit = unit_object()

    def projection(item: Any) -> float:
        (i, j, k), x = item
        product = (
            cocycle.v(i, j, x).group_element() * cocycle.v(j, k, x).group_element()
        )
        return cocycle.v(i, k, x).group_element().distance(product)

    def normalization(item: Any) -> float:
        (i,), x = item
        return _object_distance(cocycle.v(i, i, x), unit)

    def a_relation(item: Any) -> float:
        (i, j, k, l), x = item
        pairs = [(i, j), (j, k), (k, l), (i, k), (j, l)]
        v = {pair: cocycle.v(*pair, x) for pair in pairs}
        try:
            total = (
                cocycle.a(i, k, l, x)
                + cocycle.a(i, j, k, x)
                + lambda12_at(
                    lam,
                    phi2(v[(i, k)], v[(k, l)]),
                    phi2(otimes(v[(i, j)], v[(j, k)]), v[(k, l)]),
                )
                - cocycle.a(i, j, l, x)
                - cocycle.a(j, k, l, x)
                - lambda12_at(
                    lam,
                    phi2(v[(i, j)], v[(j, l)]),
                    phi2(v[(i, j)], otimes(v[(j, k)], v[(k, l)])),
                )
                - lambda03_at(lam, v[(i, j)], v[(j, k)], v[(k, l)])
            )
        except ValueError:
            return 1.0
        return circle_distance(total)

    return {
        "projection": projection,
        "normalization": normalization,
        "a_relation": a_relation,
    }


def validate_weak(
    cocycle: WeakCocycle,
    lam: SMThreeCocycle,
    cover: FiniteCover,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    次数2のČechコサイクル条件の検証

    π(v_ik) = π(v_ij ⊗ v_jk)、v_ii = 1、および λ¹²・λ⁰³ を含む a の関係式

    Args:
        cocycle: 検証するコサイクル
        lam: Segal–Mitchison 3コサイクル
        cover: 有限被覆
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート
    """
    residuals = weak_cocycle_residuals(cocycle, lam)
    samples = {
        "projection": cover.overlaps(3),
        "normalization": cover.overlaps(1),
        "a_relation": cover.overlaps(4),
    }
    checks = {
        name: residual_stats(
            parallel_map(residuals[name], list(samples[name].items), executor), tol
        )
        for name in residuals
    }
    log_info(f"弱2コサイクルを検証しました: {cocycle.name}")
    return build_check_report(
        checks, overlaps={name: s.summary() for name, s in samples.items()}
    )


def weak_coboundary_residuals(
    cocycle: WeakCocycle,
    transformed: WeakCocycle,
    coboundary: WeakCoboundary,
    lam: SMThreeCocycle,
) -> Dict[str, Callable[[Any], float]]:
    """余境界の関係式の残差関数"""
    beta, alpha = coboundary.beta, coboundary.alpha

    def projection(item: Any) -> float:
        (i, j), x = item
        lhs = beta(i, x).group_element() * transformed.v(i, j, x).group_element()
        rhs = cocycle.v(i, j, x).group_element() * beta(j, x).group_element()
        return lhs.distance(rhs)

    def alpha_diagonal(item: Any) -> float:
        (i,), x = item
        return circle_distance(alpha(i, i, x))

    def alpha_relation(item: Any) -> float:
        (i, j, k), x = item
        try:
            rest = transition_triangle(
                lam,
                cocycle.v(i, j, x),
                cocycle.v(j, k, x),
                cocycle.v(i, k, x),
                beta(i, x),
                beta(j, x),
                beta(k, x),
                transformed.v(i, j, x),
                transformed.v(j, k, x),
                transformed.v(i, k, x),
            )
        except ValueError:
            return 1.0
        total = (
            alpha(i, k, x)
            + cocycle.a(i, j, k, x)
            - alpha(i, j, x)
            - transformed.a(i, j, k, x)
            - alpha(j, k, x)
            + rest
        )
        return circle_distance(total)

    return {
        "projection": projection,
        "alpha_diagonal": alpha_diagonal,
        "alpha_relation": alpha_relation,
    }


def validate_weak_coboundary(
    cocycle: WeakCocycle,
    transformed: WeakCocycle,
    coboundary: WeakCoboundary,
    lam: SMThreeCocycle,
    cover: FiniteCover,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    次数2のČech余境界の関係式の検証

    Args:
        cocycle: 元のコサイクル (v, a)
        transformed: 変換後のコサイクル (v', a')
        coboundary: (β, α)
        lam: Segal–Mitchison 3コサイクル
        cover: 有限被覆
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート
    """
    residuals = weak_coboundary_residuals(cocycle, transformed, coboundary, lam)
    samples = {
        "projection": cover.overlaps(2),
        "alpha_diagonal": cover.overlaps(1),
        "alpha_relation": cover.overlaps(3),
    }
    checks = {
        name: residual_stats(
            parallel_map(residuals[name], list(samples[name].items), executor), tol
        )
        for name in residuals
    }
    log_info(f"弱2余境界を検証しました: {coboundary.name}")
    return build_check_report(
        checks, overlaps={name: s.summary() for name, s in samples.items()}
    )
