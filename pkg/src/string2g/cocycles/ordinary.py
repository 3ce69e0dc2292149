#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
通常のČechコサイクルモジュール

主束の遷移関数 g_ij の生成とコサイクル条件 g_ij g_jk = g_ik の検証
"""

from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..group import GroupElement, Spin4Element, SU2Element
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)
from .finite_cover import FiniteCover, smooth_spin4_map, smooth_su2_map

TransitionFunc = Callable[[int, int, np.ndarray], GroupElement]

GROUPS = ("su2", "spin4")


def _identity(group: str) -> GroupElement:
    if group == "su2":
        return SU2Element.identity()
    if group == "spin4":
        return Spin4Element.identity()
    raise ValueError(f"未知の構造群です: {group}")


def _smooth_map(group: str, rng: np.random.Generator, amplitude: float) -> Callable:
    if group == "su2":
        return smooth_su2_map(rng, amplitude)
    return smooth_spin4_map(rng, amplitude)


@dataclass(frozen=True)
class OrdinaryCocycle:
    """重なりごとの遷移関数 g_ij: U_i∩U_j → G"""

    g: TransitionFunc
    group: str = "su2"
    name: str = "g"

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if self.group not in GROUPS:
            raise ValueError(f"未知の構造群です: {self.group}")


def trivial_ordinary_cocycle(group: str = "su2") -> OrdinaryCocycle:
    """g_ij ≡ 1"""
    unit = _identity(group)
    return OrdinaryCocycle(lambda i, j, x: unit, group, "trivial")


def coboundary_ordinary_cocycle(
    cover: FiniteCover, seed: int, group: str = "su2", amplitude: float = 1.0
) -> OrdinaryCocycle:
    """パッチごとの γ_i から作る g_ij = γ_i γ_j⁻¹"""
    _identity(group)
    rng = create_rng(seed, 60)
    gammas = [_smooth_map(group, rng, amplitude) for _ in range(cover.n_patches)]

    def g(i: int, j: int, x: np.ndarray) -> GroupElement:
        return gammas[i](x) * gammas[j](x).inverse()

    return OrdinaryCocycle(g, group, f"coboundary-{seed}")


def random_ordinary_cocycle(
    cover: FiniteCover, seed: int, group: str = "su2", amplitude: float = 1.0
) -> OrdinaryCocycle:
    """互いに無関係な g_ij（一般にコサイクル条件を満たさない）"""
    unit = _identity(group)
    rng = create_rng(seed, 61)
    maps = {
        (i, j): _smooth_map(group, rng, amplitude)
        for i in range(cover.n_patches)
        for j in range(cover.n_patches)
        if i != j
    }

    def g(i: int, j: int, x: np.ndarray) -> GroupElement:
        return unit if i == j else maps[(i, j)](x)

    return OrdinaryCocycle(g, group, f"random-{seed}")


def validate_ordinary(
    cocycle: OrdinaryCocycle,
    cover: FiniteCover,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    コサイクル条件 g_ij g_jk = g_ik の検証

    Args:
        cocycle: 遷移関数
        cover: 有限被覆
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 三重の重なりでの群距離の統計
    """
    triples = cover.overlaps(3)

    def residual(item: Any) -> float:
        (i, j, k), x = item
        lhs = cocycle.g(i, j, x) * cocycle.g(j, k, x)
        return float(lhs.distance(cocycle.g(i, k, x)))

    checks = {
        "triple_product": residual_stats(
            parallel_map(residual, list(triples.items), executor), tol
        )
    }
    log_info(f"通常のコサイクルを検証しました: {cocycle.name}, samples={len(triples)}")
    return build_check_report(checks, overlaps={"triple": triples.summary()})
