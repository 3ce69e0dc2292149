#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限被覆モジュール

底空間の点群とパッチ述語による有限被覆、重なり U_i∩U_j∩… の標本、
被覆上の滑らかな写像の生成を提供します。
"""

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import CoverConfig
from ..group import Spin4Element, SU2Element
from ..utils import create_rng, log_info, log_warning

OverlapIndex = Tuple[int, ...]


@dataclass(frozen=True)
class OverlapSamples:
    """
    重なりの標本

    Attributes:
        items: (パッチ添字の組, 点) のリスト
        skipped: 空だった重なりの数
        tuples: 調べた添字の組の数
    """

    items: Tuple[Tuple[OverlapIndex, np.ndarray], ...]
    skipped: int
    tuples: int

    def __len__(self) -> int:
        return len(self.items)

    def summary(self) -> Dict[str, int]:
        """レポート用の件数"""
        return {
            "samples": len(self.items),
            "overlaps": self.tuples,
            "skipped_overlaps": self.skipped,
        }


class FiniteCover:
    """
    点群 ⊂ ℝ⁴ 上の有限被覆

    パッチ U_i は x̂·n_i > threshold を満たす点の集合です。
    """

    def __init__(
        self,
        normals: np.ndarray,
        threshold: float,
        base_points: np.ndarray,
        max_points_per_overlap: int = 32,
        name: str = "cover",
    ):
        """
        初期化

        Args:
            normals: パッチの法線 (パッチ数, 4)
            threshold: 所属判定の閾値
            base_points: 底空間の標本点 (点数, 4)
            max_points_per_overlap: 重なりごとの標本数の上限
            name: 表示名

        Raises:
            ValueError: 形が不正な場合、またはどのパッチにも属さない点がある場合
        """
        self.normals = np.atleast_2d(np.asarray(normals, dtype=float))
        self.base_points = np.atleast_2d(np.asarray(base_points, dtype=float))
        if self.normals.shape[1] != 4 or self.base_points.shape[1] != 4:
            raise ValueError("法線と標本点は4成分である必要があります")
        if max_points_per_overlap < 1:
            raise ValueError(
                f"重なりの標本数は1以上である必要があります: {max_points_per_overlap}"
            )
        self.threshold = float(threshold)
        self.max_points_per_overlap = max_points_per_overlap
        self.name = name
        uncovered = [x for x in self.base_points if not self.patches_containing(x)]
        if uncovered:
            raise ValueError(f"どのパッチにも属さない標本点があります: {len(uncovered)}点")

    def __repr__(self) -> str:
        return (
            f"FiniteCover({self.name}, patches={self.n_patches}, "
            f"points={len(self.base_points)})"
        )

    @property
    def n_patches(self) -> int:
        """パッチ数"""
        return int(self.normals.shape[0])

    def contains(self, i: int, x: np.ndarray) -> bool:
        """点xがパッチiに属するかどうか"""
        if not 0 <= i < self.n_patches:
            raise ValueError(f"パッチ添字が範囲外です: {i}")
        point = np.asarray(x, dtype=float)
        norm = float(np.linalg.norm(point))
        direction = point / norm if norm > 0.0 else point
        return bool(direction @ self.normals[i] > self.threshold)

    def patches_containing(self, x: np.ndarray) -> List[int]:
        """点xを含むパッチ添字の昇順リスト"""
        return [i for i in range(self.n_patches) if self.contains(i, x)]

    def overlaps(self, order: int) -> OverlapSamples:
        """
        order重の重なりの標本

        添字は重複を許す順序付きの組で、空の重なりは数えて飛ばします。

        Args:
            order: 添字の個数（1以上）

        Returns:
            OverlapSamples: 標本
        """
        if order < 1:
            raise ValueError(f"重なりの次数は1以上である必要があります: {order}")
        membership = [
            set(self.patches_containing(x)) for x in self.base_points
        ]
        items: List[Tuple[OverlapIndex, np.ndarray]] = []
        skipped = 0
        tuples = 0
        for indices in product(range(self.n_patches), repeat=order):
            tuples += 1
            needed = set(indices)
            points = [
                x for x, inside in zip(self.base_points, membership) if needed <= inside
            ][: self.max_points_per_overlap]
            if not points:
                skipped += 1
                continue
            items.extend((indices, x) for x in points)
        if skipped:
            log_warning(f"空の重なりを飛ばしました: order={order}, skipped={skipped}")
        return OverlapSamples(tuple(items), skipped, tuples)

    def describe(self) -> Dict[str, Any]:
        """JSON化可能な被覆の記述"""
        return {
            "name": self.name,
            "patches": self.n_patches,
            "normals": self.normals.tolist(),
            "threshold": self.threshold,
            "n_base_points": int(len(self.base_points)),
            "max_points_per_overlap": self.max_points_per_overlap,
        }


def sample_sphere(
    rng: np.random.Generator, count: int, radius: float = 1.0
) -> np.ndarray:
    """S³ 上の一様な標本点"""
    raw = rng.normal(size=(count, 4))
    return radius * raw / np.linalg.norm(raw, axis=1, keepdims=True)


def create_sphere_cover(
    config: Optional[CoverConfig] = None, seed: int = 0
) -> FiniteCover:
    """
    S³ の3パッチ被覆を作成

    法線は n_i = (cos 2πi/3, sin 2πi/3, 0, 0) で、Σ n_i = 0 なので
    すべての点が少なくとも1つのパッチに属します。

    Args:
        config: 被覆設定
        seed: 標本点の乱数シード

    Returns:
        FiniteCover: 被覆
    """
    cfg = config or CoverConfig()
    angles = 2.0 * np.pi * np.arange(3) / 3.0
    normals = np.zeros((3, 4))
    normals[:, 0] = np.cos(angles)
    normals[:, 1] = np.sin(angles)
    points = sample_sphere(create_rng(seed, 50), cfg.n_base_points)
    cover = FiniteCover(
        normals,
        cfg.overlap_threshold,
        points,
        cfg.max_points_per_overlap,
        "S3-three-patch",
    )
    log_info(f"被覆を作成しました: {cover}")
    return cover


def create_single_patch_cover(
    n_points: int = 64, seed: int = 0, max_points_per_overlap: int = 32
) -> FiniteCover:
    """S³ を1つのパッチで覆う被覆"""
    points = sample_sphere(create_rng(seed, 51), n_points)
    return FiniteCover(
        np.zeros((1, 4)), -1.0, points, max_points_per_overlap, "S3-single-patch"
    )


def smooth_su2_map(
    rng: np.random.Generator, amplitude: float = 1.0
) -> Callable[[np.ndarray], SU2Element]:
    """x ↦ exp(Wx + b) の形の滑らかな SU(2) 値写像"""
    weights = amplitude * rng.normal(size=(3, 4))
    offset = amplitude * rng.normal(size=3)
    return lambda x: SU2Element.exp(weights @ np.asarray(x, dtype=float) + offset)


def smooth_spin4_map(
    rng: np.random.Generator, amplitude: float = 1.0
) -> Callable[[np.ndarray], Spin4Element]:
    """x ↦ exp(Wx + b) の形の滑らかな Spin(4) 値写像"""
    weights = amplitude * rng.normal(size=(6, 4))
    offset = amplitude * rng.normal(size=6)
    return lambda x: Spin4Element.exp(weights @ np.asarray(x, dtype=float) + offset)


def smooth_scalar_map(
    rng: np.random.Generator, amplitude: float = 1.0
) -> Callable[[np.ndarray], float]:
    """x ↦ c + w·x + ½ sin(u·x) の形の滑らかな実数値写像"""
    constant = amplitude * float(rng.normal())
    linear = amplitude * rng.normal(size=4)
    frequency = rng.normal(size=4)

    def func(x: np.ndarray) -> float:
        point = np.asarray(x, dtype=float)
        return constant + float(linear @ point) + 0.5 * amplitude * float(
            np.sin(frequency @ point)
        )

    return func
