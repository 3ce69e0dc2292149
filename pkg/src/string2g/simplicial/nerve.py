#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
脈体モジュール

群SU(2)の脈体 N(BG) の点、面写像・退化写像、SU(2)の8パッチ被覆の
述語を提供します。
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..group import SU2Element
from ..utils import build_check_report, create_rng, log_info, residual_stats

# 脈体・被覆で扱う最大レベル
MAX_LEVEL = 4

# 基本パッチの添字 I₁ = {1, …, 8}
PATCH_INDICES: Tuple[int, ...] = tuple(range(1, 9))

_COORDINATE_NAMES = ("x", "y", "z", "w")


def patch_membership(g: SU2Element, i: int) -> bool:
    """
    基本パッチの所属判定

    奇数の添字は座標 ≥ 0、偶数の添字は座標 < 0 を表し、
    座標は (i−1)//2 番目（x, y, z, w の順）です。

    Args:
        g: 群の元
        i: パッチ添字（1〜8）

    Returns:
        bool: 所属する場合True

    Raises:
        ValueError: 添字が範囲外の場合
    """
    if i not in PATCH_INDICES:
        raise ValueError(f"パッチ添字は1〜8である必要があります: {i}")
    coordinate = g.as_tuple()[(i - 1) // 2]
    return coordinate >= 0.0 if i % 2 == 1 else coordinate < 0.0


def patches_containing(g: SU2Element) -> List[int]:
    """gを含むパッチ添字の昇順リスト（常に4個）"""
    return [i for i in PATCH_INDICES if patch_membership(g, i)]


def minimal_patch(g: SU2Element) -> int:
    """gを含む最小のパッチ添字"""
    return patches_containing(g)[0]


def describe_cover() -> Dict[str, Any]:
    """
    被覆の記述（パッチ述語と順序）

    Returns:
        Dict[str, Any]: JSON化可能な記述
    """
    patches = []
    for i in PATCH_INDICES:
        name = _COORDINATE_NAMES[(i - 1) // 2]
        patches.append(
            {
                "index": i,
                "coordinate": name,
                "predicate": f"{name} >= 0" if i % 2 == 1 else f"{name} < 0",
            }
        )
    return {
        "group": "SU(2)",
        "parameterization": "unit quaternion (x, y, z, w)",
        "patches": patches,
        "labels": "edge (a, b), a < b, of a p-simplex labelled by a patch "
        "containing g_{a+1}...g_b",
        "order": "level 1: patch index; level p: lexicographic over the face keys",
        "section": "phi1(g) = minimal patch containing g",
        "max_level": MAX_LEVEL,
    }


@dataclass(frozen=True)
class NervePoint:
    """脈体 N(BG) のレベルpの点 (g₁, …, g_p)"""

    elements: Tuple[SU2Element, ...]

    def __post_init__(self) -> None:
        """初期化後の検証"""
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) > MAX_LEVEL:
            raise ValueError(
                f"レベルの上限{MAX_LEVEL}を超えています: {len(self.elements)}"
            )

    @property
    def level(self) -> int:
        """レベルp"""
        return len(self.elements)

    @classmethod
    def star(cls) -> "NervePoint":
        """レベル0の唯一の点 *"""
        return cls(())

    @classmethod
    def random(cls, rng: np.random.Generator, level: int) -> "NervePoint":
        """Haar一様なレベルlevelの点"""
        return cls(tuple(SU2Element.random(rng) for _ in range(level)))

    def edge_element(self, a: int, b: int) -> SU2Element:
        """辺 (a, b) の元 g_{a+1}⋯g_b（a = b なら単位元）"""
        if a == b:
            return SU2Element.identity()
        result = self.elements[a]
        for g in self.elements[a + 1 : b]:
            result = result * g
        return result

    def face(self, i: int) -> "NervePoint":
        """
        面写像 f_i

        f₀ は g₁ を落とし、f_p は g_p を落とし、それ以外は g_i g_{i+1} を併合します。

        Raises:
            ValueError: 添字が範囲外の場合
        """
        p = self.level
        if p == 0 or not 0 <= i <= p:
            raise ValueError(f"面写像の添字が範囲外です: level={p}, i={i}")
        g = self.elements
        if i == 0:
            return NervePoint(g[1:])
        if i == p:
            return NervePoint(g[:-1])
        return NervePoint(g[: i - 1] + (g[i - 1] * g[i],) + g[i + 1 :])

    def degeneracy(self, i: int) -> "NervePoint":
        """
        退化写像 d_i（位置iに単位元を挿入）

        Raises:
            ValueError: 添字が範囲外の場合
        """
        p = self.level
        if not 0 <= i <= p:
            raise ValueError(f"退化写像の添字が範囲外です: level={p}, i={i}")
        g = self.elements
        return NervePoint(g[:i] + (SU2Element.identity(),) + g[i:])

    def distance(self, other: "NervePoint") -> float:
        """成分ごとの距離の最大値（レベル不一致は無限大）"""
        if self.level != other.level:
            return float("inf")
        if self.level == 0:
            return 0.0
        return max(a.distance(b) for a, b in zip(self.elements, other.elements))

    def same_as(self, other: "NervePoint", tol: float = 1e-12) -> bool:
        """許容誤差内で同じ点かどうか"""
        return self.distance(other) <= tol


_Map = Callable[[NervePoint], NervePoint]


def _simplicial_identities(p: int) -> List[Tuple[str, _Map, _Map]]:
    """レベルpの点に適用できる単体的恒等式の一覧"""
    identities: List[Tuple[str, _Map, _Map]] = []
    for j in range(p + 1):
        for i in range(j):
            if p >= 2:
                identities.append(
                    (
                        "face_face",
                        lambda s, i=i, j=j: s.face(j).face(i),
                        lambda s, i=i, j=j: s.face(i).face(j - 1),
                    )
                )
    for j in range(p + 1):
        identities.append(
            ("face_degeneracy_id", lambda s, j=j: s.degeneracy(j).face(j), lambda s: s)
        )
        identities.append(
            (
                "face_degeneracy_id",
                lambda s, j=j: s.degeneracy(j).face(j + 1),
                lambda s: s,
            )
        )
        for i in range(p + 2):
            if i < j and p >= 1:
                identities.append(
                    (
                        "face_degeneracy",
                        lambda s, i=i, j=j: s.degeneracy(j).face(i),
                        lambda s, i=i, j=j: s.face(i).degeneracy(j - 1),
                    )
                )
            elif i > j + 1 and p >= 1:
                identities.append(
                    (
                        "face_degeneracy",
                        lambda s, i=i, j=j: s.degeneracy(j).face(i),
                        lambda s, i=i, j=j: s.face(i - 1).degeneracy(j),
                    )
                )
    if p + 2 <= MAX_LEVEL:
        for j in range(p + 1):
            for i in range(j + 1):
                identities.append(
                    (
                        "degeneracy_degeneracy",
                        lambda s, i=i, j=j: s.degeneracy(j).degeneracy(i),
                        lambda s, i=i, j=j: s.degeneracy(i).degeneracy(j + 1),
                    )
                )
    return identities


def simplicial_identities_check(
    seed: int, samples: int = 100, tol: float = 1e-12, max_level: int = 3
) -> Dict[str, Any]:
    """
    単体的恒等式の検証

    乱数点と恒等元だけからなる点の両方で、レベル0〜max_levelの
    面・退化写像の恒等式を評価します。

    Args:
        seed: 乱数シード
        samples: レベルごとのサンプル数
        tol: 許容誤差
        max_level: 検証する最大レベル

    Returns:
        Dict[str, Any]: 恒等式の種類ごとの残差統計
    """
    rng = create_rng(seed, 1)
    residuals: Dict[str, List[float]] = {}
    for p in range(0, max_level + 1):
        points = [NervePoint.random(rng, p) for _ in range(samples)]
        points.append(NervePoint(tuple(SU2Element.identity() for _ in range(p))))
        for name, lhs, rhs in _simplicial_identities(p):
            values = residuals.setdefault(name, [])
            for s in points:
                values.append(lhs(s).distance(rhs(s)))

    checks = {name: residual_stats(values, tol) for name, values in residuals.items()}
    log_info(f"単体的恒等式の検証が完了しました: {len(checks)}種類")
    return build_check_report(checks)
