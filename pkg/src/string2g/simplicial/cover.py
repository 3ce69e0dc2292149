#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
単体的被覆モジュール

脈体の単体的被覆の添字（辺ラベル）、被覆点、切断φ₁、
ホーン充填φ₂・φ₃、五角形用の4単体を提供します。
"""

from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..group import SU2Element
from ..utils import build_check_report, create_rng, log_info, residual_stats
from .nerve import (
    MAX_LEVEL,
    NervePoint,
    minimal_patch,
    patch_membership,
    patches_containing,
    simplicial_identities_check,
)

Edge = Tuple[int, int]


def simplex_edges(level: int) -> List[Edge]:
    """レベルpの単体の辺 (a, b), a < b を辞書式順で列挙"""
    return list(combinations(range(level + 1), 2))


@total_ordering
@dataclass(frozen=True)
class SimplicialIndex:
    """
    単体的被覆の添字

    レベルpの添字は、単体の各辺 (a, b) に基本パッチ添字を割り当てたものです。
    """

    level: int
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        """初期化後の検証"""
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"レベルが範囲外です: {self.level}")
        expected = len(simplex_edges(self.level))
        if len(self.labels) != expected:
            raise ValueError(
                f"ラベル数が不正です: level={self.level}, labels={len(self.labels)}"
            )
        for label in self.labels:
            if not 1 <= label <= 8:
                raise ValueError(f"パッチ添字は1〜8である必要があります: {label}")

    @classmethod
    def from_edges(
        cls, level: int, edge_labels: Mapping[Edge, int]
    ) -> "SimplicialIndex":
        """辺 → ラベルの対応から作成"""
        return cls(level, tuple(edge_labels[e] for e in simplex_edges(level)))

    def edge_labels(self) -> Dict[Edge, int]:
        """辺 → ラベルの対応"""
        return dict(zip(simplex_edges(self.level), self.labels))

    def label(self, a: int, b: int) -> int:
        """辺 (a, b) のラベル"""
        return self.edge_labels()[(a, b)]

    def face(self, i: int) -> "SimplicialIndex":
        """
        面写像（頂点iの削除）

        Raises:
            ValueError: 添字が範囲外の場合
        """
        if self.level == 0 or not 0 <= i <= self.level:
            raise ValueError(f"面写像の添字が範囲外です: level={self.level}, i={i}")
        old = self.edge_labels()

        def lift(a: int) -> int:
            return a if a < i else a + 1

        return SimplicialIndex.from_edges(
            self.level - 1,
            {(a, b): old[(lift(a), lift(b))] for a, b in simplex_edges(self.level - 1)},
        )

    def degeneracy(self, j: int) -> "SimplicialIndex":
        """
        退化写像（頂点jの複製）。潰れた辺のラベルは1（単位元を含む）

        Raises:
            ValueError: 添字が範囲外の場合
        """
        if not 0 <= j <= self.level:
            raise ValueError(f"退化写像の添字が範囲外です: level={self.level}, j={j}")
        old = self.edge_labels()

        def collapse(a: int) -> int:
            return a if a <= j else a - 1

        labels: Dict[Edge, int] = {}
        for a, b in simplex_edges(self.level + 1):
            sa, sb = collapse(a), collapse(b)
            labels[(a, b)] = 1 if sa == sb else old[(sa, sb)]
        return SimplicialIndex.from_edges(self.level + 1, labels)

    def key(self) -> Any:
        """全順序のキー（レベル1はラベル、レベルpは面のキーのタプル）"""
        if self.level == 0:
            return ()
        if self.level == 1:
            return self.labels[0]
        return tuple(self.face(i).key() for i in range(self.level + 1))

    def __lt__(self, other: "SimplicialIndex") -> bool:
        if not isinstance(other, SimplicialIndex):
            return NotImplemented
        if self.level != other.level:
            return self.level < other.level
        return bool(self.key() < other.key())


@dataclass(frozen=True)
class CoverPoint:
    """被覆 V_p の点（脈体の点とパッチ添字の組）"""

    point: NervePoint
    index: SimplicialIndex

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if self.point.level != self.index.level:
            raise ValueError(
                f"点と添字のレベルが一致しません: {self.point.level} != {self.index.level}"
            )

    @property
    def level(self) -> int:
        """レベルp"""
        return self.point.level

    def projection(self) -> NervePoint:
        """射影 π"""
        return self.point

    def group_element(self) -> SU2Element:
        """レベル1の点の群の元 π(v)"""
        if self.level != 1:
            raise ValueError(f"レベル1の点ではありません: level={self.level}")
        return self.point.elements[0]

    @property
    def patch(self) -> int:
        """レベル1の点のパッチ添字"""
        if self.level != 1:
            raise ValueError(f"レベル1の点ではありません: level={self.level}")
        return self.index.labels[0]

    def is_member(self) -> bool:
        """すべての辺の元がそのラベルのパッチに属するかどうか"""
        for (a, b), label in self.index.edge_labels().items():
            if not patch_membership(self.point.edge_element(a, b), label):
                return False
        return True

    def face(self, i: int) -> "CoverPoint":
        """面写像"""
        return CoverPoint(self.point.face(i), self.index.face(i))

    def degeneracy(self, j: int) -> "CoverPoint":
        """退化写像"""
        return CoverPoint(self.point.degeneracy(j), self.index.degeneracy(j))

    def same_as(self, other: "CoverPoint", tol: float = 1e-12) -> bool:
        """同じ添字で許容誤差内の点かどうか"""
        return self.index == other.index and self.point.same_as(other.point, tol)


def fill_horn(point: NervePoint, fixed: Mapping[Edge, int]) -> CoverPoint:
    """
    辞書式最小のホーン充填

    固定されていない辺には、その辺の元を含む最小のパッチを割り当てます。

    Args:
        point: 脈体の点
        fixed: 固定する辺ラベル

    Returns:
        CoverPoint: 充填された被覆点

    Raises:
        ValueError: 固定ラベルがパッチ条件を満たさない場合
    """
    labels: Dict[Edge, int] = {}
    for a, b in simplex_edges(point.level):
        element = point.edge_element(a, b)
        if (a, b) in fixed:
            label = fixed[(a, b)]
            if not patch_membership(element, label):
                raise ValueError(f"辺{(a, b)}の元がパッチ{label}に属しません")
            labels[(a, b)] = label
        else:
            labels[(a, b)] = minimal_patch(element)
    return CoverPoint(point, SimplicialIndex.from_edges(point.level, labels))


def phi1(g: SU2Element) -> CoverPoint:
    """切断φ₁：gを含む最小のパッチのレベル1の点"""
    return CoverPoint(NervePoint((g,)), SimplicialIndex(1, (minimal_patch(g),)))


def unit_object() -> CoverPoint:
    """単位対象 1 = φ₁(1_G)"""
    return phi1(SU2Element.identity())


def _require_objects(*points: CoverPoint) -> None:
    for v in points:
        if v.level != 1:
            raise ValueError(f"レベル1の被覆点が必要です: level={v.level}")


def phi2(v0: CoverPoint, v1: CoverPoint) -> CoverPoint:
    """
    レベル2のホーン充填φ₂(v₀, v₁)

    辺 (0,1), (1,2) は v₀, v₁ のパッチ、辺 (0,2) は最小パッチです。
    """
    _require_objects(v0, v1)
    point = NervePoint((v0.group_element(), v1.group_element()))
    return fill_horn(point, {(0, 1): v0.patch, (1, 2): v1.patch})


def otimes(v0: CoverPoint, v1: CoverPoint) -> CoverPoint:
    """対象の積 v₀⊗v₁ = f₁φ₂(v₀, v₁) = φ₁(π(v₀)π(v₁))"""
    return phi2(v0, v1).face(1)


def phi3(v0: CoverPoint, v1: CoverPoint, v2: CoverPoint) -> CoverPoint:
    """レベル3のホーン充填φ₃(v₀, v₁, v₂)"""
    _require_objects(v0, v1, v2)
    point = NervePoint(tuple(v.group_element() for v in (v0, v1, v2)))
    return fill_horn(point, {(0, 1): v0.patch, (1, 2): v1.patch, (2, 3): v2.patch})


def pentagon_simplex(
    x0: CoverPoint, x1: CoverPoint, x2: CoverPoint, x3: CoverPoint
) -> CoverPoint:
    """
    五角形用のレベル4の被覆点

    面 f_i はそれぞれ φ₃(x₁,x₂,x₃), φ₃(x₀⊗x₁,x₂,x₃), φ₃(x₀,x₁⊗x₂,x₃),
    φ₃(x₀,x₁,x₂⊗x₃), φ₃(x₀,x₁,x₂) に一致します。
    """
    _require_objects(x0, x1, x2, x3)
    point = NervePoint(tuple(v.group_element() for v in (x0, x1, x2, x3)))
    fixed = {(0, 1): x0.patch, (1, 2): x1.patch, (2, 3): x2.patch, (3, 4): x3.patch}
    return fill_horn(point, fixed)


def random_object(
    rng: np.random.Generator, element: Optional[SU2Element] = None
) -> CoverPoint:
    """ランダムな有効パッチを持つレベル1の被覆点"""
    g = element if element is not None else SU2Element.random(rng)
    options = patches_containing(g)
    label = options[rng.integers(len(options))]
    return CoverPoint(NervePoint((g,)), SimplicialIndex(1, (label,)))


def random_label_for(rng: np.random.Generator, point: NervePoint) -> SimplicialIndex:
    """各辺の元を含むパッチからランダムに選んだ添字"""
    labels: Dict[Edge, int] = {}
    for a, b in simplex_edges(point.level):
        options = patches_containing(point.edge_element(a, b))
        labels[(a, b)] = options[rng.integers(len(options))]
    return SimplicialIndex.from_edges(point.level, labels)


def random_cover_point(rng: np.random.Generator, level: int) -> CoverPoint:
    """ランダムな脈体の点とランダムな有効添字の被覆点"""
    point = NervePoint.random(rng, level)
    return CoverPoint(point, random_label_for(rng, point))


def cover_check(seed: int, samples: int = 100, tol: float = 1e-12) -> Dict[str, Any]:
    """
    被覆の整合性検証

    単体的恒等式、面・退化写像とパッチの両立、切断性 π∘φ₁ = id、
    φ₂・φ₃の面条件、⊗の結合性を評価します。

    Args:
        seed: 乱数シード
        samples: サンプル数
        tol: 許容誤差

    Returns:
        Dict[str, Any]: 部分レポート
    """
    rng = create_rng(seed, 2)
    identities = simplicial_identities_check(seed, samples, tol)
    checks: Dict[str, Dict[str, Any]] = dict(identities["checks"])

    compat: List[float] = []
    for level in range(1, MAX_LEVEL + 1):
        for _ in range(samples):
            v = random_cover_point(rng, level)
            for i in range(level + 1):
                compat.append(0.0 if v.face(i).is_member() else 1.0)
            if level < MAX_LEVEL:
                for j in range(level + 1):
                    compat.append(0.0 if v.degeneracy(j).is_member() else 1.0)
    checks["cover_compatibility"] = residual_stats(compat, 0.5)

    section: List[float] = []
    filler: List[float] = []
    associativity: List[float] = []
    for _ in range(samples):
        g = SU2Element.random(rng)
        section.append(phi1(g).group_element().distance(g))
        v0, v1, v2 = (random_object(rng) for _ in range(3))
        s3 = phi3(v0, v1, v2)
        faces = [
            (s3.face(0), phi2(v1, v2)),
            (s3.face(1), phi2(otimes(v0, v1), v2)),
            (s3.face(2), phi2(v0, otimes(v1, v2))),
            (s3.face(3), phi2(v0, v1)),
            (s3.face(2).face(2), v0),
            (s3.face(0).face(0), v2),
        ]
        for lhs, rhs in faces:
            filler.append(
                lhs.point.distance(rhs.point) if lhs.index == rhs.index else 1.0
            )
        left = otimes(otimes(v0, v1), v2)
        right = otimes(v0, otimes(v1, v2))
        associativity.append(
            left.point.distance(right.point) if left.index == right.index else 1.0
        )
    checks["section_property"] = residual_stats(section, tol)
    checks["horn_filler_faces"] = residual_stats(filler, tol)
    checks["otimes_associativity"] = residual_stats(associativity, tol)

    log_info(f"被覆の整合性検証が完了しました: seed={seed}, samples={samples}")
    return build_check_report(checks)
