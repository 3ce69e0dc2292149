#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
弱ストリング2群モジュール

3コサイクルλから作る弱リー2群 𝒮λʷ = (V₁^[2] × U(1) ⇉ V₁) の
合成・単位子・結合子と、群亜・五角形・三角形・交換律・自然性の検証を提供します。
"""

from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..cohomology import (
    FIBER_TOL,
    CircleValue,
    SMThreeCocycle,
    circle_distance,
    delta_cech,
    delta_nerve,
)
from ..group import SU2Element
from ..simplicial import (
    CoverPoint,
    otimes,
    pentagon_simplex,
    phi1,
    phi2,
    phi3,
    random_object,
    unit_object,
)
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)

# 検証できる公理の名前
TWO_GROUP_LAWS: Tuple[str, ...] = (
    "groupoid",
    "pentagon",
    "interchange",
    "triangle",
    "naturality",
)


def _require_object_point(v: CoverPoint) -> None:
    if v.level != 1:
        raise ValueError(f"対象はレベル1の被覆点である必要があります: level={v.level}")
    if not v.is_member():
        raise ValueError(f"対象の元がパッチ{v.patch}に属しません")


@dataclass(frozen=True)
class TwoGroupObject:
    """𝒮λʷ の対象（レベル1の被覆点）"""

    v: CoverPoint

    def __post_init__(self) -> None:
        """初期化後の検証"""
        _require_object_point(self.v)

    def group_element(self) -> SU2Element:
        """π(v)"""
        return self.v.group_element()

    def same_as(self, other: "TwoGroupObject", tol: float = FIBER_TOL) -> bool:
        """同じパッチで許容誤差内の点かどうか"""
        return self.v.same_as(other.v, tol)


@dataclass(frozen=True)
class TwoGroupMorphism:
    """
    𝒮λʷ の射 (v₀, v₁, a)

    v₀ が終域、v₁ が始域で、π(v₀) = π(v₁) です。
    """

    v0: CoverPoint
    v1: CoverPoint
    a: CircleValue = CircleValue()

    def __post_init__(self) -> None:
        """初期化後の検証"""
        _require_object_point(self.v0)
        _require_object_point(self.v1)
        if not self.v0.point.same_as(self.v1.point, FIBER_TOL):
            raise ValueError("射の始域と終域が同じ群の元を覆っていません")
        if not isinstance(self.a, CircleValue):
            object.__setattr__(self, "a", CircleValue(float(self.a)))

    @property
    def source(self) -> TwoGroupObject:
        """始域 s(v₀, v₁, a) = v₁"""
        return TwoGroupObject(self.v1)

    @property
    def target(self) -> TwoGroupObject:
        """終域 t(v₀, v₁, a) = v₀"""
        return TwoGroupObject(self.v0)

    def distance(self, other: "TwoGroupMorphism") -> float:
        """射の差（端点が異なる場合は1）"""
        if not (
            self.v0.same_as(other.v0, FIBER_TOL)
            and self.v1.same_as(other.v1, FIBER_TOL)
        ):
            return 1.0
        return self.a.distance(other.a)


Cell = Union[TwoGroupObject, TwoGroupMorphism]


class WeakStringTwoGroup:
    """
    3コサイクルλ上の弱ストリング2群

    λはパラメータとして注入され、すべての演算は状態を持ちません。
    """

    def __init__(self, cocycle: SMThreeCocycle):
        """
        初期化

        Args:
            cocycle: 構造を決める3コサイクル
        """
        self.cocycle = cocycle

    def __repr__(self) -> str:
        return f"WeakStringTwoGroup({self.cocycle.name})"

    # 構造写像

    @staticmethod
    def unit() -> TwoGroupObject:
        """単位対象 1 = φ₁(1_G)"""
        return TwoGroupObject(unit_object())

    @staticmethod
    def identity(x: Union[TwoGroupObject, CoverPoint]) -> TwoGroupMorphism:
        """恒等射 id(v) = (v, v, 0)"""
        v = x.v if isinstance(x, TwoGroupObject) else x
        return TwoGroupMorphism(v, v, CircleValue(0.0))

    @staticmethod
    def source(m: TwoGroupMorphism) -> TwoGroupObject:
        """始域"""
        return m.source

    @staticmethod
    def target(m: TwoGroupMorphism) -> TwoGroupObject:
        """終域"""
        return m.target

    def compose_vertical(
        self, m1: TwoGroupMorphism, m2: TwoGroupMorphism
    ) -> TwoGroupMorphism:
        """
        縦合成 m1 ∘ m2 = (v₀, v₂, a₀ + a₁ + λ²¹(v₀, v₁, v₂))

        Args:
            m1: (v₀, v₁, a₀)
            m2: (v₁, v₂, a₁)

        Returns:
            TwoGroupMorphism: 合成

        Raises:
            ValueError: m1の始域とm2の終域が一致しない場合
        """
        if not m1.v1.same_as(m2.v0, FIBER_TOL):
            raise ValueError("合成できない射の組です（始域と終域が一致しません）")
        correction = self.cocycle.lambda21.value(m1.v0, m1.v1, m2.v1)
        return TwoGroupMorphism(
            m1.v0, m2.v1, CircleValue(m1.a.value + m2.a.value + correction)
        )

    def inverse(self, m: TwoGroupMorphism) -> TwoGroupMorphism:
        """逆射 (v₁, v₀, −a − λ²¹(v₀, v₁, v₀))"""
        correction = self.cocycle.lambda21.value(m.v0, m.v1, m.v0)
        return TwoGroupMorphism(m.v1, m.v0, CircleValue(-m.a.value - correction))

    def compose_horizontal(self, x: Cell, y: Cell) -> Cell:
        """
        横合成（テンソル積）

        対象は v₀⊗v₁、射は
        (v₀, v₁, a₀)⊗(v₂, v₃, a₁) = (v₀⊗v₂, v₁⊗v₃, a₀ + a₁ + λ¹²(φ₂(v₀,v₂), φ₂(v₁,v₃)))

        Raises:
            TypeError: 対象と射を混在させた場合
        """
        if isinstance(x, TwoGroupObject) and isinstance(y, TwoGroupObject):
            return TwoGroupObject(otimes(x.v, y.v))
        if isinstance(x, TwoGroupMorphism) and isinstance(y, TwoGroupMorphism):
            correction = self.cocycle.lambda12.value(
                phi2(x.v0, y.v0), phi2(x.v1, y.v1)
            )
            return TwoGroupMorphism(
                otimes(x.v0, y.v0),
                otimes(x.v1, y.v1),
                CircleValue(x.a.value + y.a.value + correction),
            )
        raise TypeError(
            f"対象と射は横合成できません: {type(x).__name__} ⊗ {type(y).__name__}"
        )

    @staticmethod
    def unitor_left(x: TwoGroupObject) -> TwoGroupMorphism:
        """左単位子 l_v = (v, φ₁(π(v)), 0) : 1⊗v → v"""
        return TwoGroupMorphism(x.v, phi1(x.group_element()), CircleValue(0.0))

    @staticmethod
    def unitor_right(x: TwoGroupObject) -> TwoGroupMorphism:
        """右単位子 r_v = (v, φ₁(π(v)), 0) : v⊗1 → v"""
        return TwoGroupMorphism(x.v, phi1(x.group_element()), CircleValue(0.0))

    def associator(
        self, x0: TwoGroupObject, x1: TwoGroupObject, x2: TwoGroupObject
    ) -> TwoGroupMorphism:
        """
        結合子 α : v₀⊗(v₁⊗v₂) → (v₀⊗v₁)⊗v₂

        円周成分は λ⁰³(φ₃(v₀, v₁, v₂)) です。
        """
        target = otimes(otimes(x0.v, x1.v), x2.v)
        source = otimes(x0.v, otimes(x1.v, x2.v))
        a = self.cocycle.lambda03.value(phi3(x0.v, x1.v, x2.v))
        return TwoGroupMorphism(target, source, CircleValue(a))

    # 公理の検証

    def _report(
        self,
        name: str,
        samples: Sequence[Any],
        residuals: Dict[str, Callable[[Any], float]],
        tol: float,
        executor: Optional[Executor],
    ) -> Dict[str, Any]:
        checks: Dict[str, Dict[str, Any]] = {}
        for check_name, func in residuals.items():
            values = parallel_map(func, samples, executor)
            checks[check_name] = residual_stats(values, tol)
        log_info(f"2群の{name}を検証しました: {self.cocycle.name}, samples={len(samples)}")
        return build_check_report(checks)

    @staticmethod
    def _over(rng: np.random.Generator, g: SU2Element, count: int) -> List[CoverPoint]:
        return [random_object(rng, g) for _ in range(count)]

    @staticmethod
    def _random_circle(rng: np.random.Generator) -> CircleValue:
        return CircleValue(float(rng.random()))

    def check_groupoid(
        self,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        群亜の公理（単位律・逆射・縦合成の結合律）の検証

        結合律の残差は同じサンプル上の δ_Č λ²¹ と並べて記録します。

        Args:
            samples: サンプル数
            tol: 許容誤差
            seed: 乱数シード
            executor: 並列評価の実行器

        Returns:
            Dict[str, Any]: 部分レポート
        """
        rng = create_rng(seed, 40)
        triples: List[Tuple[TwoGroupMorphism, ...]] = []
        for _ in range(samples):
            v = self._over(rng, SU2Element.random(rng), 4)
            triples.append(
                tuple(
                    TwoGroupMorphism(v[i], v[i + 1], self._random_circle(rng))
                    for i in range(3)
                )
            )
        dc21 = delta_cech(self.cocycle.lambda21)

        def left_identity(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m = ms[0]
            return self.compose_vertical(self.identity(m.v0), m).distance(m)

        def right_identity(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m = ms[0]
            return self.compose_vertical(m, self.identity(m.v1)).distance(m)

        def inverse(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m = ms[0]
            inv = self.inverse(m)
            return max(
                self.compose_vertical(m, inv).distance(self.identity(m.v0)),
                self.compose_vertical(inv, m).distance(self.identity(m.v1)),
            )

        def associativity(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m1, m2, m3 = ms
            left = self.compose_vertical(self.compose_vertical(m1, m2), m3)
            right = self.compose_vertical(m1, self.compose_vertical(m2, m3))
            return left.distance(right)

        def cech_cocycle(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m1, m2, m3 = ms
            return circle_distance(dc21.value(m1.v0, m1.v1, m2.v1, m3.v1))

        return self._report(
            "群亜の公理",
            triples,
            {
                "left_identity": left_identity,
                "right_identity": right_identity,
                "inverse": inverse,
                "vertical_associativity": associativity,
                "dC_lambda21_same_samples": cech_cocycle,
            },
            tol,
            executor,
        )

    def pentagon_paths(
        self, xs: Sequence[TwoGroupObject]
    ) -> Tuple[TwoGroupMorphism, TwoGroupMorphism]:
        """
        五角形の2つの経路

        経路A = α_{x₀⊗x₁,x₂,x₃} ∘ α_{x₀,x₁,x₂⊗x₃}、
        経路B = (α_{x₀,x₁,x₂}⊗id) ∘ α_{x₀,x₁⊗x₂,x₃} ∘ (id⊗α_{x₁,x₂,x₃})
        """
        x0, x1, x2, x3 = xs
        x01 = self.compose_horizontal(x0, x1)
        x12 = self.compose_horizontal(x1, x2)
        x23 = self.compose_horizontal(x2, x3)
        assert isinstance(x01, TwoGroupObject)
        assert isinstance(x12, TwoGroupObject)
        assert isinstance(x23, TwoGroupObject)

        path_a = self.compose_vertical(
            self.associator(x01, x2, x3), self.associator(x0, x1, x23)
        )
        left = self.compose_horizontal(self.associator(x0, x1, x2), self.identity(x3))
        right = self.compose_horizontal(self.identity(x0), self.associator(x1, x2, x3))
        assert isinstance(left, TwoGroupMorphism)
        assert isinstance(right, TwoGroupMorphism)
        path_b = self.compose_vertical(
            self.compose_vertical(left, self.associator(x0, x12, x3)), right
        )
        return path_a, path_b

    def check_pentagon(
        self,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        五角形恒等式の検証

        射の合成による残差と、同じ4対象上の δ_N λ⁰³(五角形用4単体) を
        比較して相互検証します。
        """
        rng = create_rng(seed, 41)
        quadruples = [
            tuple(TwoGroupObject(random_object(rng)) for _ in range(4))
            for _ in range(samples)
        ]
        dn03 = delta_nerve(self.cocycle.lambda03)

        def pentagon(xs: Tuple[TwoGroupObject, ...]) -> float:
            path_a, path_b = self.pentagon_paths(xs)
            return path_a.distance(path_b)

        def nerve_cocycle(xs: Tuple[TwoGroupObject, ...]) -> float:
            return circle_distance(dn03.value(pentagon_simplex(*(x.v for x in xs))))

        def cross_validation(xs: Tuple[TwoGroupObject, ...]) -> float:
            return abs(pentagon(xs) - nerve_cocycle(xs))

        return self._report(
            "五角形恒等式",
            quadruples,
            {
                "pentagon": pentagon,
                "dN_lambda03_same_samples": nerve_cocycle,
                "cross_validation": cross_validation,
            },
            tol,
            executor,
        )

    def check_interchange(
        self,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        交換律 (m₁∘m₂)⊗(m₃∘m₄) = (m₁⊗m₃)∘(m₂⊗m₄) の検証

        残差は δ_N λ²¹(y) − δ_Č λ¹²(y), y_k = φ₂(v_k, w_k) と一致します。
        """
        rng = create_rng(seed, 42)
        squares: List[Tuple[TwoGroupMorphism, ...]] = []
        for _ in range(samples):
            v = self._over(rng, SU2Element.random(rng), 3)
            w = self._over(rng, SU2Element.random(rng), 3)
            squares.append(
                (
                    TwoGroupMorphism(v[0], v[1], self._random_circle(rng)),
                    TwoGroupMorphism(v[1], v[2], self._random_circle(rng)),
                    TwoGroupMorphism(w[0], w[1], self._random_circle(rng)),
                    TwoGroupMorphism(w[1], w[2], self._random_circle(rng)),
                )
            )
        dn21 = delta_nerve(self.cocycle.lambda21)
        dc12 = delta_cech(self.cocycle.lambda12)

        def interchange(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m1, m2, m3, m4 = ms
            left = self.compose_horizontal(
                self.compose_vertical(m1, m2), self.compose_vertical(m3, m4)
            )
            top = self.compose_horizontal(m1, m3)
            bottom = self.compose_horizontal(m2, m4)
            assert isinstance(left, TwoGroupMorphism)
            assert isinstance(top, TwoGroupMorphism)
            assert isinstance(bottom, TwoGroupMorphism)
            return left.distance(self.compose_vertical(top, bottom))

        def mixed_cocycle(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m1, m2, m3, m4 = ms
            y = (phi2(m1.v0, m3.v0), phi2(m1.v1, m3.v1), phi2(m2.v1, m4.v1))
            return circle_distance(dn21.value(*y) - dc12.value(*y))

        return self._report(
            "交換律",
            squares,
            {
                "interchange": interchange,
                "dN_lambda21_eq_dC_lambda12_same_samples": mixed_cocycle,
            },
            tol,
            executor,
        )

    def check_triangle(
        self,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        三角形恒等式 (r_x⊗id_y) ∘ α_{x,1,y} = id_x⊗l_y の検証（標準対象 φ₁(g) のみ）
        """
        rng = create_rng(seed, 43)
        pairs = [
            (
                TwoGroupObject(phi1(SU2Element.random(rng))),
                TwoGroupObject(phi1(SU2Element.random(rng))),
            )
            for _ in range(samples)
        ]
        unit = self.unit()

        def triangle(xy: Tuple[TwoGroupObject, TwoGroupObject]) -> float:
            x, y = xy
            left_tensor = self.compose_horizontal(
                self.unitor_right(x), self.identity(y)
            )
            right = self.compose_horizontal(self.identity(x), self.unitor_left(y))
            assert isinstance(left_tensor, TwoGroupMorphism)
            assert isinstance(right, TwoGroupMorphism)
            left = self.compose_vertical(left_tensor, self.associator(x, unit, y))
            return left.distance(right)

        return self._report(
            "三角形恒等式", pairs, {"triangle": triangle}, tol, executor
        )

    def check_naturality(
        self,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        結合子の自然性 α_v ∘ (m₀⊗(m₁⊗m₂)) = ((m₀⊗m₁)⊗m₂) ∘ α_w の検証

        残差は δ_N λ¹² − δ_Č λ⁰³ を (φ₃(v), φ₃(w)) で評価したものと一致します。
        """
        rng = create_rng(seed, 44)
        triples: List[Tuple[TwoGroupMorphism, ...]] = []
        for _ in range(samples):
            morphisms = []
            for _ in range(3):
                v, w = self._over(rng, SU2Element.random(rng), 2)
                morphisms.append(TwoGroupMorphism(v, w, self._random_circle(rng)))
            triples.append(tuple(morphisms))

        def naturality(ms: Tuple[TwoGroupMorphism, ...]) -> float:
            m0, m1, m2 = ms
            targets = [m.target for m in ms]
            sources = [m.source for m in ms]
            inner = self.compose_horizontal(m1, m2)
            outer = self.compose_horizontal(m0, m1)
            assert isinstance(inner, TwoGroupMorphism)
            assert isinstance(outer, TwoGroupMorphism)
            right_nested = self.compose_horizontal(m0, inner)
            left_nested = self.compose_horizontal(outer, m2)
            assert isinstance(right_nested, TwoGroupMorphism)
            assert isinstance(left_nested, TwoGroupMorphism)
            lhs = self.compose_vertical(self.associator(*targets), right_nested)
            rhs = self.compose_vertical(left_nested, self.associator(*sources))
            return lhs.distance(rhs)

        return self._report(
            "結合子の自然性", triples, {"naturality": naturality}, tol, executor
        )

    def check(
        self,
        law: str,
        samples: int,
        tol: float,
        seed: int = 0,
        executor: Optional[Executor] = None,
    ) -> Dict[str, Any]:
        """
        名前で指定した公理の検証

        Args:
            law: TWO_GROUP_LAWS のいずれか
            samples: サンプル数（1以上）
            tol: 許容誤差
            seed: 乱数シード
            executor: 並列評価の実行器

        Returns:
            Dict[str, Any]: 部分レポート

        Raises:
            ValueError: 未知の公理名、またはサンプル数が0以下の場合
        """
        if samples < 1:
            raise ValueError(f"サンプル数は1以上である必要があります: {samples}")
        checkers = {
            "groupoid": self.check_groupoid,
            "pentagon": self.check_pentagon,
            "interchange": self.check_interchange,
            "triangle": self.check_triangle,
            "naturality": self.check_naturality,
        }
        if law not in checkers:
            raise ValueError(f"未知の公理です: {law}（{', '.join(TWO_GROUP_LAWS)}）")
        return checkers[law](samples, tol, seed, executor)


def create_weak_two_group(
    cocycle: Optional[SMThreeCocycle] = None,
) -> WeakStringTwoGroup:
    """
    弱ストリング2群のファクトリー関数

    Args:
        cocycle: 3コサイクル。Noneの場合は零コサイクル

    Returns:
        WeakStringTwoGroup: 2群
    """
    return WeakStringTwoGroup(cocycle if cocycle is not None else SMThreeCocycle.zero())
