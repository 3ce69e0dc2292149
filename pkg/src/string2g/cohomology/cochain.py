#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Segal–Mitchisonコチェインモジュール

円周値 ℝ/ℤ、被覆された脈体上のコチェイン C^{p,q}、
Čech微分 δ_Č、脈体微分 δ_N、全微分 δ_SM を提供します。
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..group import SU2Element
from ..simplicial import MAX_LEVEL, CoverPoint, random_label_for
from ..simplicial.nerve import NervePoint
from ..utils import create_rng

# 連続する引数を同一とみなす距離
NORMALIZATION_TOL = 1e-12

# ファイバー積の条件（射影の一致）の許容誤差
FIBER_TOL = 1e-9


def _reduce(value: float) -> float:
    reduced = float(value) % 1.0
    # 負の微小値は 1.0 に丸められる
    return 0.0 if reduced >= 1.0 else reduced


def circle_distance(value: float) -> float:
    """円周上の0からの最短距離 min(a, 1−a)"""
    a = _reduce(value)
    return min(a, 1.0 - a)


@dataclass(frozen=True)
class CircleValue:
    """円周群 U(1) ≅ ℝ/ℤ の元（代表元は [0, 1)）"""

    value: float = 0.0

    def __post_init__(self) -> None:
        """初期化後の正規化"""
        object.__setattr__(self, "value", _reduce(self.value))

    def __add__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue(self.value + other.value)

    def __sub__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue(self.value - other.value)

    def __neg__(self) -> "CircleValue":
        return CircleValue(-self.value)

    def distance(self, other: "CircleValue") -> float:
        """円周上の最短距離"""
        return circle_distance(self.value - other.value)

    def norm(self) -> float:
        """0からの最短距離"""
        return circle_distance(self.value)


CochainFunc = Callable[[Tuple[CoverPoint, ...]], float]


class Cochain:
    """
    コチェイン C^{p,q}(U(1)) = C^∞(V_q^[p+1], U(1))

    評価関数は実数の代表元を返し、呼び出し時に円周値へ還元します。
    連続する2引数が同一の場合は0を返します（正規化）。
    """

    def __init__(
        self,
        cech_degree: int,
        nerve_degree: int,
        func: CochainFunc,
        name: str = "c",
    ):
        """
        初期化

        Args:
            cech_degree: Čech次数p（引数はp+1個）
            nerve_degree: 脈体次数q（引数はレベルqの被覆点）
            func: 評価関数
            name: 表示名
        """
        if cech_degree < 0 or nerve_degree < 0:
            raise ValueError(
                f"次数は非負である必要があります: ({cech_degree}, {nerve_degree})"
            )
        if nerve_degree > MAX_LEVEL:
            raise ValueError(
                f"脈体次数が上限{MAX_LEVEL}を超えています: {nerve_degree}"
            )
        self.cech_degree = cech_degree
        self.nerve_degree = nerve_degree
        self.func = func
        self.name = name

    @property
    def bidegree(self) -> Tuple[int, int]:
        """(p, q)"""
        return (self.cech_degree, self.nerve_degree)

    @property
    def total_degree(self) -> int:
        """全次数 p+q"""
        return self.cech_degree + self.nerve_degree

    def __repr__(self) -> str:
        return f"Cochain({self.name}, p={self.cech_degree}, q={self.nerve_degree})"

    def _validate(self, args: Tuple[CoverPoint, ...]) -> None:
        if len(args) != self.cech_degree + 1:
            raise ValueError(
                f"{self.name}の引数は{self.cech_degree + 1}個必要です: {len(args)}"
            )
        for v in args:
            if v.level != self.nerve_degree:
                raise ValueError(
                    f"{self.name}の引数はレベル{self.nerve_degree}である必要があります: {v.level}"
                )
        base = args[0].point
        for v in args[1:]:
            if not v.point.same_as(base, FIBER_TOL):
                raise ValueError(f"{self.name}の引数の射影が一致しません")

    def value(self, *args: CoverPoint) -> float:
        """実数の代表元で評価"""
        self._validate(args)
        for left, right in zip(args, args[1:]):
            if left.same_as(right, NORMALIZATION_TOL):
                return 0.0
        return float(self.func(args))

    def __call__(self, *args: CoverPoint) -> CircleValue:
        return CircleValue(self.value(*args))

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.bidegree != other.bidegree:
            raise ValueError(f"次数が一致しません: {self.bidegree} と {other.bidegree}")
        return Cochain(
            self.cech_degree,
            self.nerve_degree,
            lambda args: self.func(args) + other.func(args),
            f"({self.name}+{other.name})",
        )

    def __neg__(self) -> "Cochain":
        return self.scale(-1.0)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, factor: float) -> "Cochain":
        """スカラー倍"""
        return Cochain(
            self.cech_degree,
            self.nerve_degree,
            lambda args: factor * self.func(args),
            f"{factor}*{self.name}",
        )

    @classmethod
    def zero(cls, cech_degree: int, nerve_degree: int, name: str = "0") -> "Cochain":
        """零コチェイン"""
        return cls(cech_degree, nerve_degree, lambda args: 0.0, name)


def delta_cech(c: Cochain) -> Cochain:
    """
    Čech微分 (δ_Č c)(v₀, …, v_{p+1}) = Σ_i (−1)^i c(v₀, …, v̂_i, …, v_{p+1})

    Args:
        c: (p, q) コチェイン

    Returns:
        Cochain: (p+1, q) コチェイン
    """

    def func(args: Tuple[CoverPoint, ...]) -> float:
        total = 0.0
        for i in range(len(args)):
            sign = -1.0 if i % 2 else 1.0
            total += sign * c.value(*(args[:i] + args[i + 1 :]))
        return total

    return Cochain(c.cech_degree + 1, c.nerve_degree, func, f"dC({c.name})")


def delta_nerve(c: Cochain) -> Cochain:
    """
    脈体微分 (δ_N c)(s₀, …, s_p) = Σ_j (−1)^j c(f_j s₀, …, f_j s_p)

    Args:
        c: (p, q) コチェイン

    Returns:
        Cochain: (p, q+1) コチェイン

    Raises:
        ValueError: レベル上限を超える場合
    """
    q = c.nerve_degree + 1
    if q > MAX_LEVEL:
        raise ValueError(f"脈体次数が上限{MAX_LEVEL}を超えます: {q}")

    def func(args: Tuple[CoverPoint, ...]) -> float:
        total = 0.0
        for j in range(q + 1):
            sign = -1.0 if j % 2 else 1.0
            total += sign * c.value(*(v.face(j) for v in args))
        return total

    return Cochain(c.cech_degree, q, func, f"dN({c.name})")


CochainSum = Dict[Tuple[int, int], Cochain]


def delta_sm(components: CochainSum) -> CochainSum:
    """
    全微分 δ_SM = δ_Č + (−1)^p δ_N

    Args:
        components: 固定された全次数の (p, q) → コチェイン

    Returns:
        CochainSum: 全次数が1つ上がった成分

    Raises:
        ValueError: 全次数が混在する場合
    """
    degrees = {p + q for p, q in components}
    if len(degrees) > 1:
        raise ValueError(f"全次数が混在しています: {sorted(degrees)}")

    result: CochainSum = {}

    def accumulate(c: Cochain) -> None:
        key = c.bidegree
        result[key] = result[key] + c if key in result else c

    for (p, q), c in sorted(components.items()):
        accumulate(delta_cech(c))
        nerve = delta_nerve(c)
        accumulate(nerve if p % 2 == 0 else -nerve)
    return result


def sample_arguments(
    rng: np.random.Generator,
    cech_degree: int,
    nerve_degree: int,
    point: Optional[NervePoint] = None,
) -> Tuple[CoverPoint, ...]:
    """
    ファイバー積 V_q^[p+1] のランダムな点

    共通の脈体の点に、引数ごとにランダムな有効添字を付けます。
    """
    base = point if point is not None else NervePoint.random(rng, nerve_degree)
    return tuple(
        CoverPoint(base, random_label_for(rng, base)) for _ in range(cech_degree + 1)
    )


def labels_hash(seed: int, labels: Sequence[int]) -> float:
    """シードとラベル列から決まる [−1, 1) の擬似乱数"""
    state = np.random.SeedSequence([int(seed), *[int(x) for x in labels]])
    word = int(state.generate_state(1)[0])
    return 2.0 * word / 2.0**32 - 1.0


def random_cochain(
    seed: int, cech_degree: int, nerve_degree: int, name: str = "f"
) -> Cochain:
    """
    テスト用のランダムなコチェイン

    値は (全ラベルのハッシュ) × (座標の一次式 + 0.5) です。

    Args:
        seed: 乱数シード
        cech_degree: p
        nerve_degree: q

    Returns:
        Cochain: (p, q) コチェイン
    """
    rng = create_rng(seed, cech_degree, nerve_degree)
    weights = rng.normal(size=4 * max(nerve_degree, 1))

    def func(args: Tuple[CoverPoint, ...]) -> float:
        labels = [label for v in args for label in v.index.labels]
        coordinates = np.concatenate(
            [g.as_array() for g in args[0].point.elements] or [np.zeros(4)]
        )
        linear = float(weights @ coordinates) + 0.5
        return labels_hash(seed, labels) * linear

    return Cochain(cech_degree, nerve_degree, func, name)


def quaternion_offset(g: SU2Element) -> np.ndarray:
    """u(g) = (1−x, y, z, w)：単位元で零になる座標"""
    x, y, z, w = g.as_tuple()
    return np.array([1.0 - x, y, z, w])
