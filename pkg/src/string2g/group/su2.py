#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SU(2)・Spin(4)群要素モジュール

単位四元数によるSU(2)と、SU(2)×SU(2)によるSpin(4)の演算を提供します。
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

# 正規化の許容誤差
EPS_NORM = 1e-10


def _quaternion_product(
    a: Sequence[float], b: Sequence[float]
) -> Tuple[float, float, float, float]:
    """四元数 (x, y, z, w) = x + yi + zj + wk の積"""
    a1, b1, c1, d1 = a
    a2, b2, c2, d2 = b
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


@dataclass(frozen=True)
class SU2Element:
    """
    SU(2)の元（単位四元数）

    行列表現は [[x+iy, z+iw], [-z+iw, x-iy]] です。
    𝔰𝔲(2)の基底 e_a = iσ_a との対応は e₁↔k, e₂↔j, e₃↔i です。
    """

    x: float
    y: float
    z: float
    w: float

    def __post_init__(self) -> None:
        """初期化後の検証"""
        for name in ("x", "y", "z", "w"):
            object.__setattr__(self, name, float(getattr(self, name)))
        norm_sq = self.x**2 + self.y**2 + self.z**2 + self.w**2
        if abs(norm_sq - 1.0) > EPS_NORM:
            raise ValueError(f"単位四元数ではありません: |q|²={norm_sq}")

    @classmethod
    def identity(cls) -> "SU2Element":
        """単位元"""
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_components(cls, components: Sequence[float]) -> "SU2Element":
        """
        任意の非零4成分ベクトルを正規化して元を作成

        Raises:
            ValueError: 零ベクトルの場合
        """
        vector = np.asarray(components, dtype=float)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise ValueError("零ベクトルは正規化できません")
        x, y, z, w = (vector / norm).tolist()
        return cls(x, y, z, w)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "SU2Element":
        """正規分布の正規化によるHaar一様サンプル"""
        return cls.from_components(rng.normal(size=4))

    @classmethod
    def exp(cls, components: Sequence[float], t: float = 1.0) -> "SU2Element":
        """
        指数写像 exp(t·Σ u_a e_a)

        Args:
            components: 𝔰𝔲(2)の成分 (u₁, u₂, u₃)
            t: パラメータ

        Returns:
            SU2Element: 群の元
        """
        u1, u2, u3 = (float(c) for c in components)
        length = math.sqrt(u1 * u1 + u2 * u2 + u3 * u3)
        theta = t * length
        if length == 0.0 or theta == 0.0:
            return cls.identity()
        s = math.sin(theta) / length
        return cls.from_components((math.cos(theta), s * u3, s * u2, s * u1))

    def as_tuple(self) -> Tuple[float, float, float, float]:
        """成分のタプル"""
        return (self.x, self.y, self.z, self.w)

    def as_array(self) -> np.ndarray:
        """成分の配列"""
        return np.array(self.as_tuple())

    def __mul__(self, other: "SU2Element") -> "SU2Element":
        if not isinstance(other, SU2Element):
            return NotImplemented
        # 積ごとに再正規化する
        return SU2Element.from_components(
            _quaternion_product(self.as_tuple(), other.as_tuple())
        )

    def inverse(self) -> "SU2Element":
        """逆元（共役）"""
        return SU2Element(self.x, -self.y, -self.z, -self.w)

    def matrix(self) -> np.ndarray:
        """2×2複素行列表現"""
        return np.array(
            [
                [complex(self.x, self.y), complex(self.z, self.w)],
                [complex(-self.z, self.w), complex(self.x, -self.y)],
            ]
        )

    def distance(self, other: "SU2Element") -> float:
        """四元数としてのユークリッド距離"""
        return float(np.linalg.norm(self.as_array() - other.as_array()))

    def log(self) -> np.ndarray:
        """
        主枝の対数写像

        Returns:
            np.ndarray: 𝔰𝔲(2)成分 (u₁, u₂, u₃)

        Raises:
            ValueError: 実部が負の場合
        """
        if self.x < 0.0:
            raise ValueError(f"対数写像の主枝外です: x={self.x}")
        vector_norm = math.sqrt(self.y**2 + self.z**2 + self.w**2)
        if vector_norm == 0.0:
            return np.zeros(3)
        theta = math.atan2(vector_norm, self.x)
        return np.array([self.w, self.z, self.y]) * (theta / vector_norm)

    def adjoint(self, components: Sequence[float]) -> np.ndarray:
        """
        随伴作用 Ad_g(X) = g X g⁻¹

        Args:
            components: 𝔰𝔲(2)成分（先頭軸以外のバッチ次元は不可）

        Returns:
            np.ndarray: 変換後の成分
        """
        c1, c2, c3 = (float(c) for c in components)
        pure = (0.0, c3, c2, c1)
        rotated = _quaternion_product(
            _quaternion_product(self.as_tuple(), pure), self.inverse().as_tuple()
        )
        return np.array([rotated[3], rotated[2], rotated[1]])


@dataclass(frozen=True)
class Spin4Element:
    """Spin(4) ≅ SU(2)×SU(2) の元"""

    left: SU2Element
    right: SU2Element

    @classmethod
    def identity(cls) -> "Spin4Element":
        """単位元"""
        return cls(SU2Element.identity(), SU2Element.identity())

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Spin4Element":
        """Haar一様サンプル"""
        return cls(SU2Element.random(rng), SU2Element.random(rng))

    @classmethod
    def exp(cls, components: Sequence[float], t: float = 1.0) -> "Spin4Element":
        """指数写像（成分は左3つ・右3つ）"""
        values = [float(c) for c in components]
        return cls(SU2Element.exp(values[:3], t), SU2Element.exp(values[3:], t))

    def __mul__(self, other: "Spin4Element") -> "Spin4Element":
        if not isinstance(other, Spin4Element):
            return NotImplemented
        return Spin4Element(self.left * other.left, self.right * other.right)

    def inverse(self) -> "Spin4Element":
        """逆元"""
        return Spin4Element(self.left.inverse(), self.right.inverse())

    def matrix(self) -> np.ndarray:
        """4×4ブロック対角の複素行列表現"""
        result = np.zeros((4, 4), dtype=complex)
        result[:2, :2] = self.left.matrix()
        result[2:, 2:] = self.right.matrix()
        return result

    def distance(self, other: "Spin4Element") -> float:
        """左右の距離の二乗和の平方根"""
        return math.hypot(
            self.left.distance(other.left), self.right.distance(other.right)
        )

    def log(self) -> np.ndarray:
        """主枝の対数写像（6成分）"""
        return np.concatenate([self.left.log(), self.right.log()])

    def adjoint(self, components: Sequence[float]) -> np.ndarray:
        """随伴作用"""
        values = [float(c) for c in components]
        return np.concatenate(
            [self.left.adjoint(values[:3]), self.right.adjoint(values[3:])]
        )
