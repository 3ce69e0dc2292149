#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
リー代数モジュール

𝔰𝔲(2)・𝔰𝔭𝔦𝔫(4)・𝔲(1)の構造定数、括弧積、Killing形式、
および共有の三重線形写像 k·(x,[y,z]) を提供します。
"""

from dataclasses import dataclass
from typing import Dict, Sequence, Union

import numpy as np

from .su2 import Spin4Element, SU2Element

GroupElement = Union[SU2Element, Spin4Element]

# Pauli行列
_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _levi_civita() -> np.ndarray:
    """3次のLevi-Civita記号"""
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


class LieAlgebra:
    """
    基底行列と構造定数で与えられるリー代数

    括弧積は [e_a, e_b] = f[a, b, c] e_c、Killing形式は −½ tr(ab) です。
    """

    def __init__(self, name: str, basis: np.ndarray, structure: np.ndarray):
        """
        初期化

        Args:
            name: 代数名
            basis: 基底行列 (dim, n, n)
            structure: 構造定数 (dim, dim, dim)
        """
        self.name = name
        self.basis = np.asarray(basis, dtype=complex)
        self.structure = np.asarray(structure, dtype=float)
        self.dim = int(self.basis.shape[0])
        self.gram = np.real(
            -0.5 * np.einsum("aij,bji->ab", self.basis, self.basis)
        )
        # T_abc = (e_a, [e_b, e_c])
        self.trilinear = np.einsum("ad,bcd->abc", self.gram, self.structure)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def _check(self, *vectors: np.ndarray) -> None:
        for vector in vectors:
            if vector.shape[-1] != self.dim:
                raise ValueError(
                    f"{self.name}の次元{self.dim}と成分数{vector.shape[-1]}が一致しません"
                )

    def bracket(self, a: Sequence[float], b: Sequence[float]) -> np.ndarray:
        """括弧積（先頭軸はバッチ次元として扱う）"""
        x, y = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        self._check(x, y)
        return np.einsum("...a,...b,abc->...c", x, y, self.structure)

    def killing(self, a: Sequence[float], b: Sequence[float]) -> np.ndarray:
        """Killing形式"""
        x, y = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        self._check(x, y)
        return np.einsum("...a,ab,...b->...", x, self.gram, y)

    def to_matrix(self, components: Sequence[float]) -> np.ndarray:
        """成分から表現行列へ"""
        c = np.asarray(components)
        self._check(c)
        return np.einsum("...a,aij->...ij", c, self.basis)

    def from_matrix(self, matrix: np.ndarray) -> np.ndarray:
        """
        表現行列から成分へ（基底へのHilbert–Schmidt射影）

        Args:
            matrix: 表現行列 (..., n, n)。成分は実係数を仮定

        Returns:
            np.ndarray: 成分
        """
        overlaps = np.einsum("aji,...ji->...a", self.basis.conj(), matrix)
        norms = np.einsum("aji,aji->a", self.basis.conj(), self.basis)
        return np.real(overlaps) / np.real(norms)

    def trilinear_tensor(self) -> np.ndarray:
        """T_abc = (e_a, [e_b, e_c])"""
        return self.trilinear.copy()


def _su2() -> LieAlgebra:
    return LieAlgebra("su2", 1j * _PAULI, -2.0 * _levi_civita())


def _spin4() -> LieAlgebra:
    basis = np.zeros((6, 4, 4), dtype=complex)
    basis[:3, :2, :2] = 1j * _PAULI
    basis[3:, 2:, 2:] = 1j * _PAULI
    structure = np.zeros((6, 6, 6))
    structure[:3, :3, :3] = -2.0 * _levi_civita()
    structure[3:, 3:, 3:] = -2.0 * _levi_civita()
    return LieAlgebra("spin4", basis, structure)


def _u1() -> LieAlgebra:
    return LieAlgebra("u1", np.array([[[1j]]]), np.zeros((1, 1, 1)))


SU2_ALGEBRA = _su2()
SPIN4_ALGEBRA = _spin4()
U1_ALGEBRA = _u1()

_ALGEBRAS: Dict[str, LieAlgebra] = {
    "su2": SU2_ALGEBRA,
    "spin4": SPIN4_ALGEBRA,
    "u1": U1_ALGEBRA,
}


def create_lie_algebra(name: str) -> LieAlgebra:
    """
    名前からリー代数を取得

    Args:
        name: "su2", "spin4", "u1"

    Returns:
        LieAlgebra: 対応する代数

    Raises:
        ValueError: 未知の名前の場合
    """
    try:
        return _ALGEBRAS[name]
    except KeyError as e:
        raise ValueError(f"未知のリー代数です: {name}") from e


@dataclass(frozen=True)
class AlgebraElement:
    """リー代数の元"""

    algebra: LieAlgebra
    components: tuple

    def __post_init__(self) -> None:
        """初期化後の検証"""
        values = tuple(float(c) for c in self.components)
        if len(values) != self.algebra.dim:
            raise ValueError(
                f"{self.algebra.name}の次元{self.algebra.dim}と成分数{len(values)}が一致しません"
            )
        object.__setattr__(self, "components", values)

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "AlgebraElement":
        """零元"""
        return cls(algebra, (0.0,) * algebra.dim)

    @classmethod
    def basis_element(cls, algebra: LieAlgebra, index: int) -> "AlgebraElement":
        """基底 e_index（1始まり）"""
        values = [0.0] * algebra.dim
        values[index - 1] = 1.0
        return cls(algebra, tuple(values))

    @classmethod
    def random(cls, algebra: LieAlgebra, rng: np.random.Generator) -> "AlgebraElement":
        """正規分布の成分"""
        return cls(algebra, tuple(rng.normal(size=algebra.dim)))

    def as_array(self) -> np.ndarray:
        """成分の配列"""
        return np.array(self.components)

    def _same_algebra(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise ValueError(
                f"異なる代数の元です: {self.algebra.name} と {other.algebra.name}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_algebra(other)
        return AlgebraElement(self.algebra, tuple(self.as_array() + other.as_array()))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_algebra(other)
        return AlgebraElement(self.algebra, tuple(self.as_array() - other.as_array()))

    def scale(self, factor: float) -> "AlgebraElement":
        """スカラー倍"""
        return AlgebraElement(self.algebra, tuple(factor * self.as_array()))

    def norm(self) -> float:
        """成分のユークリッドノルム"""
        return float(np.linalg.norm(self.as_array()))


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    括弧積 [a, b]

    Raises:
        ValueError: 代数が異なる場合
    """
    a._same_algebra(b)
    values = a.algebra.bracket(a.as_array(), b.as_array())
    return AlgebraElement(a.algebra, tuple(values))


def killing(a: AlgebraElement, b: AlgebraElement) -> float:
    """
    Killing形式 (a, b) = −½ tr(ab)

    Raises:
        ValueError: 代数が異なる場合
    """
    a._same_algebra(b)
    return float(a.algebra.killing(a.as_array(), b.as_array()))


def exp_map(a: AlgebraElement, t: float = 1.0) -> GroupElement:
    """
    指数写像 exp(t·a)

    Raises:
        ValueError: 対応する群がない代数の場合
    """
    if a.algebra is SU2_ALGEBRA:
        return SU2Element.exp(a.components, t)
    if a.algebra is SPIN4_ALGEBRA:
        return Spin4Element.exp(a.components, t)
    raise ValueError(f"指数写像が未定義の代数です: {a.algebra.name}")


def log_map(g: GroupElement) -> AlgebraElement:
    """
    主枝の対数写像

    Raises:
        ValueError: 実部が負（主枝外）の場合
    """
    if isinstance(g, Spin4Element):
        return AlgebraElement(SPIN4_ALGEBRA, tuple(g.log()))
    return AlgebraElement(SU2_ALGEBRA, tuple(g.log()))


def lambda03_linear(
    algebra: LieAlgebra,
    k: float,
    x: np.ndarray,
    y: np.ndarray,
    z: np.ndarray,
    odd_pairs: int = 0,
) -> np.ndarray:
    """
    λ⁰³の線形化 k·(x, [y, z]) の共有評価ルーチン

    superdiff・linfty_fields・cech_deligne のすべてがこの関数を経由します。

    Args:
        algebra: リー代数
        k: μ₃の定数
        x, y, z: 成分（先頭軸はバッチ次元）
        odd_pairs: 奇元の入れ替えで生じるKoszul符号の対の数

    Returns:
        np.ndarray: スカラー値（バッチ形状）
    """
    sign = -1.0 if odd_pairs % 2 else 1.0
    return sign * k * np.einsum("...a,...b,...c,abc->...", x, y, z, algebra.trilinear)
