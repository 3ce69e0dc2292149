#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
微分形式モジュール

ℝ⁴（ユークリッド計量）上のリー代数値微分形式、中心差分による外微分、
Hodge星、括弧積・三重線形写像とのウェッジ積、Maurer–Cartan残差と
無限小ゲージ変換を提供します。

係数配列の形は (4,)*次数 + (値の次元,) で、𝔲(1)値は値の次元1の実数です。
"""

from itertools import permutations
from math import factorial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..group import LieAlgebra, lambda03_linear

DIMENSION = 4

FormFunc = Callable[[np.ndarray], np.ndarray]


def _permutation_sign(permutation: Sequence[int]) -> int:
    sign = 1
    seen = list(permutation)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for permutation in permutations(range(n)):
        eps[permutation] = _permutation_sign(permutation)
    return eps


# ε_{1234} = +1
LEVI_CIVITA = _levi_civita(DIMENSION)


def antisymmetrize(tensor: np.ndarray, degree: int) -> np.ndarray:
    """先頭のdegree個の軸についての反対称化 Alt"""
    if degree < 2:
        return np.asarray(tensor, dtype=float)
    total = np.zeros_like(tensor, dtype=float)
    for permutation in permutations(range(degree)):
        axes = list(permutation) + list(range(degree, tensor.ndim))
        total += _permutation_sign(permutation) * np.transpose(tensor, axes)
    return total / factorial(degree)


def central_gradient(func: FormFunc, x: np.ndarray, h: float) -> np.ndarray:
    """
    中心差分による偏微分 ∂_μ f（2次精度）

    Args:
        func: 点 → 配列
        x: 評価点
        h: ステップ幅

    Returns:
        np.ndarray: 形 (4,) + func(x).shape
    """
    point = np.asarray(x, dtype=float)
    columns = []
    for mu in range(point.shape[0]):
        step = np.zeros_like(point)
        step[mu] = h
        forward = np.asarray(func(point + step))
        backward = np.asarray(func(point - step))
        columns.append((forward - backward) / (2.0 * h))
    return np.stack(columns)


class FormField:
    """
    値の次元nの微分k形式

    評価関数は点 x ∈ ℝ⁴ から反対称な係数配列 (4,)*k + (n,) を返します。
    """

    def __init__(
        self,
        degree: int,
        value_dim: int,
        func: FormFunc,
        name: str = "ω",
        singular_points: Optional[Sequence[Sequence[float]]] = None,
    ):
        """
        初期化

        Args:
            degree: 形式の次数（0〜4）
            value_dim: 値の次元
            func: 評価関数
            name: 表示名
            singular_points: 評価できない点
        """
        if not 0 <= degree <= DIMENSION:
            raise ValueError(f"形式の次数が範囲外です: {degree}")
        if value_dim < 1:
            raise ValueError(f"値の次元は1以上である必要があります: {value_dim}")
        self.degree = degree
        self.value_dim = value_dim
        self.func = func
        self.name = name
        self.singular_points = [
            np.asarray(p, dtype=float) for p in (singular_points or [])
        ]

    def __repr__(self) -> str:
        return f"FormField({self.name}, degree={self.degree}, dim={self.value_dim})"

    @property
    def shape(self) -> Tuple[int, ...]:
        """係数配列の形"""
        return (DIMENSION,) * self.degree + (self.value_dim,)

    def __call__(self, x: Sequence[float]) -> np.ndarray:
        point = np.asarray(x, dtype=float)
        for singular in self.singular_points:
            if np.linalg.norm(point - singular) < 1e-12:
                raise ValueError(f"{self.name}は特異点{singular.tolist()}で評価できません")
        value = np.asarray(self.func(point), dtype=float)
        if value.shape != self.shape:
            raise ValueError(
                f"{self.name}の係数の形が不正です: {value.shape} != {self.shape}"
            )
        return value

    def _check_compatible(self, other: "FormField") -> None:
        if (self.degree, self.value_dim) != (other.degree, other.value_dim):
            raise ValueError(f"形式の次数または値の次元が一致しません: {self} と {other}")

    def __add__(self, other: "FormField") -> "FormField":
        self._check_compatible(other)
        return FormField(
            self.degree,
            self.value_dim,
            lambda x: self(x) + other(x),
            f"({self.name}+{other.name})",
            self.singular_points + other.singular_points,
        )

    def __sub__(self, other: "FormField") -> "FormField":
        return self + other.scale(-1.0)

    def scale(self, factor: float) -> "FormField":
        """スカラー倍"""
        return FormField(
            self.degree,
            self.value_dim,
            lambda x: factor * self(x),
            f"{factor}*{self.name}",
            self.singular_points,
        )

    @classmethod
    def zero(cls, degree: int, value_dim: int, name: str = "0") -> "FormField":
        """零形式"""
        shape = (DIMENSION,) * degree + (value_dim,)
        return cls(degree, value_dim, lambda x: np.zeros(shape), name)


def ext_d(form: FormField, h: float) -> FormField:
    """
    中心差分による外微分 (dω)_{μ₀…μ_k} = (k+1)·Alt(∂_{μ₀} ω_{μ₁…μ_k})

    Raises:
        ValueError: 4形式の外微分の場合
    """
    if form.degree >= DIMENSION:
        raise ValueError(f"{DIMENSION}形式の外微分は零です: {form}")
    degree = form.degree + 1

    def func(x: np.ndarray) -> np.ndarray:
        return degree * antisymmetrize(central_gradient(form, x, h), degree)

    return FormField(
        degree, form.value_dim, func, f"d{form.name}", form.singular_points
    )


def hodge(form: FormField) -> FormField:
    """Hodge星 (★ω)_{ν…} = (1/k!) ω_{μ₁…μ_k} ε_{μ₁…μ_k ν…}"""
    k = form.degree

    def func(x: np.ndarray) -> np.ndarray:
        axes = (list(range(k)), list(range(k)))
        return np.tensordot(LEVI_CIVITA, form(x), axes=axes) / factorial(k)

    return FormField(
        DIMENSION - k, form.value_dim, func, f"★{form.name}", form.singular_points
    )


def _broadcast_factors(
    arrays: Sequence[np.ndarray], degrees: Sequence[int]
) -> List[np.ndarray]:
    total = sum(degrees)
    factors: List[np.ndarray] = []
    offset = 0
    for array, degree in zip(arrays, degrees):
        shape = (
            (1,) * offset
            + (DIMENSION,) * degree
            + (1,) * (total - offset - degree)
            + array.shape[degree:]
        )
        target = (DIMENSION,) * total + array.shape[degree:]
        factors.append(np.broadcast_to(array.reshape(shape), target))
        offset += degree
    return factors


def _wedge_factor(degrees: Sequence[int]) -> float:
    numerator = factorial(sum(degrees))
    for degree in degrees:
        numerator //= factorial(degree)
    return float(numerator)


def bracket_wedge_arrays(
    algebra: LieAlgebra, a: np.ndarray, p: int, b: np.ndarray, q: int
) -> np.ndarray:
    """係数配列のレベルの [a ∧ b]（括弧積とウェッジ積）"""
    x, y = _broadcast_factors([a, b], [p, q])
    return _wedge_factor([p, q]) * antisymmetrize(algebra.bracket(x, y), p + q)


def trilinear_wedge_arrays(
    algebra: LieAlgebra,
    k: float,
    factors: Sequence[Tuple[np.ndarray, int]],
) -> np.ndarray:
    """
    係数配列のレベルの k·(x, [y, z]) とウェッジ積

    Args:
        algebra: リー代数
        k: μ₃の定数
        factors: (係数配列, 次数) の3つ組

    Returns:
        np.ndarray: 𝔲(1)値の係数配列（値の次元1）
    """
    arrays = [array for array, _ in factors]
    degrees = [degree for _, degree in factors]
    x, y, z = _broadcast_factors(arrays, degrees)
    total = sum(degrees)
    value = lambda03_linear(algebra, k, x, y, z)
    return (_wedge_factor(degrees) * antisymmetrize(value, total))[..., None]


def bracket_wedge(algebra: LieAlgebra, a: FormField, b: FormField) -> FormField:
    """μ₂(a, b) = [a ∧ b]"""
    if a.value_dim != algebra.dim or b.value_dim != algebra.dim:
        raise ValueError(f"{algebra.name}値の形式が必要です: {a}, {b}")
    if a.degree + b.degree > DIMENSION:
        raise ValueError("ウェッジ積の次数が上限を超えます")

    def func(x: np.ndarray) -> np.ndarray:
        return bracket_wedge_arrays(algebra, a(x), a.degree, b(x), b.degree)

    return FormField(
        a.degree + b.degree,
        algebra.dim,
        func,
        f"[{a.name}∧{b.name}]",
        a.singular_points + b.singular_points,
    )


def trilinear_wedge(
    algebra: LieAlgebra, k: float, x: FormField, y: FormField, z: FormField
) -> FormField:
    """μ₃(x, y, z) = k·(x ∧ [y ∧ z])（𝔲(1)値）"""
    for form in (x, y, z):
        if form.value_dim != algebra.dim:
            raise ValueError(f"{algebra.name}値の形式が必要です: {form}")
    degree = x.degree + y.degree + z.degree
    if degree > DIMENSION:
        raise ValueError("ウェッジ積の次数が上限を超えます")

    def func(p: np.ndarray) -> np.ndarray:
        return trilinear_wedge_arrays(
            algebra, k, [(x(p), x.degree), (y(p), y.degree), (z(p), z.degree)]
        )

    return FormField(
        degree,
        1,
        func,
        f"μ₃({x.name},{y.name},{z.name})",
        x.singular_points + y.singular_points + z.singular_points,
    )


def mc_residuals(
    A: FormField, B: FormField, algebra: LieAlgebra, k: float, h: float
) -> Tuple[FormField, FormField]:
    """
    Maurer–Cartan残差 ℱ = dA + ½μ₂(A, A) と H = dB − (1/3!)μ₃(A, A, A)

    Args:
        A: 𝔤値1形式
        B: 𝔲(1)値2形式
        algebra: リー代数
        k: μ₃の定数
        h: 有限差分のステップ幅

    Returns:
        Tuple[FormField, FormField]: (ℱ, H)

    Raises:
        ValueError: 次数または値の次元が不正な場合
    """
    if A.degree != 1 or A.value_dim != algebra.dim:
        raise ValueError(f"Aは{algebra.name}値1形式である必要があります: {A}")
    if B.degree != 2 or B.value_dim != 1:
        raise ValueError(f"Bは𝔲(1)値2形式である必要があります: {B}")
    F = ext_d(A, h) + bracket_wedge(algebra, A, A).scale(0.5)
    H = ext_d(B, h) - trilinear_wedge(algebra, k, A, A, A).scale(1.0 / 6.0)
    return F, H


def gauge_transform(
    A: FormField,
    B: FormField,
    x: FormField,
    zeta: FormField,
    eps: float,
    algebra: LieAlgebra,
    k: float,
    h: float,
) -> Tuple[FormField, FormField]:
    """
    一次の無限小ゲージ変換

    δA = dx + μ₂(A, x)、δB = −dζ + ½μ₃(x, A, A) として
    A' = A + ε·δA、B' = B + ε·δB を返します。

    Args:
        A, B: 変換する場
        x: 𝔤値0形式
        zeta: 𝔲(1)値1形式
        eps: パラメータの大きさ
        algebra: リー代数
        k: μ₃の定数
        h: 有限差分のステップ幅

    Returns:
        Tuple[FormField, FormField]: (A', B')
    """
    if x.degree != 0 or zeta.degree != 1:
        raise ValueError("xは0形式、ζは1形式である必要があります")
    delta_a = ext_d(x, h) + bracket_wedge(algebra, A, x)
    delta_b = ext_d(zeta, h).scale(-1.0) + trilinear_wedge(
        algebra, k, x, A, A
    ).scale(0.5)
    return A + delta_a.scale(eps), B + delta_b.scale(eps)


def pure_gauge_connection(
    group_map: Callable[[np.ndarray], np.ndarray],
    algebra: LieAlgebra,
    h: float,
    name: str = "A",
) -> FormField:
    """
    純ゲージ接続 A = g⁻¹dg

    Args:
        group_map: 点 → 群の元の表現行列
        algebra: 行列表現を持つリー代数
        h: 有限差分のステップ幅

    Returns:
        FormField: 𝔤値1形式
    """

    def func(x: np.ndarray) -> np.ndarray:
        g = group_map(x)
        derivative = central_gradient(group_map, x, h)
        inverse = np.linalg.inv(g)
        return np.stack(
            [algebra.from_matrix(inverse @ derivative[mu]) for mu in range(DIMENSION)]
        )

    return FormField(1, algebra.dim, func, name)


def max_abs(value: np.ndarray) -> float:
    """係数配列の最大絶対値"""
    return float(np.max(np.abs(value))) if np.size(value) else 0.0
