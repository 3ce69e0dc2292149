#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Grassmann数モジュール

奇の生成元 γ₀, …, γ_{n−1} 上の外積代数で、係数はスカラーまたは
正方行列です。単項式は生成元の添字の狭義増加列で表し、積の符号は
並べ替えの置換の偶奇で決まります。
"""

from itertools import combinations
from typing import Any, Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

Monomial = Tuple[int, ...]
Coefficient = Any
Scalar = Union[int, float, complex]


def merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """単項式 left·right を整列するときの符号（共通の生成元があれば0）"""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


def _product(a: Coefficient, b: Coefficient) -> Coefficient:
    if np.ndim(a) == 2 and np.ndim(b) == 2:
        return np.asarray(a) @ np.asarray(b)
    return a * b


def _is_zero(value: Coefficient) -> bool:
    return bool(np.all(np.asarray(value) == 0))


class GrassmannNumber:
    """
    Grassmann数

    Attributes:
        n_generators: 生成元の数
        terms: 単項式 → 係数
    """

    def __init__(
        self, n_generators: int, terms: Optional[Dict[Monomial, Coefficient]] = None
    ):
        """
        初期化

        Args:
            n_generators: 生成元の数
            terms: 単項式 → 係数（単項式は整列済みで重複なし）

        Raises:
            ValueError: 単項式が不正な場合
        """
        if n_generators < 0:
            raise ValueError(f"生成元の数が不正です: {n_generators}")
        self.n_generators = n_generators
        self.terms: Dict[Monomial, Coefficient] = {}
        for monomial, coefficient in (terms or {}).items():
            key = tuple(int(i) for i in monomial)
            if list(key) != sorted(set(key)):
                raise ValueError(f"単項式は狭義増加列である必要があります: {key}")
            if key and (key[0] < 0 or key[-1] >= n_generators):
                raise ValueError(f"生成元の添字が範囲外です: {key}")
            if not _is_zero(coefficient):
                self.terms[key] = coefficient

    def __repr__(self) -> str:
        return f"GrassmannNumber(n={self.n_generators}, terms={len(self.terms)})"

    @classmethod
    def constant(cls, value: Coefficient, n_generators: int) -> "GrassmannNumber":
        """定数"""
        return cls(n_generators, {(): value})

    @classmethod
    def generator(
        cls, index: int, n_generators: int, coefficient: Coefficient = 1.0
    ) -> "GrassmannNumber":
        """係数つきの生成元 c·γ_index"""
        return cls(n_generators, {(index,): coefficient})

    @classmethod
    def monomial(
        cls, indices: Iterable[int], n_generators: int, coefficient: Coefficient = 1.0
    ) -> "GrassmannNumber":
        """γ_{i₁}γ_{i₂}…（並べ替えの符号を含む）"""
        result = cls.constant(coefficient, n_generators)
        for index in indices:
            result = result * cls.generator(index, n_generators)
        return result

    def _check(self, other: "GrassmannNumber") -> None:
        if self.n_generators != other.n_generators:
            raise ValueError(
                f"生成元の数が一致しません: {self.n_generators} != {other.n_generators}"
            )

    def __add__(self, other: "GrassmannNumber") -> "GrassmannNumber":
        self._check(other)
        terms = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            if monomial in terms:
                terms[monomial] = terms[monomial] + coefficient
            else:
                terms[monomial] = coefficient
        return GrassmannNumber(self.n_generators, terms)

    def __neg__(self) -> "GrassmannNumber":
        return self.scale(-1.0)

    def __sub__(self, other: "GrassmannNumber") -> "GrassmannNumber":
        return self + (-other)

    def scale(self, factor: Scalar) -> "GrassmannNumber":
        """スカラー倍"""
        return GrassmannNumber(
            self.n_generators, {m: factor * c for m, c in self.terms.items()}
        )

    def __mul__(self, other: Union["GrassmannNumber", Scalar]) -> "GrassmannNumber":
        if not isinstance(other, GrassmannNumber):
            return self.scale(other)
        self._check(other)
        terms: Dict[Monomial, Coefficient] = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                sign = merge_sign(left, right)
                if sign == 0:
                    continue
                key = tuple(sorted(left + right))
                value = sign * _product(a, b)
                terms[key] = terms[key] + value if key in terms else value
        return GrassmannNumber(self.n_generators, terms)

    def __rmul__(self, other: Scalar) -> "GrassmannNumber":
        return self.scale(other)

    def coefficient(self, monomial: Sequence[int]) -> Coefficient:
        """単項式の係数（なければ0）"""
        return self.terms.get(tuple(monomial), 0.0)

    def parity(self) -> Optional[int]:
        """偶奇（0か1）。混在する場合はNone"""
        parities = {len(m) % 2 for m in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def map_coefficients(
        self, func: Callable[[Coefficient], Coefficient]
    ) -> "GrassmannNumber":
        """係数ごとの写像（トレースなど）"""
        return GrassmannNumber(
            self.n_generators, {m: func(c) for m, c in self.terms.items()}
        )

    def trace(self) -> "GrassmannNumber":
        """行列係数のトレース"""
        return self.map_coefficients(lambda c: np.trace(np.asarray(c)))

    def right_coefficient(
        self, subset: Sequence[int], among: Sequence[int]
    ) -> "GrassmannNumber":
        """
        among の生成元がちょうど subset だけ現れる項の右係数

        f = Σ c'·γ_U·γ_T（T = subset、U は among 以外）となる c'·γ_U の和を返します。
        """
        target = tuple(sorted(subset))
        selected = set(among)
        terms: Dict[Monomial, Coefficient] = {}
        for monomial, value in self.terms.items():
            if tuple(i for i in monomial if i in selected) != target:
                continue
            rest = tuple(i for i in monomial if i not in selected)
            terms[rest] = merge_sign(rest, target) * value
        return GrassmannNumber(self.n_generators, terms)

    def max_abs(self) -> float:
        """係数の最大絶対値"""
        return max((float(np.max(np.abs(c))) for c in self.terms.values()), default=0.0)

    def distance(self, other: "GrassmannNumber") -> float:
        """差の係数の最大絶対値"""
        return (self - other).max_abs()


def all_monomials(n_generators: int) -> Tuple[Monomial, ...]:
    """n個の生成元のすべての単項式"""
    return tuple(
        monomial
        for size in range(n_generators + 1)
        for monomial in combinations(range(n_generators), size)
    )
