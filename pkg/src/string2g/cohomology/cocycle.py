#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Segal–Mitchison 3コサイクルモジュール

λ = (λ²¹, λ¹², λ⁰³) の表現、余境界から作る厳密なコサイクルの生成、
コサイクル条件の検証、二重複体の冪零性の検証を提供します。
"""

from concurrent.futures import Executor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..simplicial import CoverPoint
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)
from .cochain import (
    Cochain,
    CochainSum,
    circle_distance,
    delta_cech,
    delta_nerve,
    delta_sm,
    labels_hash,
    quaternion_offset,
    random_cochain,
    sample_arguments,
)


@dataclass(frozen=True)
class SMThreeCocycle:
    """全次数3のコチェイン組 λ = (λ²¹, λ¹², λ⁰³)。λ³⁰ は常に0"""

    lambda21: Cochain
    lambda12: Cochain
    lambda03: Cochain
    name: str = "lambda"

    def __post_init__(self) -> None:
        """初期化後の検証"""
        expected = {
            "lambda21": (2, 1),
            "lambda12": (1, 2),
            "lambda03": (0, 3),
        }
        for attribute, bidegree in expected.items():
            actual = getattr(self, attribute).bidegree
            if actual != bidegree:
                raise ValueError(
                    f"{attribute}の次数が不正です: {actual} != {bidegree}"
                )

    @classmethod
    def zero(cls) -> "SMThreeCocycle":
        """零コサイクル"""
        return cls(Cochain.zero(2, 1), Cochain.zero(1, 2), Cochain.zero(0, 3), "zero")

    def components(self) -> CochainSum:
        """(p, q) → コチェイン"""
        return {(2, 1): self.lambda21, (1, 2): self.lambda12, (0, 3): self.lambda03}


def generate_coboundary_cocycle(
    seed: int, nerve_part: bool = True, amplitude: float = 1.0
) -> SMThreeCocycle:
    """
    余境界 δ_SM μ から厳密な3コサイクルを生成

    μ¹¹(v₀, v₁) = ρ[i₀, i₁]·s(g)（ρは反対称）と
    μ⁰²(s) = u(g₁)ᵀ C(J) u(g₂)（Jは辺ラベル）を乱数で選び、
    δ_SM(−μ¹¹, −μ⁰²) から λ²¹ = δ_Č μ¹¹, λ¹² = δ_N μ¹¹ − δ_Č μ⁰², λ⁰³ = −δ_N μ⁰² を得ます。

    Args:
        seed: 乱数シード
        nerve_part: Falseの場合 μ⁰² = 0（λ⁰³ ≡ 0）
        amplitude: μの振幅。0なら零コサイクル

    Returns:
        SMThreeCocycle: コサイクル
    """
    rng = create_rng(seed, 10)
    raw = rng.normal(size=(8, 8))
    rho = 0.5 * (raw - raw.T)
    linear = rng.normal(size=4)
    quadratic = rng.normal(size=(4, 4))
    quadratic = 0.5 * (quadratic + quadratic.T)
    base_matrix = rng.normal(size=(4, 4))

    @lru_cache(maxsize=None)
    def label_matrix(labels: Tuple[int, ...]) -> np.ndarray:
        return create_rng(seed, 11, *labels).normal(size=(4, 4))

    def mu11(args: Tuple[CoverPoint, ...]) -> float:
        v0, v1 = args
        u = quaternion_offset(v0.group_element())
        s = float(linear @ u + u @ quadratic @ u)
        return amplitude * float(rho[v0.patch - 1, v1.patch - 1]) * s

    def mu02(args: Tuple[CoverPoint, ...]) -> float:
        (v,) = args
        if not nerve_part:
            return 0.0
        g1, g2 = v.point.elements
        matrix = base_matrix + 0.3 * label_matrix(v.index.labels)
        return amplitude * float(
            quaternion_offset(g1) @ matrix @ quaternion_offset(g2)
        )

    mu: CochainSum = {
        (1, 1): Cochain(1, 1, mu11, "mu11").scale(-1.0),
        (0, 2): Cochain(0, 2, mu02, "mu02").scale(-1.0),
    }
    image = delta_sm(mu)
    log_info(f"余境界コサイクルを生成しました: seed={seed}, nerve_part={nerve_part}")
    return SMThreeCocycle(
        lambda21=image[(2, 1)].scale(-1.0),
        lambda12=image[(1, 2)],
        lambda03=image[(0, 3)],
        name=f"coboundary-{seed}",
    )


def perturb_lambda03(
    cocycle: SMThreeCocycle, seed: int, amplitude: float = 0.1
) -> SMThreeCocycle:
    """
    λ⁰³にパッチに依存しない非コサイクルの項を加える

    δ_Č の条件は保たれ、δ_N λ⁰³ = 0 のみが破れます。
    """
    a1, a2, a3 = create_rng(seed, 12).normal(size=(3, 4))

    def bump(args: Tuple[CoverPoint, ...]) -> float:
        g1, g2, g3 = args[0].point.elements
        return amplitude * float(
            (a1 @ quaternion_offset(g1))
            * (a2 @ quaternion_offset(g2))
            * (a3 @ quaternion_offset(g3))
        )

    return SMThreeCocycle(
        cocycle.lambda21,
        cocycle.lambda12,
        cocycle.lambda03 + Cochain(0, 3, bump, "bump03"),
        f"{cocycle.name}+bump03",
    )


def perturb_lambda12(
    cocycle: SMThreeCocycle, seed: int, amplitude: float = 0.1
) -> SMThreeCocycle:
    """
    λ¹²にラベルについて反対称な項を加える（交換律が破れる）
    """
    b1, b2 = create_rng(seed, 13).normal(size=(2, 4))

    def term(args: Tuple[CoverPoint, ...]) -> float:
        s0, s1 = args
        j0, j1 = s0.index.labels, s1.index.labels
        weight = labels_hash(seed, j0 + j1) - labels_hash(seed, j1 + j0)
        g1, g2 = s0.point.elements
        sigma = float((b1 @ quaternion_offset(g1)) * (b2 @ quaternion_offset(g2)))
        return amplitude * weight * sigma

    return SMThreeCocycle(
        cocycle.lambda21,
        cocycle.lambda12 + Cochain(1, 2, term, "bump12"),
        cocycle.lambda03,
        f"{cocycle.name}+bump12",
    )


# 条件名 → (引数のČech次数p, 脈体次数q)
COCYCLE_CONDITIONS: Dict[str, Tuple[int, int]] = {
    "dC_lambda21": (3, 1),
    "dN_lambda21_eq_dC_lambda12": (2, 2),
    "dN_lambda12_eq_dC_lambda03": (1, 3),
    "dN_lambda03": (0, 4),
}


def cocycle_residuals(
    cocycle: SMThreeCocycle,
) -> Dict[str, Callable[[Tuple[CoverPoint, ...]], float]]:
    """
    4つのコサイクル条件の残差関数

    δ_Č λ²¹ = 0, δ_N λ²¹ = δ_Č λ¹², δ_N λ¹² = δ_Č λ⁰³, δ_N λ⁰³ = 0
    """
    dc21 = delta_cech(cocycle.lambda21)
    dn21 = delta_nerve(cocycle.lambda21)
    dc12 = delta_cech(cocycle.lambda12)
    dn12 = delta_nerve(cocycle.lambda12)
    dc03 = delta_cech(cocycle.lambda03)
    dn03 = delta_nerve(cocycle.lambda03)
    return {
        "dC_lambda21": lambda args: circle_distance(dc21.value(*args)),
        "dN_lambda21_eq_dC_lambda12": lambda args: circle_distance(
            dn21.value(*args) - dc12.value(*args)
        ),
        "dN_lambda12_eq_dC_lambda03": lambda args: circle_distance(
            dn12.value(*args) - dc03.value(*args)
        ),
        "dN_lambda03": lambda args: circle_distance(dn03.value(*args)),
    }


def is_sm_cocycle(
    cocycle: SMThreeCocycle,
    samples: int,
    tol: float,
    seed: int = 0,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    コサイクル条件 δ_SM λ = 0 の検証

    Args:
        cocycle: 検証するλ
        samples: 条件ごとのサンプル数（1以上）
        tol: 許容誤差
        seed: サンプル用の乱数シード
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 条件ごとの残差統計

    Raises:
        ValueError: サンプル数が0以下の場合
    """
    if samples < 1:
        raise ValueError(f"サンプル数は1以上である必要があります: {samples}")
    rng = create_rng(seed, 20)
    residuals = cocycle_residuals(cocycle)
    checks: Dict[str, Dict[str, Any]] = {}
    for name, (p, q) in COCYCLE_CONDITIONS.items():
        arguments = [sample_arguments(rng, p, q) for _ in range(samples)]
        values = parallel_map(residuals[name], arguments, executor)
        checks[name] = residual_stats(values, tol)
    log_info(f"コサイクル条件を検証しました: {cocycle.name}, samples={samples}")
    return build_check_report(checks)


def check_double_complex(
    seed: int,
    samples: int,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    二重複体の検証（δ_Č² = 0, δ_N² = 0, δ_SM² = 0, δ_Č δ_N = δ_N δ_Č, 正規化の保存）

    Args:
        seed: 乱数シード
        samples: サンプル数
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート
    """
    rng = create_rng(seed, 30)
    f01 = random_cochain(seed, 0, 1, "f01")
    f11 = random_cochain(seed, 1, 1, "f11")
    f02 = random_cochain(seed, 0, 2, "f02")

    def evaluate(c: Cochain, p: int, q: int) -> List[float]:
        arguments = [sample_arguments(rng, p, q) for _ in range(samples)]
        return parallel_map(
            lambda args: circle_distance(c.value(*args)), arguments, executor
        )

    cech_squared = evaluate(delta_cech(delta_cech(f01)), 2, 1) + evaluate(
        delta_cech(delta_cech(f11)), 3, 1
    )
    nerve_squared = evaluate(delta_nerve(delta_nerve(f01)), 0, 3) + evaluate(
        delta_nerve(delta_nerve(f11)), 1, 3
    )

    sm_squared: List[float] = []
    twice = delta_sm(delta_sm({(1, 1): f11, (0, 2): f02}))
    for (p, q), component in sorted(twice.items()):
        sm_squared.extend(evaluate(component, p, q))

    commute: List[float] = []
    for f in (f01, f11):
        difference = delta_cech(delta_nerve(f)) - delta_nerve(delta_cech(f))
        commute.extend(evaluate(difference, f.cech_degree + 1, 2))

    normalization: List[float] = []
    for _ in range(samples):
        (v,) = sample_arguments(rng, 0, 1)
        normalization.append(circle_distance(delta_cech(f01).func((v, v))))
        s = sample_arguments(rng, 0, 2)
        normalization.append(circle_distance(delta_nerve(f11).func((s[0], s[0]))))

    checks = {
        "dC_squared": residual_stats(cech_squared, tol),
        "dN_squared": residual_stats(nerve_squared, tol),
        "dSM_squared": residual_stats(sm_squared, tol),
        "dC_dN_commute": residual_stats(commute, tol),
        "normalization": residual_stats(normalization, tol),
    }
    log_info(f"二重複体の検証が完了しました: seed={seed}")
    return build_check_report(checks)
