#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自己双対弦モジュール

ℝ⁴∖{x₁,…,x_n} 上の自己双対弦方程式

    ℱ = dA + ½[A ∧ A] = 0,  H = dB − (1/3!)μ₃(A, A, A) = ★dΦ

の2つの解を有限差分で検証します。

- 解1: v ≡ 1（A = 0）と弦状のポテンシャル B（Φ = Σ 1/|x − x_i|²）
- 解2: B = 0 と v = φ₁((x − x₀)/|x − x₀|)、A = π(v)⁻¹dπ(v)（k = 1 が必要）
"""

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import FieldConfig
from ..group import SU2_ALGEBRA, SU2Element
from ..simplicial import CoverPoint, phi1
from ..utils import (
    build_check_report,
    create_rng,
    estimate_order,
    log_info,
    log_warning,
    parallel_map,
    residual_stats,
)
from .forms import (
    DIMENSION,
    LEVI_CIVITA,
    FormField,
    ext_d,
    hodge,
    max_abs,
    mc_residuals,
    pure_gauge_connection,
)

SOLUTIONS = (1, 2)

# 固定添字の読み方で使う弦の軸（x⁴）
FIXED_STRING_AXIS = 3

# 解1の公式に書かれたままの前因子
PRINTED_B_NORMALIZATION = 0.375


@dataclass
class SelfDualStringConfig:
    """自己双対弦の検証設定"""

    singularities: Tuple[Tuple[float, ...], ...] = ((0.0, 0.0, 0.0, 0.0),)
    samples: int = 512
    r_min: float = 0.5
    r_max: float = 2.0
    string_exclusion: float = 0.5
    h_ladder: Tuple[float, ...] = (4e-3, 2e-3, 1e-3)
    k: float = 1.0
    error_constant: float = 1e5
    min_order: float = 1.9
    b_reading: str = "summed"
    b_normalization: Optional[float] = None
    centres: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if not self.singularities:
            raise ValueError("特異点が1つ以上必要です")
        self.centres = np.asarray(self.singularities, dtype=float)
        if self.centres.ndim != 2 or self.centres.shape[1] != DIMENSION:
            raise ValueError(f"特異点は{DIMENSION}次元の点である必要があります")
        if self.samples < 1:
            raise ValueError(f"サンプル数は1以上である必要があります: {self.samples}")
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError(f"半径範囲が不正です: [{self.r_min}, {self.r_max}]")
        if not 0.0 <= self.string_exclusion < 1.0:
            raise ValueError(f"弦の除外幅は[0, 1)である必要があります: {self.string_exclusion}")
        if len(self.h_ladder) < 2 or min(self.h_ladder) <= 0.0:
            raise ValueError(f"ステップ幅の列が不正です: {self.h_ladder}")
        if self.b_reading not in ("summed", "fixed"):
            raise ValueError(f"未知のB読み方です: {self.b_reading}")
        self.h_ladder = tuple(sorted(self.h_ladder, reverse=True))

    @classmethod
    def from_field_config(
        cls,
        fields: FieldConfig,
        k: float = 1.0,
        samples: Optional[int] = None,
        singularities: Optional[Sequence[Sequence[float]]] = None,
    ) -> "SelfDualStringConfig":
        """FieldConfigから作成"""
        return cls(
            singularities=tuple(
                tuple(float(c) for c in p)
                for p in (singularities or cls.singularities)
            ),
            samples=fields.sds_samples if samples is None else samples,
            r_min=fields.r_min,
            r_max=fields.r_max,
            string_exclusion=fields.string_exclusion,
            h_ladder=tuple(fields.h_ladder),
            k=k,
            error_constant=fields.error_constant,
            min_order=fields.min_order,
            b_reading=fields.b_reading,
            b_normalization=fields.b_normalization,
        )

    @property
    def normalization(self) -> float:
        """Bの前因子（未指定なら読み方ごとの既定値）"""
        if self.b_normalization is not None:
            return self.b_normalization
        return 0.125 if self.b_reading == "summed" else 0.5

    @property
    def string_axes(self) -> Tuple[int, ...]:
        """Bが特異になる軸"""
        if self.b_reading == "fixed":
            return (FIXED_STRING_AXIS,)
        return tuple(range(DIMENSION))

    def with_reading(
        self, reading: str, normalization: Optional[float] = None
    ) -> "SelfDualStringConfig":
        """読み方と前因子を変えた設定（前因子の省略時は既定値）"""
        return SelfDualStringConfig(
            singularities=self.singularities,
            samples=self.samples,
            r_min=self.r_min,
            r_max=self.r_max,
            string_exclusion=self.string_exclusion,
            h_ladder=self.h_ladder,
            k=self.k,
            error_constant=self.error_constant,
            min_order=self.min_order,
            b_reading=reading,
            b_normalization=normalization,
        )


def higgs_field(centres: np.ndarray) -> FormField:
    """スカラー場 Φ = Σ 1/|x − x_i|²"""

    def func(x: np.ndarray) -> np.ndarray:
        return np.array([sum(1.0 / float(np.sum((x - c) ** 2)) for c in centres)])

    return FormField(0, 1, func, "Φ", singular_points=list(centres))


def _transverse_radius(x: np.ndarray, axis: int) -> float:
    return math.sqrt(max(float(x @ x) - float(x[axis]) ** 2, 0.0))


def string_profile(x: np.ndarray, axis: int) -> float:
    """
    F_λ = atan2(r_λ, x^λ)/r_λ³ − x^λ/(R² r_λ²)

    r_λ は x^λ 以外の3成分のノルムです。軸上（r_λ = 0）では定義されません。
    """
    r_axis = _transverse_radius(x, axis)
    if r_axis == 0.0:
        raise ValueError(f"弦の軸上では評価できません: axis={axis}")
    radius_sq = float(x @ x)
    return (
        math.atan2(r_axis, float(x[axis])) / r_axis**3
        - float(x[axis]) / (radius_sq * r_axis**2)
    )


def string_potential(
    x: Sequence[float], normalization: float, axes: Sequence[int]
) -> np.ndarray:
    """
    原点に中心を持つ弦状のポテンシャル

    B_μν = 2c Σ_{κ,λ} ε_μνκλ x^κ F_λ(x)（λ は axes について和をとる）

    Args:
        x: 点
        normalization: 前因子 c
        axes: 和をとる λ

    Returns:
        np.ndarray: 係数配列 (4, 4)
    """
    point = np.asarray(x, dtype=float)
    profile = np.zeros(DIMENSION)
    for axis in axes:
        profile[axis] = string_profile(point, axis)
    return 2.0 * normalization * np.einsum("mnkl,k,l->mn", LEVI_CIVITA, point, profile)


def solution_one_fields(config: SelfDualStringConfig) -> Tuple[FormField, FormField]:
    """解1の (A, B) = (0, Σ_i B(x − x_i))"""
    centres = config.centres
    normalization = config.normalization
    axes = config.string_axes

    def func(x: np.ndarray) -> np.ndarray:
        total = sum(string_potential(x - c, normalization, axes) for c in centres)
        return np.asarray(total)[..., None]

    A = FormField.zero(1, SU2_ALGEBRA.dim, "A")
    return A, FormField(2, 1, func, "B₁", singular_points=list(centres))


def sds_solution_v(
    x: Sequence[float], centre: Sequence[float] = (0, 0, 0, 0)
) -> CoverPoint:
    """
    解2の被覆点 v(x) = φ₁((x − x₀)/|x − x₀|)

    Raises:
        ValueError: 中心で評価した場合
    """
    offset = np.asarray(x, dtype=float) - np.asarray(centre, dtype=float)
    return phi1(SU2Element.from_components(offset))


def solution_two_fields(
    config: SelfDualStringConfig, h: float
) -> Tuple[FormField, FormField]:
    """
    解2の (A, B) = (π(v)⁻¹dπ(v), 0)

    Raises:
        ValueError: 特異点が1つでない場合
    """
    if len(config.centres) != 1:
        raise ValueError("解2は特異点が1つの場合のみ定義されます")
    centre = config.centres[0]

    def group_map(x: np.ndarray) -> np.ndarray:
        return sds_solution_v(x, centre).group_element().matrix()

    A = pure_gauge_connection(group_map, SU2_ALGEBRA, h, "A₂")
    A.singular_points = [centre]
    return A, FormField.zero(2, 1, "B₂")


def laplacian(form: FormField, x: np.ndarray, h: float) -> float:
    """0形式の中心差分ラプラシアン"""
    point = np.asarray(x, dtype=float)
    centre_value = float(form(point)[0])
    total = 0.0
    for mu in range(DIMENSION):
        step = np.zeros(DIMENSION)
        step[mu] = h
        total += float(form(point + step)[0]) - 2.0 * centre_value
        total += float(form(point - step)[0])
    return total / h**2


def sample_points(
    config: SelfDualStringConfig, seed: int, exclude_strings: bool
) -> Tuple[np.ndarray, int]:
    """
    半径 [r_min, r_max] の球殻の点のサンプリング

    特異点から r_min 未満の点と、exclude_strings のとき弦の軸の近く
    （r_λ < string_exclusion·R）の点を除外します。

    Returns:
        Tuple[np.ndarray, int]: (採用した点, 除外した数)
    """
    rng = create_rng(seed, 90)
    directions = rng.normal(size=(config.samples, DIMENSION))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    radii = rng.uniform(config.r_min, config.r_max, size=config.samples)
    candidates = directions * radii[:, None]

    kept: List[np.ndarray] = []
    for point in candidates:
        offsets = point - config.centres
        distances = np.linalg.norm(offsets, axis=1)
        if np.any(distances < config.r_min):
            continue
        if exclude_strings and any(
            _transverse_radius(offset, axis) < config.string_exclusion * distance
            for offset, distance in zip(offsets, distances)
            for axis in config.string_axes
        ):
            continue
        kept.append(point)
    excluded = config.samples - len(kept)
    points = np.array(kept) if kept else np.zeros((0, DIMENSION))
    return points, excluded


@dataclass
class SelfDualStringResult:
    """1つの解についての評価結果"""

    solution: int
    config: SelfDualStringConfig
    points: np.ndarray
    excluded: int
    # ステップ幅 → 点ごとの残差
    self_duality: Dict[float, List[float]]
    flatness: Dict[float, List[float]]
    harmonicity: Dict[float, List[float]]

    @property
    def h(self) -> float:
        """最小のステップ幅"""
        return min(self.self_duality)

    def _check(self, residuals: Dict[float, List[float]]) -> Dict[str, Any]:
        steps = sorted(residuals, reverse=True)
        maxima = [max(residuals[h], default=0.0) for h in steps]
        stats = residual_stats(
            residuals[self.h], self.config.error_constant * self.h**2
        )
        order = estimate_order(steps, maxima) if stats["count"] else None
        stats["order"] = order
        stats["max_by_h"] = maxima
        if order is not None:
            stats["passed"] = stats["passed"] and order >= self.config.min_order
        return stats

    def report(self) -> Dict[str, Any]:
        """部分レポート"""
        checks = {
            "self_duality": self._check(self.self_duality),
            "harmonicity": self._check(self.harmonicity),
        }
        # 平坦性はステップ幅の列で収束次数をとらない（解1では恒等的に零）
        checks["flatness"] = residual_stats(
            self.flatness[self.h], self.config.error_constant * self.h**2
        )
        return build_check_report(
            checks,
            solution=self.solution,
            samples=int(len(self.points)),
            excluded=self.excluded,
            h_ladder=list(self.config.h_ladder),
            k=self.config.k,
            b_reading=self.config.b_reading,
            b_normalization=self.config.normalization,
        )

    def rows(self) -> List[Dict[str, Any]]:
        """点ごとの残差（CSV出力用）"""
        rows = []
        for i, point in enumerate(self.points):
            row: Dict[str, Any] = {"index": i, "solution": self.solution, "h": self.h}
            for mu in range(DIMENSION):
                row[f"x{mu + 1}"] = float(point[mu])
            row["radius"] = float(np.linalg.norm(point))
            row["self_duality"] = self.self_duality[self.h][i]
            row["flatness"] = self.flatness[self.h][i]
            row["harmonicity"] = self.harmonicity[self.h][i]
            rows.append(row)
        return rows


def evaluate_sds(
    config: SelfDualStringConfig,
    solution: int,
    seed: int = 0,
    executor: Optional[Executor] = None,
) -> SelfDualStringResult:
    """
    1つの解の残差をステップ幅の列で評価

    Args:
        config: 検証設定
        solution: 解の番号（1または2）
        seed: 乱数シード
        executor: 並列評価の実行器

    Returns:
        SelfDualStringResult: 評価結果

    Raises:
        ValueError: 未知の解の番号の場合
    """
    if solution not in SOLUTIONS:
        raise ValueError(f"未知の解の番号です: {solution}")
    points, excluded = sample_points(config, seed, exclude_strings=solution == 1)
    if excluded:
        log_warning(f"特異点・弦の近くの{excluded}点を除外しました")
    phi = higgs_field(config.centres)

    self_duality: Dict[float, List[float]] = {}
    flatness: Dict[float, List[float]] = {}
    harmonicity: Dict[float, List[float]] = {}
    for h in config.h_ladder:
        if solution == 1:
            A, B = solution_one_fields(config)
        else:
            A, B = solution_two_fields(config, h)
        F, H = mc_residuals(A, B, SU2_ALGEBRA, config.k, h)
        target = hodge(ext_d(phi, h))

        def residuals(x: np.ndarray) -> Tuple[float, float, float]:
            return (
                max_abs(H(x) - target(x)),
                max_abs(F(x)),
                abs(laplacian(phi, x, h)),
            )

        values = parallel_map(residuals, list(points), executor)
        self_duality[h] = [v[0] for v in values]
        flatness[h] = [v[1] for v in values]
        harmonicity[h] = [v[2] for v in values]

    log_info(f"自己双対弦の解{solution}を{len(points)}点で評価しました")
    return SelfDualStringResult(
        solution, config, points, excluded, self_duality, flatness, harmonicity
    )


def sds_verify(
    config: SelfDualStringConfig,
    solution: int,
    seed: int = 0,
    executor: Optional[Executor] = None,
    rows: Optional[List[Dict[str, Any]]] = None,
) -> Dict[str, Any]:
    """
    自己双対弦の解の検証

    解1が既定の読み方で不合格なら、もう一方の読み方も評価して
    alternate_reading に記録します。前因子が既定値の解1では、公式に書かれた
    前因子 3/8 での残差も printed_normalization に記録します。B は前因子に
    比例するので、その H は既定の H の h_scale 倍です。

    Args:
        config: 検証設定
        solution: 解の番号（1または2）
        seed: 乱数シード
        executor: 並列評価の実行器
        rows: 指定された場合、点ごとの残差を追加する

    Returns:
        Dict[str, Any]: self_duality, flatness, harmonicity のチェック
    """
    result = evaluate_sds(config, solution, seed, executor)
    if rows is not None:
        rows.extend(result.rows())
    report = result.report()
    if solution == 1 and not report["passed"] and config.b_normalization is None:
        other = "fixed" if config.b_reading == "summed" else "summed"
        alternate = evaluate_sds(config.with_reading(other), 1, seed, executor).report()
        report["alternate_reading"] = {
            "b_reading": other,
            "passed": alternate["passed"],
            "self_duality_max": alternate["checks"]["self_duality"]["max"],
        }
        log_warning(f"既定の読み方で不合格のため{other}の読み方も評価しました")
    if solution == 1 and config.b_normalization is None:
        report["printed_normalization"] = _printed_normalization(
            config, seed, executor
        )
    return report


def _printed_normalization(
    config: SelfDualStringConfig, seed: int, executor: Optional[Executor]
) -> Dict[str, Any]:
    printed = config.with_reading(config.b_reading, PRINTED_B_NORMALIZATION)
    report = evaluate_sds(printed, 1, seed, executor).report()
    return {
        "b_normalization": PRINTED_B_NORMALIZATION,
        "b_reading": config.b_reading,
        "h_scale": PRINTED_B_NORMALIZATION / config.normalization,
        "passed": report["passed"],
        "self_duality_max": report["checks"]["self_duality"]["max"],
    }


def compare_sds_solutions(
    config: SelfDualStringConfig,
    seed: int = 0,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    2つの解が同じ Φ と H を与えることの比較

    Returns:
        Dict[str, Any]: checks に H_agreement
    """
    points, excluded = sample_points(config, seed, exclude_strings=True)
    h = min(config.h_ladder)
    _, H1 = mc_residuals(*solution_one_fields(config), SU2_ALGEBRA, config.k, h)
    _, H2 = mc_residuals(*solution_two_fields(config, h), SU2_ALGEBRA, config.k, h)

    def difference(x: np.ndarray) -> float:
        return max_abs(H1(x) - H2(x))

    values = parallel_map(difference, list(points), executor)
    checks = {"H_agreement": residual_stats(values, config.error_constant * h**2)}
    return build_check_report(checks, samples=int(len(points)), excluded=excluded, h=h)
