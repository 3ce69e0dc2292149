#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Deligneコサイクルモジュール

弱2コサイクル (v, a) に接続形式 A_i、曲率の2形式 B_i、重なり上の1形式 ζ_ij を
加えたDeligne 2コサイクルと、その2余境界の生成・変換・検証を提供します。

群の点を引数に取る λ⁰³ の項は、その点の π(v) の主枝の対数を 0形式として
線形化 k·(x, [y, z]) に代入し、形式の部分はウェッジ積で評価します。

この線形化は群のコサイクルではないため、非可換な β_i で変換したコサイクルは
B と ζ の貼り合わせを β の振幅の3次まで満たしません。validate_deligne の
linearization_amplitude に振幅を渡すと、その2つの関係式の許容誤差に
linearization_constant·|k|·振幅³ を加えます。β_i が1つの方向 e₃ に値を取る
場合は λ⁰³ の項が消え、変換は厳密です。
"""

from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..cohomology import SMThreeCocycle
from ..fields.forms import (
    FormField,
    bracket_wedge,
    central_gradient,
    ext_d,
    max_abs,
    trilinear_wedge_arrays,
)
from ..group import SU2_ALGEBRA, SU2Element
from ..simplicial import CoverPoint
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)
from .finite_cover import FiniteCover, smooth_scalar_map, smooth_su2_map
from .weak import (
    WeakCoboundary,
    WeakCocycle,
    apply_weak_coboundary,
    random_weak_coboundary,
    trivial_weak_cocycle,
    weak_coboundary_residuals,
    weak_cocycle_residuals,
)

ALGEBRA = SU2_ALGEBRA

FormSlot = Tuple[np.ndarray, int]


@dataclass(frozen=True)
class DeligneCocycle:
    """
    Deligne 2コサイクル (v, a, A, B, ζ)

    A(i, x) は形 (4, 3)、B(i, x) は反対称な (4, 4)、ζ(i, j, x) は (4,) の係数です。
    """

    weak: WeakCocycle
    A: Callable[[int, np.ndarray], np.ndarray]
    B: Callable[[int, np.ndarray], np.ndarray]
    zeta: Callable[[int, int, np.ndarray], np.ndarray]
    name: str = "deligne"


@dataclass(frozen=True)
class DeligneCoboundary:
    """Deligne 2余境界 (β, α, ζ_i)"""

    weak: WeakCoboundary
    zeta: Callable[[int, np.ndarray], np.ndarray]
    name: str = "deligne-coboundary"


def group_log(v: CoverPoint) -> np.ndarray:
    """群の点のスロットに入れる log π(v)"""
    return v.group_element().log()


def lambda_form(k: float, *slots: FormSlot) -> np.ndarray:
    """
    形式・代数の元を引数とする λ⁰³ の線形化

    Args:
        k: μ₃の定数
        slots: (係数配列, 次数) の3つ組

    Returns:
        np.ndarray: 𝔲(1)値の係数配列（値の軸なし）
    """
    return trilinear_wedge_arrays(ALGEBRA, k, list(slots))[..., 0]


def _matrices(components: np.ndarray) -> np.ndarray:
    return ALGEBRA.to_matrix(components)


def a_gluing_residual(
    g: np.ndarray, dg: np.ndarray, A_i: np.ndarray, A_j: np.ndarray
) -> np.ndarray:
    """π(v_ij)A_j − A_iπ(v_ij) − dπ(v_ij)（行列、形 (4, 2, 2)）"""
    return (
        np.einsum("ab,mbc->mac", g, _matrices(A_j))
        - np.einsum("mab,bc->mac", _matrices(A_i), g)
        - dg
    )


def a_coboundary_residual(
    g: np.ndarray, dg: np.ndarray, A_new: np.ndarray, A_old: np.ndarray
) -> np.ndarray:
    """π(β_i)A'_i − A_iπ(β_i) − dπ(β_i)"""
    return (
        np.einsum("ab,mbc->mac", g, _matrices(A_new))
        - np.einsum("mab,bc->mac", _matrices(A_old), g)
        - dg
    )


def b_gluing_residual(
    B_i: np.ndarray,
    B_j: np.ndarray,
    dzeta: np.ndarray,
    log_v: np.ndarray,
    A_i: np.ndarray,
    A_j: np.ndarray,
    k: float,
) -> np.ndarray:
    """B_i − B_j + dζ_ij + Λ(v, A_i, A_i) − Λ(A_j, v, A_i) + Λ(A_j, A_j, v)"""
    return (
        B_i
        - B_j
        + dzeta
        + lambda_form(k, (log_v, 0), (A_i, 1), (A_i, 1))
        - lambda_form(k, (A_j, 1), (log_v, 0), (A_i, 1))
        + lambda_form(k, (A_j, 1), (A_j, 1), (log_v, 0))
    )


def b_coboundary_residual(
    B_new: np.ndarray,
    B_old: np.ndarray,
    dzeta: np.ndarray,
    log_beta: np.ndarray,
    A_new: np.ndarray,
    A_old: np.ndarray,
    k: float,
) -> np.ndarray:
    """B'_i − B_i + dζ_i + Λ(β, A'_i, A'_i) − Λ(A_i, β, A'_i) + Λ(A_i, A_i, β)"""
    return (
        B_new
        - B_old
        + dzeta
        + lambda_form(k, (log_beta, 0), (A_new, 1), (A_new, 1))
        - lambda_form(k, (A_old, 1), (log_beta, 0), (A_new, 1))
        + lambda_form(k, (A_old, 1), (A_old, 1), (log_beta, 0))
    )


def zeta_triple_residual(
    zeta_kj: np.ndarray,
    zeta_ij: np.ndarray,
    zeta_ki: np.ndarray,
    da_jik: np.ndarray,
    log_v_ji: np.ndarray,
    log_v_ij: np.ndarray,
    log_v_ik: np.ndarray,
    A_j: np.ndarray,
    A_k: np.ndarray,
    k: float,
) -> np.ndarray:
    """
    ζ_kj + Λ(A_j, v_ji, v_ij) − ζ_ij − ζ_ki + d a_jik
    − Λ(v_ji, A_k, v_ik) + Λ(v_ji, v_ik, A_k)
    """
    return (
        zeta_kj
        + lambda_form(k, (A_j, 1), (log_v_ji, 0), (log_v_ij, 0))
        - zeta_ij
        - zeta_ki
        + da_jik
        - lambda_form(k, (log_v_ji, 0), (A_k, 1), (log_v_ik, 0))
        + lambda_form(k, (log_v_ji, 0), (log_v_ik, 0), (A_k, 1))
    )


def zeta_coboundary_terms(
    log_v: np.ndarray,
    log_w: np.ndarray,
    log_beta_i: np.ndarray,
    log_beta_j: np.ndarray,
    A_i: np.ndarray,
    A_j: np.ndarray,
    A_new_i: np.ndarray,
    A_new_j: np.ndarray,
    k: float,
) -> np.ndarray:
    """
    ζ の余境界の関係式の λ⁰³ の項（左辺 − 右辺）

    −Λ(A_i,v,β_j) + Λ(A_i,β_i,v') + Λ(β_i,v',A'_j)
    + Λ(v,A_j,β_j) − Λ(v',β_j,A'_j) − Λ(β_i,A'_i,v')
    """
    return (
        -lambda_form(k, (A_i, 1), (log_v, 0), (log_beta_j, 0))
        + lambda_form(k, (A_i, 1), (log_beta_i, 0), (log_w, 0))
        + lambda_form(k, (log_beta_i, 0), (log_w, 0), (A_new_j, 1))
        + lambda_form(k, (log_v, 0), (A_j, 1), (log_beta_j, 0))
        - lambda_form(k, (log_w, 0), (log_beta_j, 0), (A_new_j, 1))
        - lambda_form(k, (log_beta_i, 0), (A_new_i, 1), (log_w, 0))
    )


def _check_step(h: float, max_step: float) -> None:
    if h <= 0.0:
        raise ValueError(f"差分のステップ幅は正である必要があります: {h}")
    if h > max_step:
        raise ValueError(
            f"差分のステップ幅が大きすぎます: h={h} > {max_step}（収束を保証できません）"
        )


def _guarded(func: Callable[[Any], float]) -> Callable[[Any], float]:
    def wrapped(item: Any) -> float:
        try:
            return func(item)
        except ValueError:
            return 1.0

    return wrapped


def _group_matrix(func: Callable[[np.ndarray], CoverPoint]) -> Callable:
    return lambda p: func(p).group_element().matrix()


def deligne_residuals(
    cocycle: DeligneCocycle, k: float, h: float
) -> Dict[str, Callable[[Any], float]]:
    """接続データの関係式の残差関数（有限差分を含む）"""
    weak = cocycle.weak

    def flatness(item: Any) -> float:
        (i,), x = item
        A = FormField(1, ALGEBRA.dim, lambda p: cocycle.A(i, p), f"A{i}")
        F = ext_d(A, h) + bracket_wedge(ALGEBRA, A, A).scale(0.5)
        return max_abs(F(x))

    def a_gluing(item: Any) -> float:
        (i, j), x = item
        matrix = _group_matrix(lambda p: weak.v(i, j, p))
        residual = a_gluing_residual(
            matrix(x), central_gradient(matrix, x, h), cocycle.A(i, x), cocycle.A(j, x)
        )
        return max_abs(residual)

    def b_gluing(item: Any) -> float:
        (i, j), x = item
        dzeta = central_gradient(lambda p: cocycle.zeta(i, j, p), x, h)
        residual = b_gluing_residual(
            cocycle.B(i, x),
            cocycle.B(j, x),
            dzeta - dzeta.T,
            group_log(weak.v(i, j, x)),
            cocycle.A(i, x),
            cocycle.A(j, x),
            k,
        )
        return max_abs(residual)

    def zeta_relation(item: Any) -> float:
        (i, j, k_), x = item
        residual = zeta_triple_residual(
            cocycle.zeta(k_, j, x),
            cocycle.zeta(i, j, x),
            cocycle.zeta(k_, i, x),
            central_gradient(lambda p: weak.a(j, i, k_, p), x, h),
            group_log(weak.v(j, i, x)),
            group_log(weak.v(i, j, x)),
            group_log(weak.v(i, k_, x)),
            cocycle.A(j, x),
            cocycle.A(k_, x),
            k,
        )
        return max_abs(residual)

    return {
        "flatness": _guarded(flatness),
        "A_gluing": _guarded(a_gluing),
        "B_gluing": _guarded(b_gluing),
        "zeta_relation": _guarded(zeta_relation),
    }


_WEAK_ORDERS = {"projection": 3, "normalization": 1, "a_relation": 4}
_DELIGNE_ORDERS = {"flatness": 1, "A_gluing": 2, "B_gluing": 2, "zeta_relation": 3}
_LINEARIZED = {"B_gluing", "zeta_relation"}


def linearization_tolerance(amplitude: float, k: float, constant: float) -> float:
    """λ⁰³ の線形化による貼り合わせの誤差の上限 constant·|k|·振幅³"""
    if amplitude < 0.0:
        raise ValueError(f"振幅は非負である必要があります: {amplitude}")
    return constant * abs(k) * amplitude**3


def _run_checks(
    functions: Dict[str, Callable[[Any], float]],
    orders: Dict[str, int],
    tolerances: Dict[str, float],
    cover: FiniteCover,
    executor: Optional[Executor],
) -> Tuple[Dict[str, Dict[str, Any]], Dict[str, Dict[str, int]]]:
    checks: Dict[str, Dict[str, Any]] = {}
    overlaps: Dict[str, Dict[str, int]] = {}
    cache: Dict[int, Any] = {}
    for name, func in functions.items():
        order = orders[name]
        if order not in cache:
            cache[order] = cover.overlaps(order)
        samples = cache[order]
        checks[name] = residual_stats(
            parallel_map(func, list(samples.items), executor), tolerances[name]
        )
        overlaps[name] = samples.summary()
    return checks, overlaps


def validate_deligne(
    cocycle: DeligneCocycle,
    lam: SMThreeCocycle,
    cover: FiniteCover,
    tol: float,
    h: float,
    k: float = 1.0,
    fd_error_constant: float = 1e2,
    max_step: float = 0.1,
    executor: Optional[Executor] = None,
    linearization_amplitude: float = 0.0,
    linearization_constant: float = 1e3,
) -> Dict[str, Any]:
    """
    Deligne 2コサイクルの全関係式の検証

    弱コサイクルの条件は tol、有限差分を含む関係式は
    fd_error_constant·h² を許容誤差とします。B と ζ の貼り合わせには
    linearization_tolerance の分を加えます。

    Args:
        cocycle: 検証するコサイクル
        lam: Segal–Mitchison 3コサイクル
        cover: 有限被覆
        tol: 許容誤差
        h: 有限差分のステップ幅
        k: λ⁰³の線形化の定数
        fd_error_constant: 差分誤差の定数
        max_step: ステップ幅の上限
        executor: 並列評価の実行器
        linearization_amplitude: 変換に使った余境界 β の振幅（0なら厳密）
        linearization_constant: 線形化の誤差の定数

    Returns:
        Dict[str, Any]: 部分レポート

    Raises:
        ValueError: ステップ幅が大きすぎる場合、振幅が負の場合
    """
    _check_step(h, max_step)
    fd_tol = max(tol, fd_error_constant * h * h)
    lin_tol = linearization_tolerance(
        linearization_amplitude, k, linearization_constant
    )
    functions = dict(weak_cocycle_residuals(cocycle.weak, lam))
    functions.update(deligne_residuals(cocycle, k, h))
    orders = {**_WEAK_ORDERS, **_DELIGNE_ORDERS}
    tolerances = {name: (tol if name in _WEAK_ORDERS else fd_tol) for name in functions}
    for name in _LINEARIZED:
        tolerances[name] += lin_tol
    checks, overlaps = _run_checks(functions, orders, tolerances, cover, executor)
    log_info(f"Deligne 2コサイクルを検証しました: {cocycle.name}, h={h}")
    return build_check_report(
        checks, overlaps=overlaps, h=h, fd_tol=fd_tol, lin_tol=lin_tol
    )


def deligne_coboundary_residuals(
    cocycle: DeligneCocycle,
    transformed: DeligneCocycle,
    coboundary: DeligneCoboundary,
    k: float,
    h: float,
) -> Dict[str, Callable[[Any], float]]:
    """2余境界の接続データの関係式の残差関数"""
    beta = coboundary.weak.beta
    alpha = coboundary.weak.alpha

    def a_coboundary(item: Any) -> float:
        (i,), x = item
        matrix = _group_matrix(lambda p: beta(i, p))
        residual = a_coboundary_residual(
            matrix(x),
            central_gradient(matrix, x, h),
            transformed.A(i, x),
            cocycle.A(i, x),
        )
        return max_abs(residual)

    def b_coboundary(item: Any) -> float:
        (i,), x = item
        dzeta = central_gradient(lambda p: coboundary.zeta(i, p), x, h)
        residual = b_coboundary_residual(
            transformed.B(i, x),
            cocycle.B(i, x),
            dzeta - dzeta.T,
            group_log(beta(i, x)),
            transformed.A(i, x),
            cocycle.A(i, x),
            k,
        )
        return max_abs(residual)

    def zeta_coboundary(item: Any) -> float:
        (i, j), x = item
        terms = zeta_coboundary_terms(
            group_log(cocycle.weak.v(i, j, x)),
            group_log(transformed.weak.v(i, j, x)),
            group_log(beta(i, x)),
            group_log(beta(j, x)),
            cocycle.A(i, x),
            cocycle.A(j, x),
            transformed.A(i, x),
            transformed.A(j, x),
            k,
        )
        residual = (
            cocycle.zeta(j, i, x)
            + coboundary.zeta(j, x)
            - transformed.zeta(j, i, x)
            - central_gradient(lambda p: alpha(i, j, p), x, h)
            - coboundary.zeta(i, x)
            + terms
        )
        return max_abs(residual)

    return {
        "A_coboundary": _guarded(a_coboundary),
        "B_coboundary": _guarded(b_coboundary),
        "zeta_coboundary": _guarded(zeta_coboundary),
    }


def validate_deligne_coboundary(
    cocycle: DeligneCocycle,
    transformed: DeligneCocycle,
    coboundary: DeligneCoboundary,
    lam: SMThreeCocycle,
    cover: FiniteCover,
    tol: float,
    h: float,
    k: float = 1.0,
    fd_error_constant: float = 1e2,
    max_step: float = 0.1,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    Deligne 2余境界の全関係式の検証

    Args:
        cocycle: 元のコサイクル
        transformed: 変換後のコサイクル
        coboundary: (β, α, ζ_i)
        lam: Segal–Mitchison 3コサイクル
        cover: 有限被覆
        tol: 許容誤差
        h: 有限差分のステップ幅
        k: λ⁰³の線形化の定数
        fd_error_constant: 差分誤差の定数
        max_step: ステップ幅の上限
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート

    Raises:
        ValueError: ステップ幅が大きすぎる場合
    """
    _check_step(h, max_step)
    fd_tol = max(tol, fd_error_constant * h * h)
    functions = dict(
        weak_coboundary_residuals(
            cocycle.weak, transformed.weak, coboundary.weak, lam
        )
    )
    functions.update(
        deligne_coboundary_residuals(cocycle, transformed, coboundary, k, h)
    )
    orders = {
        "projection": 2,
        "alpha_diagonal": 1,
        "alpha_relation": 3,
        "A_coboundary": 1,
        "B_coboundary": 1,
        "zeta_coboundary": 2,
    }
    weak_names = {"projection", "alpha_diagonal", "alpha_relation"}
    tolerances = {name: (tol if name in weak_names else fd_tol) for name in functions}
    checks, overlaps = _run_checks(functions, orders, tolerances, cover, executor)
    log_info(f"Deligne 2余境界を検証しました: {coboundary.name}, h={h}")
    return build_check_report(checks, overlaps=overlaps, h=h, fd_tol=fd_tol)


def trivial_deligne_cocycle() -> DeligneCocycle:
    """A = 0, B = 0, ζ = 0, v ≡ 1, a = 0"""
    return DeligneCocycle(
        trivial_weak_cocycle(),
        lambda i, x: np.zeros((4, ALGEBRA.dim)),
        lambda i, x: np.zeros((4, 4)),
        lambda i, j, x: np.zeros(4),
        "trivial",
    )


def _smooth_one_form(rng: np.random.Generator, amplitude: float) -> Callable:
    constant = amplitude * rng.normal(size=4)
    linear = amplitude * rng.normal(size=(4, 4))
    direction = amplitude * rng.normal(size=4)
    frequency = rng.normal(size=4)

    def func(x: np.ndarray) -> np.ndarray:
        point = np.asarray(x, dtype=float)
        return constant + linear @ point + 0.3 * direction * np.sin(frequency @ point)

    return func


def abelian_deligne_coboundary(
    cover: FiniteCover, seed: int, amplitude: float = 0.1
) -> DeligneCoboundary:
    """
    β_i = exp(f_i(x) e₃) の余境界

    小さな振幅では β_i と β_i⁻¹β_j が対数の主枝に収まります。
    """
    rng = create_rng(seed, 80)
    scalars = {i: smooth_scalar_map(rng, amplitude) for i in range(cover.n_patches)}
    maps = {
        i: (lambda x, f=scalars[i]: SU2Element.exp((0.0, 0.0, f(x))))
        for i in range(cover.n_patches)
    }
    zetas = {i: _smooth_one_form(rng, amplitude) for i in range(cover.n_patches)}
    weak = random_weak_coboundary(cover, seed, amplitude, beta_maps=maps)
    return DeligneCoboundary(weak, lambda i, x: zetas[i](x), f"abelian-{seed}")


def random_deligne_coboundary(
    cover: FiniteCover, seed: int, amplitude: float = 0.1
) -> DeligneCoboundary:
    """
    β_i = exp(W_i x + b_i) の非可換な余境界

    変換後のコサイクルは B と ζ の貼り合わせを振幅の3次の誤差で満たします。
    """
    rng = create_rng(seed, 81)
    maps = {i: smooth_su2_map(rng, amplitude) for i in range(cover.n_patches)}
    zetas = {i: _smooth_one_form(rng, amplitude) for i in range(cover.n_patches)}
    weak = random_weak_coboundary(cover, seed, amplitude, beta_maps=maps)
    return DeligneCoboundary(weak, lambda i, x: zetas[i](x), f"nonabelian-{seed}")


def apply_deligne_coboundary(
    cocycle: DeligneCocycle,
    coboundary: DeligneCoboundary,
    lam: SMThreeCocycle,
    k: float,
    h: float,
) -> DeligneCocycle:
    """
    余境界によるコサイクルの変換

    (v', a') は弱コサイクルの変換、A'_i = π(β_i)⁻¹(A_iπ(β_i) + dπ(β_i))、
    B'_i と ζ'_ji は余境界の関係式を解いて得ます。余境界の関係式は厳密に
    成り立ち、変換後の B と ζ の貼り合わせは β が非可換なとき振幅の3次まで
    成り立ちます。
    """
    beta = coboundary.weak.beta
    alpha = coboundary.weak.alpha
    weak = apply_weak_coboundary(cocycle.weak, coboundary.weak, lam)

    def A(i: int, x: np.ndarray) -> np.ndarray:
        matrix = _group_matrix(lambda p: beta(i, p))
        g = matrix(x)
        dg = central_gradient(matrix, x, h)
        inverse = np.linalg.inv(g)
        moved = np.einsum("ab,mbc,cd->mad", inverse, _matrices(cocycle.A(i, x)), g)
        return ALGEBRA.from_matrix(moved + np.einsum("ab,mbc->mac", inverse, dg))

    def B(i: int, x: np.ndarray) -> np.ndarray:
        dzeta = central_gradient(lambda p: coboundary.zeta(i, p), x, h)
        zero = np.zeros((4, 4))
        # B'_i − B'_i の残差から B'_i を取り出す
        return -b_coboundary_residual(
            zero,
            cocycle.B(i, x),
            dzeta - dzeta.T,
            group_log(beta(i, x)),
            A(i, x),
            cocycle.A(i, x),
            k,
        )

    def zeta(j: int, i: int, x: np.ndarray) -> np.ndarray:
        terms = zeta_coboundary_terms(
            group_log(cocycle.weak.v(i, j, x)),
            group_log(weak.v(i, j, x)),
            group_log(beta(i, x)),
            group_log(beta(j, x)),
            cocycle.A(i, x),
            cocycle.A(j, x),
            A(i, x),
            A(j, x),
            k,
        )
        return (
            cocycle.zeta(j, i, x)
            + coboundary.zeta(j, x)
            - central_gradient(lambda p: alpha(i, j, p), x, h)
            - coboundary.zeta(i, x)
            + terms
        )

    return DeligneCocycle(weak, A, B, zeta, f"{cocycle.name}*{coboundary.name}")


def perturb_deligne_b(
    cocycle: DeligneCocycle, patch: int = 0, amount: float = 0.1
) -> DeligneCocycle:
    """1つのパッチ上で B を摂動（ζ は調整しない）"""
    bump = np.zeros((4, 4))
    bump[0, 1], bump[1, 0] = amount, -amount

    def B(i: int, x: np.ndarray) -> np.ndarray:
        value = cocycle.B(i, x)
        return value + bump if i == patch else value

    return DeligneCocycle(
        cocycle.weak, cocycle.A, B, cocycle.zeta, f"{cocycle.name}+perturbed-B"
    )


def pure_gauge_cocycle(
    group_map: Callable[[np.ndarray], SU2Element], h: float
) -> DeligneCocycle:
    """
    1パッチの被覆上の純ゲージ接続 A = π(v)⁻¹dπ(v)

    v ≡ 1、B = 0、ζ = 0 です。
    """
    matrix = lambda p: group_map(p).matrix()

    def A(i: int, x: np.ndarray) -> np.ndarray:
        g = matrix(x)
        dg = central_gradient(matrix, x, h)
        return ALGEBRA.from_matrix(np.einsum("ab,mbc->mac", np.linalg.inv(g), dg))

    trivial = trivial_deligne_cocycle()
    return DeligneCocycle(trivial.weak, A, trivial.B, trivial.zeta, "pure-gauge")

