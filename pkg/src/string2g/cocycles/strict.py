#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
厳密2群のČechコサイクルモジュール

交差加群 (H → G, ▷) の抽象化と、厳密2群値の2コサイクル・2余境界の
生成と検証を提供します。
"""

from abc import ABC, abstractmethod
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..cohomology import CircleValue
from ..group import SU2Element
from ..utils import (
    build_check_report,
    create_rng,
    log_info,
    parallel_map,
    residual_stats,
)
from .finite_cover import FiniteCover, smooth_scalar_map, smooth_su2_map
from .ordinary import coboundary_ordinary_cocycle


class CrossedModule(ABC):
    """交差加群 ∂: H → G と作用 ▷: G × H → H の抽象基底クラス"""

    name = "crossed-module"

    @abstractmethod
    def boundary(self, h: Any) -> SU2Element:
        """∂(h)"""
        pass

    @abstractmethod
    def act(self, g: SU2Element, h: Any) -> Any:
        """g ▷ h"""
        pass

    @abstractmethod
    def multiply(self, h1: Any, h2: Any) -> Any:
        """Hの積"""
        pass

    @abstractmethod
    def inverse(self, h: Any) -> Any:
        """Hの逆元"""
        pass

    @abstractmethod
    def identity(self) -> Any:
        """Hの単位元"""
        pass

    @abstractmethod
    def distance(self, h1: Any, h2: Any) -> float:
        """Hの元の距離"""
        pass


class AdjointCrossedModule(CrossedModule):
    """H = G = SU(2)、∂ = id、▷ は共役作用"""

    name = "adjoint"

    def boundary(self, h: SU2Element) -> SU2Element:
        return h

    def act(self, g: SU2Element, h: SU2Element) -> SU2Element:
        return g * h * g.inverse()

    def multiply(self, h1: SU2Element, h2: SU2Element) -> SU2Element:
        return h1 * h2

    def inverse(self, h: SU2Element) -> SU2Element:
        return h.inverse()

    def identity(self) -> SU2Element:
        return SU2Element.identity()

    def distance(self, h1: SU2Element, h2: SU2Element) -> float:
        return h1.distance(h2)


class CentralCircleCrossedModule(CrossedModule):
    """H = U(1)（加法的）、∂ と作用は自明"""

    name = "central-u1"

    def boundary(self, h: CircleValue) -> SU2Element:
        return SU2Element.identity()

    def act(self, g: SU2Element, h: CircleValue) -> CircleValue:
        return h

    def multiply(self, h1: CircleValue, h2: CircleValue) -> CircleValue:
        return h1 + h2

    def inverse(self, h: CircleValue) -> CircleValue:
        return -h

    def identity(self) -> CircleValue:
        return CircleValue()

    def distance(self, h1: CircleValue, h2: CircleValue) -> float:
        return h1.distance(h2)


_MODULES: Dict[str, Callable[[], CrossedModule]] = {
    "adjoint": AdjointCrossedModule,
    "central-u1": CentralCircleCrossedModule,
}


def create_crossed_module(name: str) -> CrossedModule:
    """
    名前から交差加群を作成

    Raises:
        ValueError: 未知の名前の場合
    """
    try:
        return _MODULES[name]()
    except KeyError as e:
        raise ValueError(f"未知の交差加群です: {name}") from e


@dataclass(frozen=True)
class StrictCocycle:
    """厳密2群値の2コサイクル (g_ij, h_ijk)"""

    module: CrossedModule
    g: Callable[[int, int, np.ndarray], SU2Element]
    h: Callable[[int, int, int, np.ndarray], Any]
    name: str = "strict"


@dataclass(frozen=True)
class StrictCoboundary:
    """2余境界 (γ_i, χ_ij)"""

    gamma: Callable[[int, np.ndarray], SU2Element]
    chi: Callable[[int, int, np.ndarray], Any]
    name: str = "strict-coboundary"


def trivial_strict_cocycle(module: CrossedModule) -> StrictCocycle:
    """g ≡ 1, h ≡ 1_H"""
    unit_g = SU2Element.identity()
    unit_h = module.identity()
    return StrictCocycle(
        module, lambda i, j, x: unit_g, lambda i, j, k, x: unit_h, "trivial"
    )


def adjoint_solved_cocycle(
    cover: FiniteCover, seed: int, amplitude: float = 1.0
) -> StrictCocycle:
    """
    随伴交差加群で h を解いて作るコサイクル

    任意の g_ij に対して h_ijk = g_ik g_jk⁻¹ g_ij⁻¹ とすれば両方の関係式が成り立ちます。
    """
    module = AdjointCrossedModule()
    rng = create_rng(seed, 62)
    maps = {
        (i, j): smooth_su2_map(rng, amplitude)
        for i in range(cover.n_patches)
        for j in range(cover.n_patches)
    }

    def g(i: int, j: int, x: np.ndarray) -> SU2Element:
        return maps[(i, j)](x)

    def h(i: int, j: int, k: int, x: np.ndarray) -> SU2Element:
        return g(i, k, x) * g(j, k, x).inverse() * g(i, j, x).inverse()

    return StrictCocycle(module, g, h, f"adjoint-solved-{seed}")


def central_coboundary_cocycle(
    cover: FiniteCover, seed: int, amplitude: float = 1.0
) -> StrictCocycle:
    """
    中心U(1)交差加群のコサイクル

    g は通常の余境界 γ_i γ_j⁻¹、h は h_ijk = c_jk − c_ik + c_ij です。
    """
    module = CentralCircleCrossedModule()
    base = coboundary_ordinary_cocycle(cover, seed, "su2", amplitude)
    rng = create_rng(seed, 63)
    scalars = {
        (i, j): smooth_scalar_map(rng, amplitude)
        for i in range(cover.n_patches)
        for j in range(cover.n_patches)
    }

    def h(i: int, j: int, k: int, x: np.ndarray) -> CircleValue:
        return CircleValue(scalars[(j, k)](x) - scalars[(i, k)](x) + scalars[(i, j)](x))

    return StrictCocycle(module, base.g, h, f"central-coboundary-{seed}")


def perturb_strict_h(
    cocycle: StrictCocycle,
    triple: tuple = (0, 1, 2),
    amount: float = 0.1,
) -> StrictCocycle:
    """1つの三重の重なり上で h を摂動"""
    module = cocycle.module
    if isinstance(module, CentralCircleCrossedModule):
        bump: Any = CircleValue(amount)
    else:
        bump = SU2Element.exp((amount, 0.0, 0.0))

    def h(i: int, j: int, k: int, x: np.ndarray) -> Any:
        value = cocycle.h(i, j, k, x)
        return module.multiply(value, bump) if (i, j, k) == tuple(triple) else value

    return StrictCocycle(module, cocycle.g, h, f"{cocycle.name}+perturbed")


def random_strict_coboundary(
    cover: FiniteCover, module: CrossedModule, seed: int, amplitude: float = 1.0
) -> StrictCoboundary:
    """ランダムな (γ, χ)"""
    rng = create_rng(seed, 64)
    gammas = [smooth_su2_map(rng, amplitude) for _ in range(cover.n_patches)]
    pairs = [(i, j) for i in range(cover.n_patches) for j in range(cover.n_patches)]
    if isinstance(module, CentralCircleCrossedModule):
        scalars = {pair: smooth_scalar_map(rng, amplitude) for pair in pairs}

        def chi(i: int, j: int, x: np.ndarray) -> Any:
            return CircleValue(scalars[(i, j)](x))

    else:
        maps = {pair: smooth_su2_map(rng, amplitude) for pair in pairs}

        def chi(i: int, j: int, x: np.ndarray) -> Any:
            return maps[(i, j)](x)

    return StrictCoboundary(lambda i, x: gammas[i](x), chi, f"random-{seed}")


def identity_strict_coboundary(module: CrossedModule) -> StrictCoboundary:
    """γ ≡ 1, χ ≡ 1_H"""
    unit_g = SU2Element.identity()
    unit_h = module.identity()
    return StrictCoboundary(lambda i, x: unit_g, lambda i, j, x: unit_h, "identity")


def apply_strict_coboundary(
    cocycle: StrictCocycle, coboundary: StrictCoboundary
) -> StrictCocycle:
    """
    余境界によるコサイクルの変換

    g'_ij = ∂(χ_ij)⁻¹ γ_i g_ij γ_j⁻¹、
    h'_ijk = χ_ik⁻¹ (γ_i ▷ h_ijk) χ_ij (g'_ij ▷ χ_jk)
    """
    module = cocycle.module
    gamma, chi = coboundary.gamma, coboundary.chi

    def g(i: int, j: int, x: np.ndarray) -> SU2Element:
        twisted = gamma(i, x) * cocycle.g(i, j, x) * gamma(j, x).inverse()
        return module.boundary(chi(i, j, x)).inverse() * twisted

    def h(i: int, j: int, k: int, x: np.ndarray) -> Any:
        result = module.inverse(chi(i, k, x))
        result = module.multiply(result, module.act(gamma(i, x), cocycle.h(i, j, k, x)))
        result = module.multiply(result, chi(i, j, x))
        return module.multiply(result, module.act(g(i, j, x), chi(j, k, x)))

    return StrictCocycle(module, g, h, f"{cocycle.name}*{coboundary.name}")


def validate_strict(
    cocycle: StrictCocycle,
    cover: FiniteCover,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    厳密2コサイクルの関係式の検証

    ∂(h_ijk) g_ij g_jk = g_ik（三重の重なり）と
    h_ikl h_ijk = h_ijl (g_ij ▷ h_jkl)（四重の重なり）

    Args:
        cocycle: 検証するコサイクル
        cover: 有限被覆
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート
    """
    module = cocycle.module
    triples = cover.overlaps(3)
    quadruples = cover.overlaps(4)

    def boundary_residual(item: Any) -> float:
        (i, j, k), x = item
        lhs = (
            module.boundary(cocycle.h(i, j, k, x))
            * cocycle.g(i, j, x)
            * cocycle.g(j, k, x)
        )
        return lhs.distance(cocycle.g(i, k, x))

    def h_residual(item: Any) -> float:
        (i, j, k, l), x = item
        lhs = module.multiply(cocycle.h(i, k, l, x), cocycle.h(i, j, k, x))
        rhs = module.multiply(
            cocycle.h(i, j, l, x), module.act(cocycle.g(i, j, x), cocycle.h(j, k, l, x))
        )
        return module.distance(lhs, rhs)

    checks = {
        "boundary_relation": residual_stats(
            parallel_map(boundary_residual, list(triples.items), executor), tol
        ),
        "h_relation": residual_stats(
            parallel_map(h_residual, list(quadruples.items), executor), tol
        ),
    }
    log_info(f"厳密2コサイクルを検証しました: {cocycle.name} ({module.name})")
    return build_check_report(
        checks,
        overlaps={"triple": triples.summary(), "quadruple": quadruples.summary()},
    )


def validate_strict_coboundary(
    cocycle: StrictCocycle,
    transformed: StrictCocycle,
    coboundary: StrictCoboundary,
    cover: FiniteCover,
    tol: float,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    2余境界の関係式の検証

    γ_i g_ij = ∂(χ_ij) g'_ij γ_j と
    χ_ik h'_ijk = (γ_i ▷ h_ijk) χ_ij (g'_ij ▷ χ_jk)

    Args:
        cocycle: 元のコサイクル (g, h)
        transformed: 変換後のコサイクル (g', h')
        coboundary: (γ, χ)
        cover: 有限被覆
        tol: 許容誤差
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート
    """
    module = cocycle.module
    gamma, chi = coboundary.gamma, coboundary.chi
    pairs = cover.overlaps(2)
    triples = cover.overlaps(3)

    def g_residual(item: Any) -> float:
        (i, j), x = item
        lhs = gamma(i, x) * cocycle.g(i, j, x)
        rhs = module.boundary(chi(i, j, x)) * transformed.g(i, j, x) * gamma(j, x)
        return lhs.distance(rhs)

    def h_residual(item: Any) -> float:
        (i, j, k), x = item
        lhs = module.multiply(chi(i, k, x), transformed.h(i, j, k, x))
        rhs = module.multiply(
            module.act(gamma(i, x), cocycle.h(i, j, k, x)), chi(i, j, x)
        )
        rhs = module.multiply(rhs, module.act(transformed.g(i, j, x), chi(j, k, x)))
        return module.distance(lhs, rhs)

    checks = {
        "g_relation": residual_stats(
            parallel_map(g_residual, list(pairs.items), executor), tol
        ),
        "h_relation": residual_stats(
            parallel_map(h_residual, list(triples.items), executor), tol
        ),
    }
    log_info(f"厳密2余境界を検証しました: {coboundary.name}")
    return build_check_report(
        checks, overlaps={"double": pairs.summary(), "triple": triples.summary()}
    )
