#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
コサイクルバンドルのレジストリモジュール

JSONバンドル（種類・生成器・シード・被覆・λ）から登録済みの生成器で
コサイクルを組み立て、種類に応じた検証を実行します。

バンドルの例::

    {"kind": "weak", "generator": "forward", "seed": 3,
     "cover": {"type": "sphere", "n_base_points": 256},
     "lambda": {"seed": 1, "nerve_part": true},
     "coboundary": {"seed": 4}}
"""

import json
from concurrent.futures import Executor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

from ..cohomology import SMThreeCocycle, generate_coboundary_cocycle
from ..config import CoverConfig
from ..utils import log_error, log_info
from .deligne import (
    abelian_deligne_coboundary,
    apply_deligne_coboundary,
    perturb_deligne_b,
    random_deligne_coboundary,
    trivial_deligne_cocycle,
    validate_deligne,
    validate_deligne_coboundary,
)
from .finite_cover import FiniteCover, create_single_patch_cover, create_sphere_cover
from .ordinary import (
    coboundary_ordinary_cocycle,
    random_ordinary_cocycle,
    trivial_ordinary_cocycle,
    validate_ordinary,
)
from .strict import (
    adjoint_solved_cocycle,
    apply_strict_coboundary,
    central_coboundary_cocycle,
    create_crossed_module,
    perturb_strict_h,
    random_strict_coboundary,
    trivial_strict_cocycle,
    validate_strict,
    validate_strict_coboundary,
)
from .weak import (
    apply_weak_coboundary,
    perturb_weak_a,
    random_weak_coboundary,
    trivial_weak_cocycle,
    validate_weak,
    validate_weak_coboundary,
)

COCYCLE_KINDS: Tuple[str, ...] = ("ordinary", "strict", "weak", "deligne")

GENERATORS: Dict[str, Tuple[str, ...]] = {
    "ordinary": ("trivial", "coboundary", "random"),
    "strict": ("trivial", "adjoint_solved", "central_coboundary", "perturbed"),
    "weak": ("trivial", "forward", "perturbed"),
    "deligne": ("trivial", "forward", "forward_nonabelian", "perturbed_b"),
}

_COVER_KEYS = {"type", "n_base_points", "overlap_threshold", "max_points_per_overlap"}
_BUNDLE_KEYS = {"kind", "generator", "seed", "params", "cover", "lambda", "coboundary"}


@dataclass(frozen=True)
class ValidationSettings:
    """検証の許容誤差と差分の設定"""

    tol: float = 1e-9
    h: float = 1e-3
    k: float = 1.0
    fd_error_constant: float = 1e2
    max_step: float = 0.1

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if self.tol <= 0.0:
            raise ValueError(f"許容誤差は正である必要があります: {self.tol}")


def load_bundle(path: Union[str, Path]) -> Dict[str, Any]:
    """
    JSONバンドルの読み込み

    Args:
        path: ファイルパス

    Returns:
        Dict[str, Any]: バンドル

    Raises:
        ValueError: 読み込みまたはJSONの解析に失敗した場合
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            bundle = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        error_msg = f"コサイクルバンドルの読み込みに失敗しました: {path}"
        log_error(error_msg, e)
        raise ValueError(f"{error_msg}: {e}") from e
    if not isinstance(bundle, dict):
        raise ValueError("コサイクルバンドルはJSONオブジェクトである必要があります")
    return bundle


def check_bundle(bundle: Dict[str, Any], kind: Optional[str] = None) -> None:
    """
    バンドルの構造の検証

    Raises:
        ValueError: 種類・生成器・キーが不正な場合
    """
    unknown = set(bundle) - _BUNDLE_KEYS
    if unknown:
        raise ValueError(f"未知のバンドルキーです: {sorted(unknown)}")
    actual = bundle.get("kind")
    if actual not in COCYCLE_KINDS:
        raise ValueError(f"未知のコサイクルの種類です: {actual}")
    if kind is not None and actual != kind:
        raise ValueError(f"バンドルの種類が一致しません: {actual} != {kind}")
    generator = bundle.get("generator", "trivial")
    if generator not in GENERATORS[actual]:
        raise ValueError(f"{actual}の未知の生成器です: {generator}")
    unknown_cover = set(bundle.get("cover", {})) - _COVER_KEYS
    if unknown_cover:
        raise ValueError(f"未知の被覆キーです: {sorted(unknown_cover)}")


def build_cover(description: Dict[str, Any], seed: int) -> FiniteCover:
    """被覆の記述から有限被覆を作成"""
    defaults = CoverConfig()
    max_points = int(
        description.get(
            "max_points_per_overlap", defaults.max_points_per_overlap
        )
    )
    n_points = int(description.get("n_base_points", defaults.n_base_points))
    if description.get("type", "sphere") == "single":
        return create_single_patch_cover(n_points, seed, max_points)
    config = CoverConfig(
        n_base_points=n_points,
        overlap_threshold=float(
            description.get("overlap_threshold", defaults.overlap_threshold)
        ),
        max_points_per_overlap=max_points,
    )
    return create_sphere_cover(config, seed)


def build_lambda(
    description: Dict[str, Any], nerve_part: bool = True
) -> SMThreeCocycle:
    """λの記述から3コサイクルを生成"""
    return generate_coboundary_cocycle(
        int(description.get("seed", 0)),
        nerve_part=bool(description.get("nerve_part", nerve_part)),
        amplitude=float(description.get("amplitude", 1.0)),
    )


def _prefixed(report: Dict[str, Any], prefix: str) -> Dict[str, Dict[str, Any]]:
    return {f"{prefix}{name}": check for name, check in report["checks"].items()}


def _merge(*reports: Dict[str, Any], prefixes: Tuple[str, ...]) -> Dict[str, Any]:
    checks: Dict[str, Dict[str, Any]] = {}
    overlaps: Dict[str, Any] = {}
    for report, prefix in zip(reports, prefixes):
        checks.update(_prefixed(report, prefix))
        overlaps[prefix.rstrip(".") or "cocycle"] = report.get("overlaps", {})
    return {
        "checks": checks,
        "passed": bool(checks) and all(c["passed"] for c in checks.values()),
        "overlaps": overlaps,
    }


def _ordinary(
    bundle: Dict[str, Any], cover: FiniteCover, s: ValidationSettings, ex: Any
) -> Dict[str, Any]:
    params = bundle.get("params", {})
    group = params.get("group", "su2")
    amplitude = float(params.get("amplitude", 1.0))
    seed = int(bundle.get("seed", 0))
    factories: Dict[str, Callable[[], Any]] = {
        "trivial": lambda: trivial_ordinary_cocycle(group),
        "coboundary": lambda: coboundary_ordinary_cocycle(
            cover, seed, group, amplitude
        ),
        "random": lambda: random_ordinary_cocycle(cover, seed, group, amplitude),
    }
    cocycle = factories[bundle.get("generator", "trivial")]()
    return validate_ordinary(cocycle, cover, s.tol, ex)


def _strict(
    bundle: Dict[str, Any], cover: FiniteCover, s: ValidationSettings, ex: Any
) -> Dict[str, Any]:
    params = bundle.get("params", {})
    amplitude = float(params.get("amplitude", 1.0))
    seed = int(bundle.get("seed", 0))
    generator = bundle.get("generator", "trivial")
    if generator == "trivial":
        module = create_crossed_module(params.get("module", "adjoint"))
        cocycle = trivial_strict_cocycle(module)
    elif generator == "adjoint_solved":
        cocycle = adjoint_solved_cocycle(cover, seed, amplitude)
    elif generator == "central_coboundary":
        cocycle = central_coboundary_cocycle(cover, seed, amplitude)
    else:
        cocycle = perturb_strict_h(central_coboundary_cocycle(cover, seed, amplitude))
    report = validate_strict(cocycle, cover, s.tol, ex)
    if "coboundary" not in bundle:
        return report
    coboundary = random_strict_coboundary(
        cover, cocycle.module, int(bundle["coboundary"].get("seed", seed)), amplitude
    )
    transformed = apply_strict_coboundary(cocycle, coboundary)
    return _merge(
        report,
        validate_strict(transformed, cover, s.tol, ex),
        validate_strict_coboundary(cocycle, transformed, coboundary, cover, s.tol, ex),
        prefixes=("", "transformed.", "coboundary."),
    )


def _weak(
    bundle: Dict[str, Any], cover: FiniteCover, s: ValidationSettings, ex: Any
) -> Dict[str, Any]:
    seed = int(bundle.get("seed", 0))
    amplitude = float(bundle.get("params", {}).get("amplitude", 1.0))
    lam = build_lambda(bundle.get("lambda", {"seed": seed}))
    generator = bundle.get("generator", "trivial")
    base = trivial_weak_cocycle()
    if generator == "trivial":
        return validate_weak(base, lam, cover, s.tol, ex)
    coboundary_seed = int(bundle.get("coboundary", {}).get("seed", seed))
    coboundary = random_weak_coboundary(cover, coboundary_seed, amplitude)
    transformed = apply_weak_coboundary(base, coboundary, lam)
    if generator == "perturbed":
        return validate_weak(perturb_weak_a(transformed), lam, cover, s.tol, ex)
    return _merge(
        validate_weak(transformed, lam, cover, s.tol, ex),
        validate_weak_coboundary(base, transformed, coboundary, lam, cover, s.tol, ex),
        prefixes=("", "coboundary."),
    )


def _deligne(
    bundle: Dict[str, Any], cover: FiniteCover, s: ValidationSettings, ex: Any
) -> Dict[str, Any]:
    seed = int(bundle.get("seed", 0))
    amplitude = float(bundle.get("params", {}).get("amplitude", 0.1))
    # 変換後のζの関係式は λ⁰³ ≡ 0 を要する
    lam = build_lambda(bundle.get("lambda", {"seed": seed}), nerve_part=False)
    generator = bundle.get("generator", "trivial")
    options = dict(
        h=s.h,
        k=s.k,
        fd_error_constant=s.fd_error_constant,
        max_step=s.max_step,
        executor=ex,
    )
    base = trivial_deligne_cocycle()
    if generator == "trivial":
        return validate_deligne(base, lam, cover, s.tol, **options)
    coboundary_seed = int(bundle.get("coboundary", {}).get("seed", seed))
    if generator == "forward_nonabelian":
        coboundary = random_deligne_coboundary(cover, coboundary_seed, amplitude)
        linearized = dict(options, linearization_amplitude=amplitude)
    else:
        coboundary = abelian_deligne_coboundary(cover, coboundary_seed, amplitude)
        linearized = options
    transformed = apply_deligne_coboundary(base, coboundary, lam, s.k, s.h)
    if generator == "perturbed_b":
        return validate_deligne(
            perturb_deligne_b(transformed), lam, cover, s.tol, **options
        )
    return _merge(
        validate_deligne(transformed, lam, cover, s.tol, **linearized),
        validate_deligne_coboundary(
            base, transformed, coboundary, lam, cover, s.tol, **options
        ),
        prefixes=("", "coboundary."),
    )


_VALIDATORS = {
    "ordinary": _ordinary,
    "strict": _strict,
    "weak": _weak,
    "deligne": _deligne,
}


def validate_bundle(
    bundle: Dict[str, Any],
    settings: ValidationSettings,
    kind: Optional[str] = None,
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    バンドルからコサイクルを組み立てて検証

    Args:
        bundle: JSONバンドル
        settings: 検証の設定
        kind: 期待する種類（Noneなら確認しない）
        executor: 並列評価の実行器

    Returns:
        Dict[str, Any]: 部分レポート（kind, generator を含む）

    Raises:
        ValueError: バンドルが不正な場合
    """
    check_bundle(bundle, kind)
    actual = bundle["kind"]
    seed = int(bundle.get("seed", 0))
    cover = build_cover(bundle.get("cover", {}), seed)
    report = _VALIDATORS[actual](bundle, cover, settings, executor)
    report["kind"] = actual
    report["generator"] = bundle.get("generator", "trivial")
    report["cover"] = cover.describe()
    log_info(
        f"コサイクルバンドルを検証しました: kind={actual}, "
        f"generator={report['generator']}, passed={report['passed']}"
    )
    return report
