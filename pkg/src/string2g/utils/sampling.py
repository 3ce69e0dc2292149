#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
サンプリングユーティリティモジュール

乱数生成器、残差統計、並列評価、収束次数推定を提供します。
"""

from concurrent.futures import Executor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

# レポートに記録する乱数生成器の名前
RNG_NAME = "numpy.PCG64"


def create_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    シードから決定的な乱数生成器を作成

    Args:
        seed: 乱数シード
        stream: 用途ごとに系列を分けるための追加キー

    Returns:
        np.random.Generator: PCG64ベースの生成器
    """
    entropy = [int(seed), *[int(s) for s in stream]]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def residual_stats(values: Iterable[float], tol: float) -> Dict[str, Any]:
    """
    残差列の統計量を計算

    Args:
        values: 残差（非負）
        tol: 許容誤差

    Returns:
        Dict[str, Any]: max, mean, p99, count, tol, passed
    """
    array = np.asarray(list(values), dtype=float)
    if array.size == 0:
        return {
            "count": 0,
            "max": 0.0,
            "mean": 0.0,
            "p99": 0.0,
            "tol": float(tol),
            "passed": False,
        }

    maximum = float(np.max(array))
    return {
        "count": int(array.size),
        "max": maximum,
        "mean": float(np.mean(array)),
        "p99": float(np.percentile(array, 99)),
        "tol": float(tol),
        "passed": bool(np.all(np.isfinite(array)) and maximum < tol),
    }


def parallel_map(
    func: Callable[[T], R], items: Sequence[T], executor: Optional[Executor] = None
) -> List[R]:
    """
    順序を保った並列評価

    Args:
        func: 評価関数（純粋関数であること）
        items: 入力列
        executor: 実行器。Noneの場合は逐次評価

    Returns:
        List[R]: 入力順の結果
    """
    if executor is None or len(items) < 2:
        return [func(item) for item in items]
    return list(executor.map(func, items))


def estimate_order(steps: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """
    log-logの最小二乗で収束次数を推定

    Args:
        steps: ステップ幅（h, ε など）
        errors: 対応する誤差

    Returns:
        Optional[float]: 推定次数。誤差がゼロを含む場合はNone
    """
    if len(steps) != len(errors):
        raise ValueError("ステップ幅と誤差の長さが一致しません")
    if len(steps) < 2:
        raise ValueError("収束次数の推定には2点以上が必要です")

    h = np.asarray(steps, dtype=float)
    e = np.asarray(errors, dtype=float)
    if np.any(e <= 0.0) or np.any(h <= 0.0):
        return None

    slope, _ = np.polyfit(np.log(h), np.log(e), 1)
    return float(slope)


def build_check_report(
    checks: Dict[str, Dict[str, Any]], **extra: Any
) -> Dict[str, Any]:
    """
    チェック結果をまとめた部分レポートを作成

    Args:
        checks: チェック名 → 統計量（"passed"を含む）
        extra: 追加で記録する値

    Returns:
        Dict[str, Any]: checks, passed と追加値
    """
    report: Dict[str, Any] = {
        "checks": checks,
        "passed": bool(checks) and all(c["passed"] for c in checks.values()),
    }
    report.update(extra)
    return report
