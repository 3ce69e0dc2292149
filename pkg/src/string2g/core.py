#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
検証カーネルのコアクラス

各モジュールの検証器をコマンド名で呼び出し、レポートの組み立てと保存を
統合して提供します。
"""

import time
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Tuple

from ._version import __version__
from .cocycles import (
    ValidationSettings,
    create_sphere_cover,
    load_bundle,
    validate_bundle,
)
from .cohomology import check_double_complex, generate_coboundary_cocycle, is_sm_cocycle
from .config import ApplicationConfig
from .fields import SelfDualStringConfig, linfty_check, sds_verify
from .group import SU2Element
from .simplicial import cover_check, describe_cover, minimal_patch, patch_membership
from .storage import (
    SCHEMA_VERSION,
    CSVResidualStorage,
    ReportStorage,
    create_csv_storage,
    create_report_storage,
)
from .superdiff import superdiff_demo
from .twogroup import create_weak_two_group
from .utils import (
    RNG_NAME,
    build_check_report,
    create_rng,
    log_debug,
    log_error,
    log_info,
    residual_stats,
)

# コマンド名 → (メソッド名, 説明)
COMMAND_TABLE: Dict[str, Tuple[str, str]] = {
    "cover build": ("cover_build", "S³の3パッチ被覆の構成と重なりの標本"),
    "cover inspect": ("cover_inspect", "SU(2)の基本パッチの記述"),
    "cover check": ("cover_check", "単体的被覆の整合性"),
    "sm check": ("sm_check", "Segal–Mitchisonコサイクル条件と二重複体"),
    "twogroup check": ("twogroup_check", "弱ストリング2群の公理"),
    "cocycle validate": ("cocycle_validate", "Čech・Deligneコサイクルの検証"),
    "diff demo": ("diff_demo", "降下データからの微分"),
    "linfty check": ("linfty_check", "弦リー2代数と高次ゲージ場"),
    "sds verify": ("sds_verify", "自己双対弦の解"),
}

SM_TARGETS = ("cocycle", "double-complex")

# 指標残差（0か1）の許容誤差
_INDICATOR_TOL = 0.5


class VerificationKernel:
    """検証カーネルのメインクラス"""

    def __init__(
        self,
        config: Optional[ApplicationConfig] = None,
        storage: Optional[ReportStorage] = None,
        csv_storage: Optional[CSVResidualStorage] = None,
    ):
        """
        初期化

        Args:
            config: アプリケーション設定
            storage: レポートストレージ（注入可能）
            csv_storage: CSVストレージ（注入可能）
        """
        self.config = config or ApplicationConfig()
        self.storage = storage or create_report_storage(
            self.config.format, self.config.storage
        )
        self.csv_storage = csv_storage or create_csv_storage(self.config.storage)
        self._executor: Optional[Executor] = None

    @property
    def executor(self) -> Optional[Executor]:
        """並列評価の実行器（スレッド数1なら逐次評価）"""
        threads = self.config.threads or 1
        if threads > 1 and self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=threads)
        return self._executor

    @property
    def seed(self) -> int:
        """乱数シード"""
        return self.config.sampling.seed

    @property
    def samples(self) -> int:
        """サンプル数"""
        return self.config.sampling.samples

    @property
    def tol(self) -> float:
        """許容誤差"""
        return self.config.sampling.tol

    def run(self, command: str, **options: Any) -> Dict[str, Any]:
        """
        コマンドを実行してレポートを作成

        Args:
            command: COMMAND_TABLE のコマンド名
            options: コマンド固有の引数

        Returns:
            Dict[str, Any]: レポート

        Raises:
            ValueError: 未知のコマンド、または引数・入力が不正な場合
        """
        if command not in COMMAND_TABLE:
            raise ValueError(f"未知のコマンドです: {command}")
        method_name, description = COMMAND_TABLE[command]
        method: Callable[..., Dict[str, Any]] = getattr(self, method_name)

        log_info(f"{description}の検証を開始: {command}, seed={self.seed}")
        log_debug(f"引数: {options}, 設定: {self.config.echo()}")
        started = time.perf_counter()
        try:
            partial = method(**options)
        except Exception as e:
            log_error(f"検証エラー: {command}: {e}", e)
            raise
        elapsed = time.perf_counter() - started
        report = self._envelope(command, partial)
        log_info(
            f"検証が完了しました: {command}, passed={report['passed']}, "
            f"{elapsed:.2f}秒"
        )
        return report

    def save(self, report: Dict[str, Any], output: Optional[str] = None) -> str:
        """
        レポートを保存

        Args:
            report: レポート
            output: 出力先。Noneの場合は設定値

        Returns:
            str: 保存先
        """
        return self.storage.save(report, output or self.config.output)

    def _envelope(self, command: str, partial: Dict[str, Any]) -> Dict[str, Any]:
        report = dict(partial)
        report.update(
            {
                "command": command,
                "schema_version": SCHEMA_VERSION,
                "version": __version__,
                "rng": RNG_NAME,
                "seed": self.seed,
                "config": self.config.echo(),
                "checks": partial.get("checks", {}),
                "passed": bool(partial.get("passed", False)),
            }
        )
        return report

    def cover_build(self) -> Dict[str, Any]:
        """S³の3パッチ被覆を構成し、被覆性と各次数の重なりを確認"""
        cover = create_sphere_cover(self.config.cover, self.seed)
        coverage = [
            0.0 if cover.patches_containing(x) else 1.0 for x in cover.base_points
        ]
        overlaps: Dict[str, Dict[str, int]] = {}
        empty: List[float] = []
        for order in (1, 2, 3):
            samples = cover.overlaps(order)
            overlaps[str(order)] = samples.summary()
            empty.append(0.0 if len(samples) else 1.0)
        checks = {
            "coverage": residual_stats(coverage, _INDICATOR_TOL),
            "nonempty_overlaps": residual_stats(empty, _INDICATOR_TOL),
        }
        return build_check_report(checks, cover=cover.describe(), overlaps=overlaps)

    def cover_inspect(self) -> Dict[str, Any]:
        """基本パッチの記述と最小パッチの所属の確認"""
        rng = create_rng(self.seed, 3)
        residuals = []
        for _ in range(self.samples):
            g = SU2Element.random(rng)
            residuals.append(0.0 if patch_membership(g, minimal_patch(g)) else 1.0)
        checks = {"minimal_patch": residual_stats(residuals, _INDICATOR_TOL)}
        return build_check_report(checks, cover=describe_cover())

    def cover_check(self) -> Dict[str, Any]:
        """単体的被覆の整合性"""
        return cover_check(self.seed, self.samples, self.tol)

    def sm_check(self, target: str = "cocycle") -> Dict[str, Any]:
        """
        コサイクル条件または二重複体の検証

        Raises:
            ValueError: 未知の対象の場合
        """
        if target == "cocycle":
            cocycle = generate_coboundary_cocycle(self.seed)
            report = is_sm_cocycle(
                cocycle, self.samples, self.tol, self.seed, self.executor
            )
            report["cocycle"] = cocycle.name
        elif target == "double-complex":
            report = check_double_complex(
                self.seed, self.samples, self.tol, self.executor
            )
        else:
            raise ValueError(f"未知の検証対象です: {target}")
        report["target"] = target
        return report

    def twogroup_check(self, law: str = "pentagon") -> Dict[str, Any]:
        """余境界から生成したλによる2群の公理の検証"""
        two_group = create_weak_two_group(generate_coboundary_cocycle(self.seed))
        report = two_group.check(
            law, self.samples, self.tol, self.seed, self.executor
        )
        report["law"] = law
        return report

    def cocycle_validate(
        self, path: str, kind: Optional[str] = None
    ) -> Dict[str, Any]:
        """JSONバンドルのコサイクルの検証"""
        settings = ValidationSettings(
            tol=self.tol,
            h=self.config.fields.h,
            k=self.config.differentiation.k,
            fd_error_constant=self.config.fields.fd_error_constant,
            max_step=self.config.fields.max_step,
        )
        bundle = load_bundle(path)
        return validate_bundle(bundle, settings, kind, self.executor)

    def diff_demo(self) -> Dict[str, Any]:
        """降下データからの微分の検証"""
        return superdiff_demo(
            self.seed, self.samples, self.tol, self.config.differentiation.k
        )

    def linfty_check(self, algebra: str = "su2") -> Dict[str, Any]:
        """弦リー2代数とゲージ場の検証"""
        fields = self.config.fields
        return linfty_check(
            k=self.config.differentiation.k,
            tol=self.tol,
            h=fields.h,
            epsilons=fields.gauge_epsilons,
            min_order=fields.min_order,
            error_constant=fields.fd_error_constant,
            seed=self.seed,
            algebra_name=algebra,
            executor=self.executor,
        )

    def sds_verify(
        self, solution: int = 1, csv_path: Optional[str] = None
    ) -> Dict[str, Any]:
        """
        自己双対弦の解の検証

        Args:
            solution: 解の番号（1または2）
            csv_path: 点ごとの残差のCSV出力先（"auto"なら結果ディレクトリ）
        """
        sds_config = SelfDualStringConfig.from_field_config(
            self.config.fields, k=self.config.differentiation.k
        )
        rows: List[Dict[str, Any]] = []
        report = sds_verify(sds_config, solution, self.seed, self.executor, rows)
        if csv_path:
            path = (
                self.csv_storage.default_path("sds verify", self.seed)
                if csv_path == "auto"
                else csv_path
            )
            report["csv"] = self.csv_storage.save_rows(rows, path)
        return report

    def close(self) -> None:
        """リソースをクリーンアップ"""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "VerificationKernel":
        """コンテキストマネージャー入口"""
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """コンテキストマネージャー出口"""
        self.close()


def create_verification_kernel(
    environment: str = "local", config: Optional[ApplicationConfig] = None
) -> VerificationKernel:
    """
    検証カーネルのファクトリ関数

    Args:
        environment: 実行環境（"local" または "ci"）
        config: アプリケーション設定

    Returns:
        VerificationKernel: 検証カーネルインスタンス
    """
    if config is None:
        from .config import get_config

        config = get_config(environment)

    return VerificationKernel(config)
