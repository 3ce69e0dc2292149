#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
設定管理モジュール

検証カーネル全体で使用する設定値を一元管理します。
"""

import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

THREADS_ENV_VAR = "STRING2G_THREADS"


@dataclass
class SamplingConfig:
    """サンプリング関連の設定"""

    # 乱数シード（PCG64）
    seed: int = 0

    # サンプル数
    samples: int = 256

    # 合否判定の許容誤差
    tol: float = 1e-9

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if self.seed < 0:
            raise ValueError(f"シードは0以上である必要があります: {self.seed}")
        if self.samples < 1:
            raise ValueError(f"サンプル数は1以上である必要があります: {self.samples}")
        if not self.tol > 0:
            raise ValueError(f"許容誤差は正である必要があります: {self.tol}")


@dataclass
class CoverConfig:
    """S³上の3パッチ被覆の設定"""

    n_base_points: int = 1024
    overlap_threshold: float = -0.6
    max_points_per_overlap: int = 32

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if self.n_base_points < 1:
            raise ValueError(f"基点数は1以上である必要があります: {self.n_base_points}")
        if not -1.0 < self.overlap_threshold < 0.0:
            raise ValueError(
                f"重なり閾値は(-1, 0)の範囲である必要があります: {self.overlap_threshold}"
            )


@dataclass
class DifferentiationConfig:
    """微分手続き（μ₃の定数k）の設定"""

    k: float = 1.0


@dataclass
class FieldConfig:
    """微分形式・自己双対弦の数値検証の設定"""

    # 有限差分ステップ
    h: float = 1e-3
    h_ladder: Tuple[float, ...] = (4e-3, 2e-3, 1e-3)
    max_step: float = 0.1

    # 許容誤差 C·h² の定数
    error_constant: float = 1e5
    fd_error_constant: float = 1e2

    # サンプル領域
    r_min: float = 0.5
    r_max: float = 2.0
    sds_samples: int = 512
    string_exclusion: float = 0.5

    # B場の和の読み方（summed | fixed）
    b_reading: str = "summed"
    b_normalization: Optional[float] = None

    # 収束次数・ゲージ変換
    min_order: float = 1.9
    gauge_epsilons: Tuple[float, ...] = (1e-2, 1e-3, 1e-4)

    def __post_init__(self) -> None:
        """初期化後の検証"""
        if not self.h > 0:
            raise ValueError(f"ステップ幅は正である必要があります: {self.h}")
        if self.b_reading not in ("summed", "fixed"):
            raise ValueError(f"未知のB読み方です: {self.b_reading}")
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError(f"半径範囲が不正です: [{self.r_min}, {self.r_max}]")
        self.h_ladder = tuple(sorted(self.h_ladder, reverse=True))
        self.gauge_epsilons = tuple(sorted(self.gauge_epsilons, reverse=True))

    def resolved_b_normalization(self) -> float:
        """Bの前因子を取得（未指定なら読み方ごとの既定値）"""
        if self.b_normalization is not None:
            return self.b_normalization
        return 0.125 if self.b_reading == "summed" else 0.5


@dataclass
class StorageConfig:
    """ストレージ関連の設定"""

    # ディレクトリ設定
    result_dir: str = "result"
    logs_dir: str = "logs"

    # ファイル名設定
    report_filename_template: str = "{command}-{seed}.json"
    csv_filename_template: str = "{command}-{seed}-residuals.csv"
    log_filename_template: str = "string2g_{level}_{date}.log"

    def get_report_filename(self, command: str, seed: int) -> str:
        """レポートファイル名を生成"""
        return self.report_filename_template.format(
            command=command.replace(" ", "-"), seed=seed
        )

    def get_csv_filename(self, command: str, seed: int) -> str:
        """CSVファイル名を生成"""
        return self.csv_filename_template.format(
            command=command.replace(" ", "-"), seed=seed
        )

    def get_log_filename(self, level: str, date_str: str) -> str:
        """ログファイル名を生成"""
        return self.log_filename_template.format(level=level, date=date_str)


@dataclass
class ApplicationConfig:
    """アプリケーション全体の設定"""

    # 環境設定
    environment: str = "local"  # local, ci
    debug: bool = False
    threads: Optional[int] = None

    # 出力設定
    output: str = "-"
    format: str = "json"

    # 個別設定
    sampling: SamplingConfig = field(default_factory=lambda: SamplingConfig())
    cover: CoverConfig = field(default_factory=lambda: CoverConfig())
    differentiation: DifferentiationConfig = field(
        default_factory=lambda: DifferentiationConfig()
    )
    fields: FieldConfig = field(default_factory=lambda: FieldConfig())
    storage: StorageConfig = field(default_factory=lambda: StorageConfig())

    def __post_init__(self) -> None:
        """初期化後の処理"""
        if self.format not in ("json", "text"):
            raise ValueError(f"未知の出力形式です: {self.format}")
        if self.threads is None:
            self.threads = _threads_from_environment()
        if self.threads < 1:
            raise ValueError(f"スレッド数は1以上である必要があります: {self.threads}")
        if self.environment == "ci":
            self._configure_for_ci()

    def _configure_for_ci(self) -> None:
        """CI環境用の設定調整"""
        self.storage.result_dir = os.path.join("build", "result")
        self.storage.logs_dir = os.path.join("build", "logs")

    def echo(self) -> Dict[str, Any]:
        """レポートに埋め込む設定値（決定的な値のみ）"""
        return {
            "seed": self.sampling.seed,
            "samples": self.sampling.samples,
            "tol": self.sampling.tol,
            "h": self.fields.h,
            "k": self.differentiation.k,
            "format": self.format,
        }


def _threads_from_environment() -> int:
    """環境変数（.env含む）からスレッド数を取得"""
    load_dotenv()
    value = os.getenv(THREADS_ENV_VAR)
    if not value:
        return 1
    try:
        return max(1, int(value))
    except ValueError as e:
        raise ValueError(f"{THREADS_ENV_VAR}が整数ではありません: {value}") from e


# フラットなキー → (セクション, 属性)
_KEY_TABLE: Dict[str, Tuple[Optional[str], str]] = {
    "seed": ("sampling", "seed"),
    "samples": ("sampling", "samples"),
    "tol": ("sampling", "tol"),
    "k": ("differentiation", "k"),
    "h": ("fields", "h"),
    "h_ladder": ("fields", "h_ladder"),
    "error_constant": ("fields", "error_constant"),
    "fd_error_constant": ("fields", "fd_error_constant"),
    "r_min": ("fields", "r_min"),
    "r_max": ("fields", "r_max"),
    "sds_samples": ("fields", "sds_samples"),
    "string_exclusion": ("fields", "string_exclusion"),
    "b_reading": ("fields", "b_reading"),
    "b_normalization": ("fields", "b_normalization"),
    "min_order": ("fields", "min_order"),
    "n_base_points": ("cover", "n_base_points"),
    "overlap_threshold": ("cover", "overlap_threshold"),
    "max_points_per_overlap": ("cover", "max_points_per_overlap"),
    "result_dir": ("storage", "result_dir"),
    "logs_dir": ("storage", "logs_dir"),
    "threads": (None, "threads"),
    "output": (None, "output"),
    "format": (None, "format"),
    "debug": (None, "debug"),
}


def load_config_file(path: str) -> Dict[str, Any]:
    """
    フラットなYAMLキー・バリュー形式の設定ファイルを読み込み

    Args:
        path: 設定ファイルのパス

    Returns:
        Dict[str, Any]: キーと値の辞書

    Raises:
        ValueError: 形式が不正な場合
    """
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"設定ファイルはキー・バリュー形式である必要があります: {path}")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ValueError(f"設定ファイルはフラットである必要があります: {key}")
    return data


def get_config(
    environment: str = "local",
    config_file: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ApplicationConfig:
    """
    環境に応じた設定を取得

    設定ファイルの値を適用した後、オーバーライド（CLIフラグ）を適用します。

    Args:
        environment: 実行環境（"local" または "ci"）
        config_file: フラットなYAML設定ファイル
        overrides: Noneでない値のみ適用されるオーバーライド

    Returns:
        ApplicationConfig: 設定

    Raises:
        ValueError: 未知のキーまたは不正な値の場合
    """
    values: Dict[str, Any] = {}
    if config_file:
        values.update(load_config_file(config_file))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value

    unknown = sorted(set(values) - set(_KEY_TABLE))
    if unknown:
        raise ValueError(f"未知の設定キーです: {', '.join(unknown)}")

    sections: Dict[str, Dict[str, Any]] = {}
    top: Dict[str, Any] = {}
    for key, value in values.items():
        section, attribute = _KEY_TABLE[key]
        if isinstance(value, list):
            value = tuple(value)
        if section is None:
            top[attribute] = value
        else:
            sections.setdefault(section, {})[attribute] = value

    return ApplicationConfig(
        environment=environment,
        sampling=SamplingConfig(**sections.get("sampling", {})),
        cover=CoverConfig(**sections.get("cover", {})),
        differentiation=DifferentiationConfig(**sections.get("differentiation", {})),
        fields=FieldConfig(**sections.get("fields", {})),
        storage=StorageConfig(**sections.get("storage", {})),
        **top,
    )
