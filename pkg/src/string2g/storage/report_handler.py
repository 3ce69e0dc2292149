#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
レポートストレージモジュール

検証レポートのJSON・テキスト出力と、点ごとの残差のCSV出力を提供します。
"""

import csv
import json
import math
import os
import sys
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config import StorageConfig
from ..utils import log_error, log_info

SCHEMA_VERSION = 1
STDOUT = "-"


def to_jsonable(value: Any) -> Any:
    """
    レポートの値をJSON互換に変換

    numpy の値はPythonの値に、有理数は文字列に、非有限の浮動小数点数は
    "inf", "-inf", "nan" の文字列にします。
    """
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if math.isfinite(number):
            return number
        return "nan" if math.isnan(number) else ("inf" if number > 0 else "-inf")
    return value


def render_json(report: Dict[str, Any]) -> str:
    """キーを整列したJSON文字列（同じレポートなら同じバイト列）"""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.3e}"
    return str(value)


def render_text(report: Dict[str, Any]) -> str:
    """
    人が読むためのテキスト表現

    Args:
        report: レポート

    Returns:
        str: チェックごとに1行の要約
    """
    status = "PASS" if report.get("passed") else "FAIL"
    lines = [
        f"{report.get('command', '?')}: {status}",
        f"  version={report.get('version')} seed={report.get('seed')} "
        f"rng={report.get('rng')}",
    ]
    for name, stats in sorted(report.get("checks", {}).items()):
        mark = "ok " if stats.get("passed") else "NG "
        fields = " ".join(
            f"{key}={_format_value(stats[key])}"
            for key in ("max", "mean", "p99", "count", "tol", "order")
            if key in stats and stats[key] is not None
        )
        lines.append(f"  [{mark}] {name}: {fields}")
    return "\n".join(lines) + "\n"


class ReportStorage(ABC):
    """レポート保存の抽象基底クラス"""

    def __init__(self, config: Optional[StorageConfig] = None):
        """
        初期化

        Args:
            config: ストレージ設定。Noneの場合はデフォルト設定を使用
        """
        self.config = config or StorageConfig()

    @abstractmethod
    def render(self, report: Dict[str, Any]) -> str:
        """レポートを文字列に変換"""
        pass

    def resolve_path(self, report: Dict[str, Any], output: str) -> str:
        """
        出力先を決定

        ディレクトリが指定された場合はファイル名テンプレートで名前を付けます。
        """
        if output == STDOUT:
            return output
        if os.path.isdir(output) or output.endswith(os.sep):
            filename = self.config.get_report_filename(
                str(report.get("command", "report")), int(report.get("seed", 0))
            )
            return os.path.join(output, filename)
        return output

    def save(self, report: Dict[str, Any], output: str = STDOUT) -> str:
        """
        レポートを保存

        Args:
            report: レポート
            output: ファイルパス、ディレクトリ、または標準出力を表す "-"

        Returns:
            str: 保存先のパス（標準出力なら "-"）

        Raises:
            Exception: 保存に失敗した場合
        """
        text = self.render(report)
        path = self.resolve_path(report, output)
        if path == STDOUT:
            sys.stdout.write(text)
            sys.stdout.flush()
            return path
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            log_info(f"レポートを保存しました: {path}")
            return path

        except Exception as e:
            error_msg = f"レポート保存エラー: {e}"
            log_error(error_msg, e)
            raise Exception(error_msg) from e


class JSONReportStorage(ReportStorage):
    """JSON形式のレポート保存クラス"""

    def render(self, report: Dict[str, Any]) -> str:
        """JSON文字列"""
        return render_json(report)


class TextReportStorage(ReportStorage):
    """テキスト形式のレポート保存クラス"""

    def render(self, report: Dict[str, Any]) -> str:
        """テキスト表現"""
        return render_text(report)


class CSVResidualStorage:
    """点ごとの残差のCSV保存クラス"""

    def __init__(self, config: Optional[StorageConfig] = None):
        """
        初期化

        Args:
            config: ストレージ設定
        """
        self.config = config or StorageConfig()

    def default_path(self, command: str, seed: int) -> str:
        """結果ディレクトリ内の既定のファイルパス"""
        return os.path.join(
            self.config.result_dir, self.config.get_csv_filename(command, seed)
        )

    def save_rows(
        self,
        rows: Sequence[Dict[str, Any]],
        path: str,
        fieldnames: Optional[List[str]] = None,
    ) -> str:
        """
        行をCSVファイルに保存

        Args:
            rows: 行（列名 → 値）
            path: ファイルパス
            fieldnames: 列名。Noneの場合は最初の行のキー

        Returns:
            str: 保存されたファイルのパス

        Raises:
            Exception: 保存に失敗した場合
        """
        try:
            columns = fieldnames or (list(rows[0]) if rows else [])
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", newline="", encoding="utf-8") as csvfile:
                writer = csv.DictWriter(csvfile, fieldnames=columns)
                writer.writeheader()
                for row in rows:
                    writer.writerow(to_jsonable(row))

            log_info(f"残差をCSVファイルに保存しました: {path} ({len(rows)}行)")
            return path

        except Exception as e:
            error_msg = f"CSV保存エラー: {e}"
            log_error(error_msg, e)
            raise Exception(error_msg) from e

    def read(self, path: str) -> List[Dict[str, str]]:
        """
        CSVファイルを読み込み

        Raises:
            Exception: 読み込みに失敗した場合
        """
        try:
            with open(path, "r", encoding="utf-8") as csvfile:
                return list(csv.DictReader(csvfile))

        except Exception as e:
            error_msg = f"CSV読み込みエラー: {e}"
            log_error(error_msg, e)
            raise Exception(error_msg) from e


def create_report_storage(
    output_format: str = "json", config: Optional[StorageConfig] = None
) -> ReportStorage:
    """
    レポートストレージのファクトリ関数

    Args:
        output_format: "json" または "text"
        config: ストレージ設定

    Returns:
        ReportStorage: ストレージインスタンス

    Raises:
        ValueError: 未知の形式の場合
    """
    if output_format == "json":
        return JSONReportStorage(config)
    if output_format == "text":
        return TextReportStorage(config)
    raise ValueError(f"未知の出力形式です: {output_format}")


def create_csv_storage(config: Optional[StorageConfig] = None) -> CSVResidualStorage:
    """
    CSVストレージのファクトリ関数

    Args:
        config: ストレージ設定

    Returns:
        CSVResidualStorage: CSVストレージインスタンス
    """
    return CSVResidualStorage(config)
