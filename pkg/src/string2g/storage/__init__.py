#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ストレージモジュール

レポートと残差の保存関連機能の公開インターフェース
"""

from .report_handler import (
    SCHEMA_VERSION,
    STDOUT,
    CSVResidualStorage,
    JSONReportStorage,
    ReportStorage,
    TextReportStorage,
    create_csv_storage,
    create_report_storage,
    render_json,
    render_text,
    to_jsonable,
)

__all__ = [
    # 抽象基底クラス
    "ReportStorage",
    # レポート
    "SCHEMA_VERSION",
    "STDOUT",
    "JSONReportStorage",
    "TextReportStorage",
    "create_report_storage",
    "render_json",
    "render_text",
    "to_jsonable",
    # CSV
    "CSVResidualStorage",
    "create_csv_storage",
]
