#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ストリング2群検証カーネル

SU(2)上の弱ストリング2群、そのコサイクル・微分・高次ゲージ場を
乱数サンプリングと数値残差で検証するためのライブラリ
"""

from ._version import __version__
from .cocycles import COCYCLE_KINDS, ValidationSettings, load_bundle, validate_bundle
from .cohomology import (
    SMThreeCocycle,
    check_double_complex,
    generate_coboundary_cocycle,
    is_sm_cocycle,
)
from .config import (
    ApplicationConfig,
    CoverConfig,
    DifferentiationConfig,
    FieldConfig,
    SamplingConfig,
    StorageConfig,
    get_config,
)
from .core import COMMAND_TABLE, VerificationKernel, create_verification_kernel
from .fields import linfty_check, sds_verify
from .group import SU2Element, create_lie_algebra
from .simplicial import CoverPoint, cover_check
from .storage import (
    CSVResidualStorage,
    ReportStorage,
    create_csv_storage,
    create_report_storage,
)
from .superdiff import differentiate, superdiff_demo
from .twogroup import TWO_GROUP_LAWS, WeakStringTwoGroup, create_weak_two_group
from .utils import log_error, log_info, setup_console_logging, setup_logging

__author__ = "String2G Project"

__all__ = [
    # バージョン情報
    "__version__",
    "__author__",
    # 設定関連
    "ApplicationConfig",
    "SamplingConfig",
    "CoverConfig",
    "DifferentiationConfig",
    "FieldConfig",
    "StorageConfig",
    "get_config",
    # カーネル
    "COMMAND_TABLE",
    "VerificationKernel",
    "create_verification_kernel",
    # 群と被覆
    "SU2Element",
    "create_lie_algebra",
    "CoverPoint",
    "cover_check",
    # コホモロジーと2群
    "SMThreeCocycle",
    "generate_coboundary_cocycle",
    "is_sm_cocycle",
    "check_double_complex",
    "TWO_GROUP_LAWS",
    "WeakStringTwoGroup",
    "create_weak_two_group",
    # コサイクル
    "COCYCLE_KINDS",
    "ValidationSettings",
    "load_bundle",
    "validate_bundle",
    # 微分と場
    "differentiate",
    "superdiff_demo",
    "linfty_check",
    "sds_verify",
    # ストレージ関連
    "ReportStorage",
    "CSVResidualStorage",
    "create_report_storage",
    "create_csv_storage",
    # ユーティリティ関連
    "setup_logging",
    "setup_console_logging",
    "log_info",
    "log_error",
]
