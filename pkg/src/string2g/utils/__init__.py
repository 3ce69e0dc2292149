#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ユーティリティモジュール

各種ユーティリティ機能の公開インターフェース
"""

from .logging_utils import (
    log_debug,
    log_error,
    log_info,
    log_warning,
    setup_console_logging,
    setup_logging,
)
from .sampling import (
    RNG_NAME,
    build_check_report,
    create_rng,
    estimate_order,
    parallel_map,
    residual_stats,
)

__all__ = [
    # logging_utils
    "setup_logging",
    "setup_console_logging",
    "log_error",
    "log_info",
    "log_warning",
    "log_debug",
    # sampling
    "RNG_NAME",
    "build_check_report",
    "create_rng",
    "residual_stats",
    "parallel_map",
    "estimate_order",
]
