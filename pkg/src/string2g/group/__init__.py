#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
群モジュール

SU(2)・Spin(4)とそのリー代数の公開インターフェース
"""

from .lie_algebra import (
    SPIN4_ALGEBRA,
    SU2_ALGEBRA,
    U1_ALGEBRA,
    AlgebraElement,
    GroupElement,
    LieAlgebra,
    bracket,
    create_lie_algebra,
    exp_map,
    killing,
    lambda03_linear,
    log_map,
)
from .su2 import EPS_NORM, Spin4Element, SU2Element

__all__ = [
    # su2
    "EPS_NORM",
    "SU2Element",
    "Spin4Element",
    # lie_algebra
    "LieAlgebra",
    "AlgebraElement",
    "GroupElement",
    "SU2_ALGEBRA",
    "SPIN4_ALGEBRA",
    "U1_ALGEBRA",
    "create_lie_algebra",
    "bracket",
    "killing",
    "exp_map",
    "log_map",
    "lambda03_linear",
]
