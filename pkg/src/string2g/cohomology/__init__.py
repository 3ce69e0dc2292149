#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Segal–Mitchisonコホモロジーモジュール

コチェイン、微分、3コサイクルの公開インターフェース
"""

from .cochain import (
    FIBER_TOL,
    NORMALIZATION_TOL,
    CircleValue,
    Cochain,
    CochainSum,
    circle_distance,
    delta_cech,
    delta_nerve,
    delta_sm,
    labels_hash,
    quaternion_offset,
    random_cochain,
    sample_arguments,
)
from .cocycle import (
    COCYCLE_CONDITIONS,
    SMThreeCocycle,
    check_double_complex,
    cocycle_residuals,
    generate_coboundary_cocycle,
    is_sm_cocycle,
    perturb_lambda03,
    perturb_lambda12,
)

__all__ = [
    # cochain
    "FIBER_TOL",
    "NORMALIZATION_TOL",
    "CircleValue",
    "Cochain",
    "CochainSum",
    "circle_distance",
    "delta_cech",
    "delta_nerve",
    "delta_sm",
    "labels_hash",
    "quaternion_offset",
    "random_cochain",
    "sample_arguments",
    # cocycle
    "COCYCLE_CONDITIONS",
    "SMThreeCocycle",
    "generate_coboundary_cocycle",
    "perturb_lambda03",
    "perturb_lambda12",
    "cocycle_residuals",
    "is_sm_cocycle",
    "check_double_complex",
]
