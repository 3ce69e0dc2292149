#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
単体的被覆モジュール

脈体 N(BG) とSU(2)の単体的被覆の公開インターフェース
"""

from .cover import (
    CoverPoint,
    SimplicialIndex,
    cover_check,
    fill_horn,
    otimes,
    pentagon_simplex,
    phi1,
    phi2,
    phi3,
    random_cover_point,
    random_label_for,
    random_object,
    simplex_edges,
    unit_object,
)
from .nerve import (
    MAX_LEVEL,
    PATCH_INDICES,
    NervePoint,
    describe_cover,
    minimal_patch,
    patch_membership,
    patches_containing,
    simplicial_identities_check,
)

__all__ = [
    # nerve
    "MAX_LEVEL",
    "PATCH_INDICES",
    "NervePoint",
    "patch_membership",
    "patches_containing",
    "minimal_patch",
    "describe_cover",
    "simplicial_identities_check",
    # cover
    "SimplicialIndex",
    "CoverPoint",
    "simplex_edges",
    "fill_horn",
    "phi1",
    "phi2",
    "phi3",
    "otimes",
    "unit_object",
    "pentagon_simplex",
    "random_object",
    "random_label_for",
    "random_cover_point",
    "cover_check",
]
