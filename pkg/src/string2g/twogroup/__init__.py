#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
弱ストリング2群モジュール

𝒮λʷ の対象・射・構造写像と公理検証の公開インターフェース
"""

from .weak_2group import (
    TWO_GROUP_LAWS,
    TwoGroupMorphism,
    TwoGroupObject,
    WeakStringTwoGroup,
    create_weak_two_group,
)

__all__ = [
    # weak_2group
    "TWO_GROUP_LAWS",
    "TwoGroupObject",
    "TwoGroupMorphism",
    "WeakStringTwoGroup",
    "create_weak_two_group",
]
