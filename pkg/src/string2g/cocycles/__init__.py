#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Čech・Deligneコサイクルモジュール

有限被覆上の通常・厳密・弱・Deligneの各コサイクル系の公開インターフェース
"""

from .deligne import (
    DeligneCoboundary,
    DeligneCocycle,
    a_coboundary_residual,
    a_gluing_residual,
    abelian_deligne_coboundary,
    apply_deligne_coboundary,
    b_coboundary_residual,
    b_gluing_residual,
    lambda_form,
    linearization_tolerance,
    perturb_deligne_b,
    pure_gauge_cocycle,
    random_deligne_coboundary,
    trivial_deligne_cocycle,
    validate_deligne,
    validate_deligne_coboundary,
    zeta_triple_residual,
)
from .finite_cover import (
    FiniteCover,
    OverlapSamples,
    create_single_patch_cover,
    create_sphere_cover,
    sample_sphere,
    smooth_scalar_map,
    smooth_spin4_map,
    smooth_su2_map,
)
from .ordinary import (
    OrdinaryCocycle,
    coboundary_ordinary_cocycle,
    random_ordinary_cocycle,
    trivial_ordinary_cocycle,
    validate_ordinary,
)
from .registry import (
    COCYCLE_KINDS,
    GENERATORS,
    ValidationSettings,
    build_cover,
    build_lambda,
    check_bundle,
    load_bundle,
    validate_bundle,
)
from .strict import (
    AdjointCrossedModule,
    CentralCircleCrossedModule,
    CrossedModule,
    StrictCoboundary,
    StrictCocycle,
    adjoint_solved_cocycle,
    apply_strict_coboundary,
    central_coboundary_cocycle,
    create_crossed_module,
    identity_strict_coboundary,
    perturb_strict_h,
    random_strict_coboundary,
    trivial_strict_cocycle,
    validate_strict,
    validate_strict_coboundary,
)
from .weak import (
    WeakCoboundary,
    WeakCocycle,
    apply_weak_coboundary,
    identity_weak_coboundary,
    perturb_weak_a,
    random_weak_coboundary,
    trivial_weak_cocycle,
    validate_weak,
    validate_weak_coboundary,
)

__all__ = [
    # finite_cover
    "FiniteCover",
    "OverlapSamples",
    "create_sphere_cover",
    "create_single_patch_cover",
    "sample_sphere",
    "smooth_su2_map",
    "smooth_spin4_map",
    "smooth_scalar_map",
    # ordinary
    "OrdinaryCocycle",
    "trivial_ordinary_cocycle",
    "coboundary_ordinary_cocycle",
    "random_ordinary_cocycle",
    "validate_ordinary",
    # strict
    "CrossedModule",
    "AdjointCrossedModule",
    "CentralCircleCrossedModule",
    "create_crossed_module",
    "StrictCocycle",
    "StrictCoboundary",
    "trivial_strict_cocycle",
    "adjoint_solved_cocycle",
    "central_coboundary_cocycle",
    "perturb_strict_h",
    "random_strict_coboundary",
    "identity_strict_coboundary",
    "apply_strict_coboundary",
    "validate_strict",
    "validate_strict_coboundary",
    # weak
    "WeakCocycle",
    "WeakCoboundary",
    "trivial_weak_cocycle",
    "identity_weak_coboundary",
    "random_weak_coboundary",
    "apply_weak_coboundary",
    "perturb_weak_a",
    "validate_weak",
    "validate_weak_coboundary",
    # deligne
    "DeligneCocycle",
    "DeligneCoboundary",
    "lambda_form",
    "a_gluing_residual",
    "a_coboundary_residual",
    "b_gluing_residual",
    "b_coboundary_residual",
    "zeta_triple_residual",
    "trivial_deligne_cocycle",
    "abelian_deligne_coboundary",
    "random_deligne_coboundary",
    "apply_deligne_coboundary",
    "linearization_tolerance",
    "perturb_deligne_b",
    "pure_gauge_cocycle",
    "validate_deligne",
    "validate_deligne_coboundary",
    # registry
    "COCYCLE_KINDS",
    "GENERATORS",
    "ValidationSettings",
    "load_bundle",
    "check_bundle",
    "build_cover",
    "build_lambda",
    "validate_bundle",
]
