#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
場の理論モジュール

2項L∞代数、ℝ⁴上の微分形式、自己双対弦の公開インターフェース
"""

from .forms import (
    DIMENSION,
    LEVI_CIVITA,
    FormField,
    antisymmetrize,
    bracket_wedge,
    central_gradient,
    ext_d,
    gauge_transform,
    hodge,
    max_abs,
    mc_residuals,
    pure_gauge_connection,
    trilinear_wedge,
)
from .linfty import (
    ChevalleyEilenbergDifferential,
    TwoTermLInfty,
    create_string_lie2_algebra,
    d_squared_check,
    flat_two_direction_connection,
    gauge_covariance_check,
    homotopy_jacobi_check,
    linfty_check,
    multiply,
    perturb_brackets,
)
from .self_dual_string import (
    SOLUTIONS,
    SelfDualStringConfig,
    SelfDualStringResult,
    compare_sds_solutions,
    evaluate_sds,
    higgs_field,
    laplacian,
    sample_points,
    sds_solution_v,
    sds_verify,
    solution_one_fields,
    solution_two_fields,
    string_potential,
    string_profile,
)

__all__ = [
    # forms
    "DIMENSION",
    "LEVI_CIVITA",
    "FormField",
    "antisymmetrize",
    "central_gradient",
    "ext_d",
    "hodge",
    "bracket_wedge",
    "trilinear_wedge",
    "mc_residuals",
    "gauge_transform",
    "pure_gauge_connection",
    "max_abs",
    # linfty
    "TwoTermLInfty",
    "ChevalleyEilenbergDifferential",
    "create_string_lie2_algebra",
    "perturb_brackets",
    "multiply",
    "homotopy_jacobi_check",
    "d_squared_check",
    "flat_two_direction_connection",
    "gauge_covariance_check",
    "linfty_check",
    # self_dual_string
    "SOLUTIONS",
    "SelfDualStringConfig",
    "SelfDualStringResult",
    "higgs_field",
    "string_profile",
    "string_potential",
    "solution_one_fields",
    "solution_two_fields",
    "sds_solution_v",
    "laplacian",
    "sample_points",
    "evaluate_sds",
    "sds_verify",
    "compare_sds_solutions",
]
