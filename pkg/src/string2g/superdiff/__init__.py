#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
微分モジュール

Grassmann数と弦2群の降下データからの微分の公開インターフェース
"""

from .differentiation import (
    CHI,
    N_GENERATORS,
    N_THETA,
    THETAS,
    XI,
    CoboundaryModuli,
    DescentData,
    ModuliPoint,
    TransformedModuli,
    build_descent_cocycle,
    coboundary_relation,
    cubic_relation_residual,
    d_K,
    descent_a,
    descent_residuals,
    descent_v,
    differentiate,
    generator_layout,
    equivalence_residuals,
    equivalence_transform,
    graded_commutator,
    half_bracket_vector,
    lambda_components,
    lambda_trace,
    matrix_constant,
    odd_element,
    odd_vector,
    string_lie2_products,
    superdiff_demo,
    theta,
    theta_order_part,
)
from .grassmann import GrassmannNumber, all_monomials, merge_sign

__all__ = [
    # grassmann
    "GrassmannNumber",
    "merge_sign",
    "all_monomials",
    # differentiation
    "N_THETA",
    "XI",
    "CHI",
    "N_GENERATORS",
    "THETAS",
    "generator_layout",
    "theta",
    "theta_order_part",
    "matrix_constant",
    "d_K",
    "odd_element",
    "odd_vector",
    "graded_commutator",
    "half_bracket_vector",
    "lambda_trace",
    "lambda_components",
    "ModuliPoint",
    "CoboundaryModuli",
    "DescentData",
    "TransformedModuli",
    "descent_v",
    "descent_a",
    "build_descent_cocycle",
    "descent_residuals",
    "differentiate",
    "string_lie2_products",
    "equivalence_transform",
    "equivalence_residuals",
    "coboundary_relation",
    "cubic_relation_residual",
    "superdiff_demo",
]
