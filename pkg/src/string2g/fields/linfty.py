#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
2項L∞代数モジュール

構造定数で与えられる2項L∞代数 W₀ ⊕ W₁ と、Chevalley–Eilenberg多項式代数上の
微分Qによる Q² = 0（ホモトピーJacobi関係式）の有理数での厳密な検証を提供します。

座標 x^α（W₀[1]、次数1）は反可換、y^a（W₁[1]、次数2）は可換で、

    Q x^γ = −f^γ_a y^a − ½ f^γ_{αβ} x^α x^β
    Q y^b = −f^b_{αa} x^α y^a − (1/3!) f^b_{αβγ} x^α x^β x^γ

です。
"""

from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..group import LieAlgebra, create_lie_algebra
from ..utils import (
    build_check_report,
    create_rng,
    estimate_order,
    log_info,
    parallel_map,
    residual_stats,
)
from .forms import (
    DIMENSION,
    FormField,
    ext_d,
    gauge_transform,
    max_abs,
    mc_residuals,
)

# 単項式 = (x の添字の狭義増加列, y の添字の非減少列)
Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Polynomial = Dict[Monomial, Fraction]


def _fraction_array(values: Any) -> np.ndarray:
    array = np.asarray(values, dtype=object)
    converted = np.empty(array.shape, dtype=object)
    for index in np.ndindex(array.shape):
        converted[index] = Fraction(array[index])
    return converted


def _zeros(shape: Tuple[int, ...]) -> np.ndarray:
    return _fraction_array(np.zeros(shape, dtype=int))


@dataclass
class TwoTermLInfty:
    """
    2項L∞代数 W₁ → W₀ の構造定数

    添字の並び:
        mu1[a, α]:        μ₁(y_a) = Σ mu1[a, α] e_α
        mu2[α, β, γ]:     μ₂(e_α, e_β) = Σ mu2[α, β, γ] e_γ
        mu2_mixed[α, a, b]: μ₂(e_α, y_a) = Σ mu2_mixed[α, a, b] y_b
        mu3[α, β, γ, a]:  μ₃(e_α, e_β, e_γ) = Σ mu3[α, β, γ, a] y_a

    定数は Fraction のオブジェクト配列として保持します。
    """

    name: str
    dim0: int
    dim1: int
    mu1: np.ndarray = field(repr=False)
    mu2: np.ndarray = field(repr=False)
    mu2_mixed: np.ndarray = field(repr=False)
    mu3: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """初期化後の検証"""
        n, m = self.dim0, self.dim1
        if n < 1 or m < 1:
            raise ValueError(f"次元は1以上である必要があります: ({n}, {m})")
        self.mu1 = _fraction_array(self.mu1)
        self.mu2 = _fraction_array(self.mu2)
        self.mu2_mixed = _fraction_array(self.mu2_mixed)
        self.mu3 = _fraction_array(self.mu3)
        expected = {
            "mu1": (m, n),
            "mu2": (n, n, n),
            "mu2_mixed": (n, m, m),
            "mu3": (n, n, n, m),
        }
        for key, shape in expected.items():
            actual = getattr(self, key).shape
            if actual != shape:
                raise ValueError(f"{key}の形が不正です: {actual} != {shape}")
        for a, b in product(range(n), repeat=2):
            if any(self.mu2[a, b, c] != -self.mu2[b, a, c] for c in range(n)):
                raise ValueError("μ₂は反対称である必要があります")
        for a, b, c in product(range(n), repeat=3):
            for d in range(m):
                value = self.mu3[a, b, c, d]
                if value != -self.mu3[b, a, c, d] or value != -self.mu3[a, c, b, d]:
                    raise ValueError("μ₃は完全反対称である必要があります")

    def _float(self, key: str) -> np.ndarray:
        return np.asarray(getattr(self, key), dtype=float)

    def eval_mu1(self, y: Sequence[float]) -> np.ndarray:
        """μ₁(y)"""
        return np.einsum("a,ab->b", np.asarray(y, dtype=float), self._float("mu1"))

    def eval_mu2(self, x1: Sequence[float], x2: Sequence[float]) -> np.ndarray:
        """μ₂(x₁, x₂) ∈ W₀"""
        return np.einsum("a,b,abc->c", x1, x2, self._float("mu2"))

    def eval_mu2_mixed(self, x: Sequence[float], y: Sequence[float]) -> np.ndarray:
        """μ₂(x, y) ∈ W₁"""
        return np.einsum("a,b,abc->c", x, y, self._float("mu2_mixed"))

    def eval_mu3(
        self, x1: Sequence[float], x2: Sequence[float], x3: Sequence[float]
    ) -> np.ndarray:
        """μ₃(x₁, x₂, x₃) ∈ W₁"""
        return np.einsum("a,b,c,abcd->d", x1, x2, x3, self._float("mu3"))

    def describe(self) -> Dict[str, Any]:
        """非零の構造定数の表（JSON互換）"""

        def table(array: np.ndarray) -> List[List[Any]]:
            return [
                [*map(int, index), str(array[index])]
                for index in np.ndindex(array.shape)
                if array[index] != 0
            ]

        return {
            "name": self.name,
            "dims": [self.dim0, self.dim1],
            "mu1": table(self.mu1),
            "mu2": table(self.mu2),
            "mu2_mixed": table(self.mu2_mixed),
            "mu3": table(self.mu3),
        }


def create_string_lie2_algebra(
    algebra: Union[str, LieAlgebra] = "su2", k: Union[float, Fraction] = 1
) -> TwoTermLInfty:
    """
    弦リー2代数 𝔲(1)[1] → 𝔤 の作成

    μ₁ = 0、μ₂ = 括弧積、μ₃(x₁, x₂, x₃) = k·(x₁, [x₂, x₃]) です。
    k = 0 なら通常のリー代数（厳密な場合）になります。

    Args:
        algebra: リー代数またはその名前
        k: μ₃の定数

    Returns:
        TwoTermLInfty: 構造定数
    """
    lie = create_lie_algebra(algebra) if isinstance(algebra, str) else algebra
    n = lie.dim
    k_exact = Fraction(k)
    mu2 = _fraction_array(lie.structure)
    mu3 = _zeros((n, n, n, 1))
    trilinear = _fraction_array(lie.trilinear)
    for index in np.ndindex((n, n, n)):
        mu3[index + (0,)] = k_exact * trilinear[index]
    return TwoTermLInfty(
        name=f"string({lie.name}, k={k_exact})",
        dim0=n,
        dim1=1,
        mu1=_zeros((1, n)),
        mu2=mu2,
        mu2_mixed=_zeros((n, 1, 1)),
        mu3=mu3,
    )


def perturb_brackets(
    algebra: TwoTermLInfty, seed: int, amount: Fraction = Fraction(1, 3)
) -> TwoTermLInfty:
    """
    μ₂ の構造定数を反対称性を保って摂動

    ランダムに選んだ α ≠ β について [e_α, e_β] に amount·e_α を加えます。
    """
    if algebra.dim0 < 2:
        raise ValueError("摂動には2次元以上のW₀が必要です")
    rng = create_rng(seed, 110)
    alpha, beta = (int(i) for i in rng.choice(algebra.dim0, size=2, replace=False))
    mu2 = algebra.mu2.copy()
    mu2[alpha, beta, alpha] += Fraction(amount)
    mu2[beta, alpha, alpha] -= Fraction(amount)
    return TwoTermLInfty(
        name=f"{algebra.name}+δμ₂",
        dim0=algebra.dim0,
        dim1=algebra.dim1,
        mu1=algebra.mu1,
        mu2=mu2,
        mu2_mixed=algebra.mu2_mixed,
        mu3=algebra.mu3,
    )


def _add(target: Polynomial, monomial: Monomial, coefficient: Fraction) -> None:
    if coefficient == 0:
        return
    total = target.get(monomial, Fraction(0)) + coefficient
    if total == 0:
        target.pop(monomial, None)
    else:
        target[monomial] = total


def _merge_sign(left: Tuple[int, ...], right: Tuple[int, ...]) -> int:
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """次数付き可換な多項式の積（x同士は反可換、yは偶）"""
    result: Polynomial = {}
    for (xs1, ys1), c1 in p.items():
        for (xs2, ys2), c2 in q.items():
            if set(xs1) & set(xs2):
                continue
            sign = _merge_sign(xs1, xs2)
            monomial = (tuple(sorted(xs1 + xs2)), tuple(sorted(ys1 + ys2)))
            _add(result, monomial, sign * c1 * c2)
    return result


def _monomial(xs: Sequence[int] = (), ys: Sequence[int] = ()) -> Polynomial:
    return {(tuple(xs), tuple(ys)): Fraction(1)}


class ChevalleyEilenbergDifferential:
    """
    2項L∞代数のChevalley–Eilenberg微分Q

    生成元上の値をあらかじめ展開し、Leibniz則で任意の多項式に拡張します。
    """

    def __init__(self, algebra: TwoTermLInfty):
        """
        初期化

        Args:
            algebra: 構造定数
        """
        self.algebra = algebra
        n, m = algebra.dim0, algebra.dim1
        self.on_x: List[Polynomial] = []
        for gamma in range(n):
            poly: Polynomial = {}
            for a in range(m):
                _add(poly, ((), (a,)), -algebra.mu1[a, gamma])
            for alpha, beta in product(range(n), repeat=2):
                term = multiply(_monomial((alpha,)), _monomial((beta,)))
                coefficient = -Fraction(1, 2) * algebra.mu2[alpha, beta, gamma]
                for monomial, value in term.items():
                    _add(poly, monomial, coefficient * value)
            self.on_x.append(poly)

        self.on_y: List[Polynomial] = []
        for b in range(m):
            poly = {}
            for alpha, a in product(range(n), range(m)):
                _add(poly, ((alpha,), (a,)), -algebra.mu2_mixed[alpha, a, b])
            for alpha, beta, gamma in product(range(n), repeat=3):
                coefficient = algebra.mu3[alpha, beta, gamma, b]
                if coefficient == 0 or len({alpha, beta, gamma}) < 3:
                    continue
                term = multiply(
                    multiply(_monomial((alpha,)), _monomial((beta,))),
                    _monomial((gamma,)),
                )
                for monomial, value in term.items():
                    _add(poly, monomial, -Fraction(1, 6) * coefficient * value)
            self.on_y.append(poly)

    def apply(self, polynomial: Polynomial) -> Polynomial:
        """Q を多項式に適用"""
        result: Polynomial = {}
        for (xs, ys), coefficient in polynomial.items():
            # x^{α₁}…x^{α_p}: Q が i 個の奇元を越える符号
            for i, alpha in enumerate(xs):
                sign = -1 if i % 2 else 1
                term = multiply(
                    multiply(_monomial(xs[:i]), self.on_x[alpha]),
                    _monomial(xs[i + 1 :], ys),
                )
                for monomial, value in term.items():
                    _add(result, monomial, sign * coefficient * value)
            sign = -1 if len(xs) % 2 else 1
            for j, a in enumerate(ys):
                rest = ys[:j] + ys[j + 1 :]
                term = multiply(
                    multiply(_monomial(xs), self.on_y[a]), _monomial((), rest)
                )
                for monomial, value in term.items():
                    _add(result, monomial, sign * coefficient * value)
        return result

    def square_on_generators(self) -> Tuple[List[Polynomial], List[Polynomial]]:
        """生成元上の Q²（Q² は微分なので生成元で判定できる）"""
        return (
            [self.apply(poly) for poly in self.on_x],
            [self.apply(poly) for poly in self.on_y],
        )


def _largest_coefficient(polynomial: Polynomial) -> float:
    return float(max((abs(c) for c in polynomial.values()), default=Fraction(0)))


def homotopy_jacobi_check(algebra: TwoTermLInfty, tol: float = 1e-12) -> Dict[str, Any]:
    """
    ホモトピーJacobi関係式の検証（Q² = 0）

    Args:
        algebra: 構造定数
        tol: 許容誤差（有理数演算なので真の零は0になる）

    Returns:
        Dict[str, Any]: checks に jacobi（x 生成元）と mu3_closure（y 生成元）
    """
    differential = ChevalleyEilenbergDifferential(algebra)
    on_x, on_y = differential.square_on_generators()
    x_residuals = [_largest_coefficient(poly) for poly in on_x]
    y_residuals = [_largest_coefficient(poly) for poly in on_y]
    checks = {
        "jacobi": residual_stats(x_residuals, tol),
        "mu3_closure": residual_stats(y_residuals, tol),
    }
    exact = not any(on_x) and not any(on_y)
    log_info(f"Q² = 0 の検証を実行しました: {algebra.name}, exact={exact}")
    return build_check_report(checks, algebra=algebra.name, exact=exact)


def d_squared_check(
    steps: Sequence[float],
    error_constant: float,
    samples: int = 16,
    seed: int = 0,
) -> Dict[str, Any]:
    """
    滑らかな試験形式での d∘d の残差

    中心差分は混合差分が対称なので、残差は丸め誤差の大きさに留まります。

    Args:
        steps: ステップ幅の列
        error_constant: 許容誤差 C·h² の定数
        samples: 評価点の数
        seed: 乱数シード

    Returns:
        Dict[str, Any]: checks に d_squared（0形式と1形式）
    """
    rng = create_rng(seed, 120)
    w = rng.normal(size=(DIMENSION, 3))
    points = rng.uniform(-1.0, 1.0, size=(samples, DIMENSION))
    function = FormField(
        0, 1, lambda x: np.array([np.sin(x @ w[:, 0]) * np.exp(x[0])]), "f"
    )
    one_form = FormField(
        1, 1, lambda x: (np.cos(x @ w[:, 1]) + x[2] * np.sin(x @ w[:, 2])) * x[:, None]
    )

    checks: Dict[str, Dict[str, Any]] = {}
    smallest = min(steps)
    for name, form in (("d_squared_0", function), ("d_squared_1", one_form)):
        dd = ext_d(ext_d(form, smallest), smallest)
        values = [max_abs(dd(x)) for x in points]
        checks[name] = residual_stats(values, error_constant * smallest**2)
    return build_check_report(checks, h=smallest)


def _adjoint_flow(
    algebra: LieAlgebra, direction: np.ndarray
) -> Callable[[float], np.ndarray]:
    """t ↦ exp(t·ad_Y)（構造定数が完全反対称な基底を仮定）"""
    ad = np.einsum("a,abc->cb", direction, algebra.structure)
    eigenvalues, vectors = np.linalg.eigh(1j * ad)

    def flow(t: float) -> np.ndarray:
        phases = np.exp(-1j * t * eigenvalues)
        return ((vectors * phases) @ vectors.conj().T).real

    return flow


def flat_two_direction_connection(algebra: LieAlgebra) -> FormField:
    """
    g(x) = exp(x⁰X)exp(x¹Y) の純ゲージ接続

    A = Ad_{exp(−x¹Y)}X dx⁰ + Y dx¹ で、X, Y は基底の最初の2つの元です。
    ℱ = 0 が厳密に成り立ち、μ₃(A, A, A) = 0 なので B = 0 と組で
    Maurer–Cartan解になります。
    """
    basis = np.eye(algebra.dim)
    first, second = basis[0], basis[min(1, algebra.dim - 1)]
    flow = _adjoint_flow(algebra, second)

    def func(x: np.ndarray) -> np.ndarray:
        value = np.zeros((DIMENSION, algebra.dim))
        value[0] = flow(-float(x[1])) @ first
        value[1] = second
        return value

    return FormField(1, algebra.dim, func, "A₀")


def _quadratic_form(
    rng: np.random.Generator, degree: int, value_dim: int, name: str
) -> FormField:
    shape = (DIMENSION,) * degree + (value_dim,)
    constant = rng.normal(size=shape)
    linear = rng.normal(size=(DIMENSION,) + shape)
    quadratic = rng.normal(size=(DIMENSION, DIMENSION) + shape)

    def func(x: np.ndarray) -> np.ndarray:
        value = (
            constant
            + np.tensordot(x, linear, axes=1)
            + 0.5 * np.tensordot(x, np.tensordot(x, quadratic, axes=1), axes=1)
        )
        return value

    return FormField(degree, value_dim, func, name)


def gauge_covariance_check(
    algebra: LieAlgebra,
    k: float,
    epsilons: Sequence[float],
    h: float,
    min_order: float,
    samples: int = 8,
    seed: int = 0,
    executor: Optional[Executor] = None,
    transform_k: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Maurer–Cartan解のゲージ変換後の残差が O(ε²) であることの検証

    2方向に値を取る平坦な接続 flat_two_direction_connection と B = 0 を
    二次式のパラメータ x, ζ で変換し、変換前の差分誤差を引いた残差の傾きを
    log-log で推定します。[A, A] ≠ 0 なので δB の μ₃ の項の符号が誤っていると
    −μ₃(dx, A, A) が一次で残り、傾きは1になります。

    Args:
        algebra: リー代数
        k: μ₃の定数
        epsilons: パラメータの大きさの列
        h: 有限差分のステップ幅
        min_order: 要求する最小の傾き
        samples: 評価点の数
        seed: 乱数シード
        executor: 並列評価の実行器
        transform_k: ゲージ変換の μ₃ に使う定数（省略時は k）

    Returns:
        Dict[str, Any]: checks に gauge_covariance
    """
    rng = create_rng(seed, 121)
    A = flat_two_direction_connection(algebra)
    B = FormField.zero(2, 1, "B₀")
    x = _quadratic_form(rng, 0, algebra.dim, "x")
    zeta = _quadratic_form(rng, 1, 1, "ζ")
    points = rng.uniform(-1.0, 1.0, size=(samples, DIMENSION))
    F0, H0 = mc_residuals(A, B, algebra, k, h)
    k_gauge = k if transform_k is None else transform_k

    errors: List[float] = []
    for eps in epsilons:
        A_new, B_new = gauge_transform(A, B, x, zeta, eps, algebra, k_gauge, h)
        F, H = mc_residuals(A_new, B_new, algebra, k, h)

        def residual(point: np.ndarray) -> float:
            return max(
                max_abs(F(point) - F0(point)), max_abs(H(point) - H0(point))
            )

        errors.append(max(parallel_map(residual, list(points), executor)))

    order = estimate_order(epsilons, errors)
    stats = residual_stats([errors[-1]], float("inf"))
    stats["order"] = order
    stats["min_order"] = min_order
    stats["errors"] = errors
    stats["passed"] = order is not None and order >= min_order
    return build_check_report({"gauge_covariance": stats}, epsilons=list(epsilons))


def linfty_check(
    k: float,
    tol: float,
    h: float,
    epsilons: Sequence[float],
    min_order: float,
    error_constant: float,
    seed: int = 0,
    algebra_name: str = "su2",
    executor: Optional[Executor] = None,
) -> Dict[str, Any]:
    """
    弦リー2代数とその場の理論の一連の検証

    Returns:
        Dict[str, Any]: jacobi, mu3_closure, d_squared_*, gauge_covariance
    """
    lie = create_lie_algebra(algebra_name)
    string_algebra = create_string_lie2_algebra(lie, Fraction(k))
    reports = [
        homotopy_jacobi_check(string_algebra, tol),
        d_squared_check((h,), error_constant, seed=seed),
        gauge_covariance_check(
            lie, k, epsilons, h, min_order, seed=seed, executor=executor
        ),
    ]
    checks: Dict[str, Dict[str, Any]] = {}
    for report in reports:
        checks.update(report["checks"])
    return build_check_report(
        checks, algebra=string_algebra.describe(), exact=reports[0]["exact"]
    )
