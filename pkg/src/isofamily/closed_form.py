"""Closed forms of the deformed modes and potentials.

The multi-parameter denominator collapses, by Viète's formulas, to a linear
function C₁ + C₂·ΔF of the single running integral ΔF = ∫u₀²: C₁ is the
product of all parameters and C₂ the sum of the lower-order elementary
symmetric polynomials.  This module owns that algebra, the kink
decomposition of ΔF with the admissibility intervals, and the two
state-deleting limit potentials at the edges of the deleted interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .grid import SampledFunction, cumulative_integral, derivative, normalize, second_derivative
from .parameters import ParameterError, check_parameters

LIMIT_MASK_THRESHOLD = 1e-6


@dataclass(frozen=True)
class VieteCoefficients:
    """Denominator coefficients C₁ + C₂·ΔF for a parameter set.

    c1 is the product of all parameters, c2 the sum of the elementary
    symmetric polynomials of orders 0..depth-1.  lambda_eff = c1/c2 is the
    single equivalent deformation parameter (None when c2 = 0), and
    lambda_product = ∏ λ_j(λ_j+1) is the squared normalization constant,
    equal to c1·(c1+c2) as an algebraic identity.
    """

    c1: float
    c2: float
    lambda_eff: float | None
    lambda_product: float

    @property
    def lambda_product_from_viete(self) -> float:
        """The Λ-product evaluated through the identity c1·(c1+c2)."""
        return self.c1 * (self.c1 + self.c2)


@dataclass(frozen=True, eq=False)
class KinkDecomposition:
    """ΔF written as α + β·K(x) with K ranging over [-1, 1]."""

    alpha: float
    beta: float
    kink: SampledFunction


def elementary_symmetric(lambdas: Sequence[float]) -> np.ndarray:
    """Elementary symmetric polynomials e₀..e_i of the parameter list.

    Stable product-expansion recurrence (no Newton-Girard divisions):
    appending λ maps e_k -> e_k + λ·e_{k-1}.
    """
    if len(lambdas) == 0:
        raise ValueError("parameter list must not be empty")
    e = np.zeros(len(lambdas) + 1)
    e[0] = 1.0
    for j, lam in enumerate(lambdas):
        for k in range(j + 1, 0, -1):
            e[k] += lam * e[k - 1]
    return e


def viete_coefficients(lambdas: Sequence[float]) -> VieteCoefficients:
    """C₁, C₂, λ_eff and the Λ-product for an admissible parameter set."""
    lams = check_parameters(lambdas)
    e = elementary_symmetric(lams)
    c1 = float(e[-1])
    c2 = float(np.sum(e[:-1]))
    lambda_eff = c1 / c2 if c2 != 0.0 else None
    product = 1.0
    for lam in lams:
        product *= lam * (lam + 1.0)
    return VieteCoefficients(c1=c1, c2=c2, lambda_eff=lambda_eff, lambda_product=product)


def denominator_admissible(c1: float, c2: float, f_min: float, f_max: float) -> bool:
    """Endpoint sign test: c1 + c2·f keeps one sign over [f_min, f_max]."""
    lo = c1 + c2 * f_min
    hi = c1 + c2 * f_max
    return lo != 0.0 and hi != 0.0 and (lo > 0.0) == (hi > 0.0)


def _denominator(bp, vc: VieteCoefficients) -> tuple[SampledFunction, np.ndarray]:
    delta_f = cumulative_integral(ground_density(bp))
    theta = vc.c1 + vc.c2 * delta_f.values
    if not denominator_admissible(vc.c1, vc.c2, float(delta_f.values[0]), float(delta_f.values[-1])) or np.any(
        theta == 0.0
    ):
        raise ParameterError(
            f"singular denominator: c1 + c2·ΔF vanishes on the grid (c1={vc.c1}, c2={vc.c2})"
        )
    return delta_f, theta


def ground_density(bp) -> SampledFunction:
    """u₀² as a sampled function (the integrand of ΔF)."""
    u = bp.ground_state.values
    return bp.ground_state.with_values(u * u)


def closed_mode(bp, lambdas: Sequence[float]) -> SampledFunction:
    """Zero mode √(∏Λ_j)·u₀ / (C₁ + C₂·ΔF), normalized on the grid."""
    vc = viete_coefficients(lambdas)
    _, theta = _denominator(bp, vc)
    raw = sqrt(vc.lambda_product) * bp.ground_state.values / theta
    return normalize(SampledFunction(bp.grid, raw))


def closed_potential(bp, lambdas: Sequence[float], form: str = "expanded") -> SampledFunction:
    """Deformed potential for a parameter set.

    form="expanded" (default) evaluates the algebraic right-hand side
    V₀ - 4κC₂u₀u₀'/Θ + 2κC₂²u₀⁴/Θ²; form="log" evaluates
    V₀ - 2κ·(ln|Θ|)'' by finite differences.  The two agree to O(h²).
    """
    vc = viete_coefficients(lambdas)
    _, theta = _denominator(bp, vc)
    kappa = bp.kinetic_scale
    v0 = bp.potential.values
    if form == "expanded":
        u = bp.ground_state.values
        du = derivative(bp.ground_state).values
        u_sq = u * u
        out = (
            v0
            - 4.0 * kappa * vc.c2 * (u * du) / theta
            + 2.0 * kappa * (vc.c2 * u_sq / theta) ** 2
        )
    elif form == "log":
        log_theta = SampledFunction(bp.grid, np.log(np.abs(theta)))
        out = v0 - 2.0 * kappa * second_derivative(log_theta).values
    else:
        raise ValueError(f"unknown form {form!r}: expected 'expanded' or 'log'")
    return SampledFunction(bp.grid, out)


def from_polynomial(a: Sequence[float], kink: KinkDecomposition | None = None) -> VieteCoefficients:
    """Viète coefficients read off a polynomial a₀xⁱ + a₁xⁱ⁻¹ + ... + a_i.

    The parameters are the polynomial's roots; after monic normalization,
    c1 = (-1)ⁱ·a_i and c2 = Σ_{k<i} (-1)ᵏ·a_k (alternating signs over the
    coefficient index).  Roots need not be real; when a kink decomposition
    is supplied the denominator is checked for sign changes over the kink
    range and rejected if it vanishes.
    """
    coeffs = [float(c) for c in a]
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree at least 1")
    if coeffs[0] == 0.0:
        raise ValueError("zero leading coefficient: polynomial degree is ambiguous")
    monic = [c / coeffs[0] for c in coeffs]
    degree = len(monic) - 1
    sign = -1.0 if degree % 2 else 1.0
    c1 = sign * monic[-1]
    c2 = 0.0
    for k in range(degree):
        c2 += (-1.0) ** k * monic[k]
    lambda_eff = c1 / c2 if c2 != 0.0 else None
    if kink is not None:
        f_min = kink.alpha - kink.beta
        f_max = kink.alpha + kink.beta
        if not denominator_admissible(c1, c2, f_min, f_max):
            raise ParameterError(
                f"inadmissible polynomial: c1 + c2·ΔF vanishes on [{f_min}, {f_max}]"
            )
    return VieteCoefficients(
        c1=c1, c2=c2, lambda_eff=lambda_eff, lambda_product=c1 * (c1 + c2)
    )


def kink_from_cumulative(F: SampledFunction) -> KinkDecomposition:
    """Decompose a monotone running integral as α + β·K with K in [-1, 1]."""
    values = F.values
    if np.any(np.diff(values) < 0.0):
        raise ValueError("nonmonotone input: running integral must be nondecreasing")
    f_min = float(values[0])
    f_max = float(values[-1])
    alpha = 0.5 * (f_max + f_min)
    beta = 0.5 * (f_max - f_min)
    if beta <= 0.0:
        raise ValueError("degenerate kink: integral has zero range")
    kink = F.with_values((values - alpha) / beta)
    return KinkDecomposition(alpha=alpha, beta=beta, kink=kink)


def kink_parameters(bp) -> KinkDecomposition:
    """Kink decomposition of ΔF for a base problem; (1/2, 1/2) on the full line."""
    return kink_from_cumulative(cumulative_integral(ground_density(bp)))


def admissible(lambda_eff: float, kink: KinkDecomposition) -> bool:
    """Allowed effective-parameter intervals: λ_eff > β-α or λ_eff < -(β+α)."""
    return lambda_eff > kink.beta - kink.alpha or lambda_eff < -(kink.beta + kink.alpha)


def _erode(mask: np.ndarray, iterations: int) -> np.ndarray:
    out = mask.copy()
    for _ in range(iterations):
        prev = out.copy()
        out[1:] &= prev[:-1]
        out[:-1] &= prev[1:]
    return out


def _limit_potential(bp, log_argument: np.ndarray) -> SampledFunction:
    raw_mask = log_argument >= LIMIT_MASK_THRESHOLD
    guarded = np.log(np.maximum(log_argument, 1e-300))
    kappa = bp.kinetic_scale
    values = bp.potential.values - 2.0 * kappa * second_derivative(
        SampledFunction(bp.grid, guarded)
    ).values
    mask = _erode(raw_mask, 2)
    values = np.where(mask, values, np.nan)
    return SampledFunction(bp.grid, values, mask=mask)


def pursey_limit_potential(bp) -> SampledFunction:
    """λ→0⁺ limit potential V₀ - 2κ(ln ΔF)'', masked where ΔF < 1e-6.

    Singular near the left endpoint; no zero mode survives this limit, so
    only the potential (with its validity mask) is returned.
    """
    delta_f = cumulative_integral(ground_density(bp))
    return _limit_potential(bp, delta_f.values)


def abraham_moses_limit_potential(bp) -> SampledFunction:
    """λ→-1⁻ limit potential V₀ - 2κ(ln(1-ΔF))'', masked where 1-ΔF < 1e-6.

    Mirror image of the λ→0⁺ limit; singular near the right endpoint.
    """
    delta_f = cumulative_integral(ground_density(bp))
    return _limit_potential(bp, 1.0 - delta_f.values)
