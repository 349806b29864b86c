"""The iterative deformation chain.

Each step takes the current normalized zero mode v, a parameter λ outside
[-1, 0], and produces √(λ(λ+1))·v / (λ + ∫v²) together with the deformed
potential obtained by subtracting 2κ·(sum of log-denominators)''.

chain_modes propagates the running integral of v² through the step's own
integral identity, ∫ᵡ v² = λ(λ+1)·G/(λ(λ+G)) with G the previous running
integral: on top of the single trapezoid integral of u₀² this reproduces
the closed forms to rounding.  The stateless iterate_mode instead
integrates v_prev² by trapezoid directly; the two agree to O(h²), which is
one of the construction's built-in cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from . import closed_form
from .base import BaseProblem, integration_factor, superpotential
from .grid import (
    SampledFunction,
    cumulative_integral,
    derivative,
    normalize,
    second_derivative,
    total_integral,
)
from .parameters import check_parameter, check_parameters

LARGE_PARAMETER = 1e12
INPUT_NORM_TOL = 1e-6


@dataclass(frozen=True)
class ParamChain:
    """Ordered deformation parameters λ₁..λᵢ, each outside [-1, 0].

    half_line=True additionally restricts every parameter to be positive
    (hard-wall problems with the integration limit at x = 0).
    """

    lambdas: tuple[float, ...]
    half_line: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", check_parameters(self.lambdas, self.half_line))

    @property
    def depth(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True, eq=False)
class ChainResult:
    """Modes, potentials and running integrals at every depth of a chain."""

    modes: tuple[SampledFunction, ...]
    potentials: tuple[SampledFunction, ...]
    integrals: tuple[SampledFunction, ...]
    parameters: tuple[float, ...]


def _as_chain(chain) -> ParamChain:
    if isinstance(chain, ParamChain):
        return chain
    return ParamChain(tuple(float(lam) for lam in chain))


def _checked_denominator(lam: float, G: np.ndarray, depth: int) -> np.ndarray:
    theta = lam + G
    if not (np.all(theta > 0.0) or np.all(theta < 0.0)):
        raise ValueError(
            f"chain step {depth} (lambda={lam}): denominator lambda + ∫v² vanishes"
        )
    return theta


def one_param_mode(bp: BaseProblem, lam: float, normalized: bool = True) -> SampledFunction:
    """One-step mode u₀/(λ + ΔF); with normalized=True the true zero mode.

    The normalized branch applies the constant √(λ(λ+1)) and renormalizes
    on the grid.
    """
    lam = check_parameter(lam)
    delta_f = cumulative_integral(integration_factor(bp))
    theta = _checked_denominator(lam, delta_f.values, depth=1)
    raw = bp.ground_state.values / theta
    if not normalized:
        return SampledFunction(bp.grid, raw)
    return normalize(SampledFunction(bp.grid, sqrt(lam * (lam + 1.0)) * raw))


def one_param_potential(bp: BaseProblem, lam: float, form: str = "expanded") -> SampledFunction:
    """One-parameter deformed potential V₀ - 2κ·(ln(λ + ΔF))''.

    Shares the closed-form evaluation (depth-1 Viète coefficients are
    exactly (λ, 1)); form selects the expanded or log route.
    """
    return closed_form.closed_potential(bp, [lam], form=form)


def iterate_mode(v_prev: SampledFunction, lam: float) -> SampledFunction:
    """One further deformation step on an already-normalized mode.

    Uses the plain trapezoid running integral of v_prev² and renormalizes
    the output on the grid.
    """
    lam = check_parameter(lam)
    norm_err = abs(total_integral(v_prev.with_values(v_prev.values ** 2)) - 1.0)
    if norm_err > INPUT_NORM_TOL:
        raise ValueError(f"unnormalized input mode: |∫v² - 1| = {norm_err:.3e}")
    G = cumulative_integral(v_prev.with_values(v_prev.values ** 2))
    theta = _checked_denominator(lam, G.values, depth=1)
    raw = sqrt(lam * (lam + 1.0)) * v_prev.values / theta
    return normalize(SampledFunction(v_prev.grid, raw))


def _chain_steps(bp: BaseProblem, chain: ParamChain):
    """Yield (depth, lam, G, theta) with G propagated by the integral identity."""
    G = cumulative_integral(integration_factor(bp)).values
    for depth, lam in enumerate(chain.lambdas, start=1):
        theta = _checked_denominator(lam, G, depth)
        yield depth, lam, G, theta
        G = lam * (lam + 1.0) * G / (lam * theta)


def chain_modes(bp: BaseProblem, chain) -> ChainResult:
    """Run the full chain, recording mode, potential and integral at each depth."""
    chain = _as_chain(chain)
    kappa = bp.kinetic_scale
    v = bp.ground_state.values
    log_sum = np.zeros(bp.grid.n)
    modes: list[SampledFunction] = []
    potentials: list[SampledFunction] = []
    integrals: list[SampledFunction] = []
    for depth, lam, G, theta in _chain_steps(bp, chain):
        v = sqrt(lam * (lam + 1.0)) * v / theta
        log_sum = log_sum + np.log(np.abs(theta))
        deformation = second_derivative(SampledFunction(bp.grid, log_sum)).values
        modes.append(normalize(SampledFunction(bp.grid, v)))
        potentials.append(SampledFunction(bp.grid, bp.potential.values - 2.0 * kappa * deformation))
        integrals.append(SampledFunction(bp.grid, G))
    return ChainResult(
        modes=tuple(modes),
        potentials=tuple(potentials),
        integrals=tuple(integrals),
        parameters=chain.lambdas,
    )


def chain_potential(bp: BaseProblem, chain) -> SampledFunction:
    """Deformed potential V₀ - 2κ·(Σ_j ln|λ_j + G_j|)'' at full depth.

    The logs are summed termwise before differencing, so deep chains never
    form the (overflow-prone) product of denominators.
    """
    chain = _as_chain(chain)
    log_sum = np.zeros(bp.grid.n)
    for _, _, _, theta in _chain_steps(bp, chain):
        log_sum += np.log(np.abs(theta))
    deformation = second_derivative(SampledFunction(bp.grid, log_sum)).values
    return SampledFunction(bp.grid, bp.potential.values - 2.0 * bp.kinetic_scale * deformation)


def riccati_general_solution(bp: BaseProblem, lam: float) -> SampledFunction:
    """General zero-energy Riccati solution y₀ + F₀/(λ + ΔF).

    Equals -(ln v_λ)' up to finite-difference tolerance on the mask where
    the mode is resolvable.  For |λ| > 1e12 the correction is evaluated as
    (F₀/λ)/(1 + ΔF/λ), which stays stable in the deep-deformation limit.
    """
    lam = check_parameter(lam)
    y0 = superpotential(bp)
    F0 = integration_factor(bp)
    delta_f = cumulative_integral(F0)
    _checked_denominator(lam, delta_f.values, depth=1)
    if abs(lam) > LARGE_PARAMETER:
        correction = (F0.values / lam) / (1.0 + delta_f.values / lam)
    else:
        correction = F0.values / (lam + delta_f.values)
    values = np.where(y0.mask, y0.values + correction, 0.0)
    return SampledFunction(bp.grid, values, mask=y0.mask)


def partner_potential(bp: BaseProblem) -> SampledFunction:
    """Fermionic partner V₁ = κ(y₀² + y₀'), shared by the whole family.

    For every admissible λ, κ(y₁² + y₁') with the general Riccati solution
    y₁ reproduces the same function: that shared partner is what makes the
    family strictly isospectral.  Masked where the superpotential is.
    """
    y0 = superpotential(bp)
    dy0 = derivative(y0).values
    mask = y0.mask.copy()
    mask[1:] &= y0.mask[:-1]
    mask[:-1] &= y0.mask[1:]
    values = bp.kinetic_scale * (y0.values ** 2 + dy0)
    values = np.where(mask, values, np.nan)
    return SampledFunction(bp.grid, values, mask=mask)
