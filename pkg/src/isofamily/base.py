"""Base problems: a potential at zero factorization energy with its ground state.

A BaseProblem holds a potential shifted so its ground level sits exactly at
zero together with the normalized, nodeless ground state: the seed of every
deformation.  Two analytic catalog problems are provided plus a numeric
solver that turns an arbitrary sampled potential into a BaseProblem via
Sturm bisection and inverse iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import (
    Grid,
    SampledFunction,
    cumulative_integral,
    derivative,
    normalize,
    total_integral,
)
from .spectral import discretize, lowest_eigenvalues, zero_mode_residual
from .tridiag import solve_shifted

NORM_TOL = 1e-8
RESIDUAL_TOL = 1e-4
RESIDUAL_MASK = 1e-8
LOG_MASK = 1e-12

GAP_TOL = 1e-8
_INVERSE_ITERATIONS = 6


@dataclass(frozen=True, eq=False)
class BaseProblem:
    """Potential (ground level shifted to zero) plus its normalized ground state.

    Attributes
    ----------
    grid : Grid
        Shared grid; its left endpoint is the lower integration limit.
    potential : SampledFunction
        V₀, in energy units, with the ground energy subtracted.
    ground_state : SampledFunction
        u₀, normalized on the grid, nodeless and nonnegative.
    kinetic_scale : float
        κ, the coefficient of -d²/dx² in the Hamiltonian (1/2 for ħ=m=1).
    energy_shift : float
        The subtracted ground energy, recorded for provenance.
    """

    grid: Grid
    potential: SampledFunction
    ground_state: SampledFunction
    kinetic_scale: float
    energy_shift: float

    def __post_init__(self) -> None:
        if self.kinetic_scale <= 0.0:
            raise ValueError("kinetic_scale must be positive")
        u = self.ground_state.values
        norm_err = abs(total_integral(self.ground_state.with_values(u * u)) - 1.0)
        if norm_err > NORM_TOL:
            raise ValueError(f"ground state not normalized: |∫u² - 1| = {norm_err:.3e}")
        interior = u[1:-1]
        if np.any(interior < 0.0):
            raise ValueError("ground state changes sign on the interior (nodal state)")
        if not np.any(interior > 0.0):
            raise ValueError("ground state vanishes identically")
        residual = zero_mode_residual(self.potential, self.ground_state, self.kinetic_scale)
        if residual > RESIDUAL_TOL:
            raise ValueError(
                f"(V₀, u₀) is not a zero-energy eigenpair: residual {residual:.3e}"
            )


def _require_span(grid: Grid, low: float, high: float, name: str) -> None:
    if grid.x_min > low or grid.x_max < high:
        raise ValueError(
            f"domain too small for {name}: grid [{grid.x_min}, {grid.x_max}] "
            f"must span [{low}, {high}]"
        )


def harmonic_oscillator(grid: Grid) -> BaseProblem:
    """Harmonic oscillator in ħ=m=ω=1 units: κ=1/2, V₀ = x²/2 - 1/2.

    The Gaussian ground state is renormalized on the grid so its squared
    running integral saturates at exactly 1 at x_max.
    """
    _require_span(grid, -8.0, 8.0, "harmonic oscillator")
    x = grid.x
    potential = SampledFunction(grid, 0.5 * x * x - 0.5)
    u = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    ground = normalize(SampledFunction(grid, u))
    return BaseProblem(grid, potential, ground, kinetic_scale=0.5, energy_shift=0.5)


def reflectionless_well(grid: Grid) -> BaseProblem:
    """Solitonic sech² well: κ=1, V₀ = 1 - 2 sech²x, ground state ∝ sech x."""
    _require_span(grid, -12.0, 12.0, "reflectionless well")
    x = grid.x
    sech = 1.0 / np.cosh(x)
    potential = SampledFunction(grid, 1.0 - 2.0 * sech * sech)
    ground = normalize(SampledFunction(grid, sech / np.sqrt(2.0)))
    return BaseProblem(grid, potential, ground, kinetic_scale=1.0, energy_shift=1.0)


def numeric_ground_state(V: SampledFunction, kinetic_scale: float) -> BaseProblem:
    """BaseProblem from an arbitrary finite sampled potential.

    Finds the lowest FD eigenvalue by Sturm bisection, requires a spectral
    gap above 1e-8, and recovers the eigenvector by inverse iteration with a
    shift strictly below the ground level.  The shifted matrix is then a
    Stieltjes matrix, so the Thomas solve keeps every iterate strictly
    positive and the nodeless invariant holds by construction.
    """
    H = discretize(V, kinetic_scale)
    if H.size < 2:
        raise ValueError("grid too small for a numeric ground state")
    e0, e1 = lowest_eigenvalues(H, 2)
    gap = e1 - e0
    if gap <= GAP_TOL:
        raise ValueError(
            f"no spectral gap: E₁ - E₀ = {gap:.3e} (degenerate lowest level)"
        )
    shift = e0 - max(0.01 * gap, 1e-8 * max(1.0, abs(e0)))
    off = float(H.offdiagonal[0])
    shifted_diag = H.diagonal - shift
    w = np.ones(H.size)
    for _ in range(_INVERSE_ITERATIONS):
        w = solve_shifted(shifted_diag, off, w)
        w /= np.max(np.abs(w))
    if np.any(w < 0.0):
        raise ValueError("nodal ground state: inverse iteration produced a sign change")
    full = np.zeros(V.grid.n)
    full[1:-1] = w
    ground = normalize(SampledFunction(V.grid, full))
    shifted_potential = V.with_values(V.values - e0)
    return BaseProblem(
        V.grid, shifted_potential, ground, kinetic_scale=float(kinetic_scale), energy_shift=float(e0)
    )


def superpotential(bp: BaseProblem) -> SampledFunction:
    """Negative logarithmic derivative of the ground state, y₀ = -(ln u₀)'.

    Computed by differentiating ln u₀, which is exact wherever ln u₀ is a
    quadratic (the Gaussian catalog case).  Samples with u₀ ≤ 1e-12 are
    masked; the mask is eroded by one sample to keep stencil contamination
    out.
    """
    u = bp.ground_state.values
    raw_mask = u > LOG_MASK
    log_u = np.log(np.where(raw_mask, u, 1.0))
    y = -derivative(bp.ground_state.with_values(log_u)).values
    mask = raw_mask.copy()
    mask[1:] &= raw_mask[:-1]
    mask[:-1] &= raw_mask[1:]
    y = np.where(mask, y, 0.0)
    return SampledFunction(bp.grid, y, mask=mask)


def integration_factor(bp: BaseProblem) -> SampledFunction:
    """F₀ = u₀² samplewise; e^(-∫2y₀) up to the normalization constant."""
    u = bp.ground_state.values
    return SampledFunction(bp.grid, u * u)


def kink_integral(bp: BaseProblem) -> SampledFunction:
    """Running integral of u₀² from the left endpoint (ranges over [0, 1])."""
    return cumulative_integral(integration_factor(bp))
