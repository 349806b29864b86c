"""Finite-difference Hamiltonians and the numerical isospectrality certificate.

The operator -κ d²/dx² + V(x) with Dirichlet conditions at the grid ends is
discretized as a symmetric tridiagonal matrix over the interior samples.
Eigenvalues come from Sturm-sequence bisection (deterministic, absolute
tolerance 1e-10).  Base and deformed spectra are always compared on the
identical grid with the identical solver, so the part of the truncation
error shared by both operators cancels in the difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import closed_form
from .grid import Grid, SampledFunction, second_derivative
from .tridiag import smallest_eigenvalues

EIGENVALUE_TOL = 1e-10
MODE_MASK_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class TridiagonalHamiltonian:
    """Symmetric tridiagonal FD Hamiltonian over the interior grid points."""

    diagonal: np.ndarray
    offdiagonal: np.ndarray
    grid: Grid
    kinetic_scale: float

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalue comparison between a base and a deformed potential."""

    base_levels: tuple[float, ...]
    deformed_levels: tuple[float, ...]
    max_abs_diff: float
    zero_mode_residual: float
    k: int
    parameters: tuple[float, ...]
    tol: float
    passed: bool
    lambda_eff: float | None = None

    def __post_init__(self) -> None:
        for levels in (self.base_levels, self.deformed_levels):
            if any(b < a for a, b in zip(levels, levels[1:])):
                raise ValueError("levels must be ascending")

    def to_dict(self) -> dict:
        return {
            "base_levels": list(self.base_levels),
            "deformed_levels": list(self.deformed_levels),
            "max_abs_diff": self.max_abs_diff,
            "zero_mode_residual": self.zero_mode_residual,
            "k": self.k,
            "parameters": list(self.parameters),
            "tol": self.tol,
            "passed": self.passed,
            "lambda_eff": self.lambda_eff,
        }


def discretize(V: SampledFunction, kinetic_scale: float) -> TridiagonalHamiltonian:
    """Standard 3-point Laplacian plus potential, Dirichlet boundaries.

    Diagonal entries are 2κ/h² + V(x_i) over interior samples, the constant
    off-diagonal is -κ/h².
    """
    if kinetic_scale <= 0.0:
        raise ValueError("kinetic_scale must be positive")
    if not np.all(np.isfinite(V.values)):
        raise ValueError("potential must be finite on the grid")
    h = V.grid.h
    t = kinetic_scale / (h * h)
    diagonal = 2.0 * t + V.values[1:-1]
    offdiagonal = np.full(V.grid.n - 3, -t)
    return TridiagonalHamiltonian(diagonal, offdiagonal, V.grid, float(kinetic_scale))


def lowest_eigenvalues(H: TridiagonalHamiltonian, k: int) -> np.ndarray:
    """k smallest eigenvalues, ascending, via Sturm bisection to 1e-10 absolute."""
    if not 1 <= k <= H.size:
        raise ValueError(f"k={k} out of range [1, {H.size}]")
    return smallest_eigenvalues(H.diagonal, float(H.offdiagonal[0]), k, EIGENVALUE_TOL)


def zero_mode_residual(V: SampledFunction, v: SampledFunction, kinetic_scale: float) -> float:
    """Relative residual ||-κ v'' + V v||₂ / ||v||₂ over the mask |v| > 1e-8."""
    if V.grid is not v.grid and (V.grid.n != v.grid.n or V.grid.h != v.grid.h):
        raise ValueError("potential and mode must share a grid")
    mask = np.abs(v.values) > MODE_MASK_THRESHOLD
    if v.mask is not None:
        mask &= v.mask
    if not np.any(mask):
        raise ValueError("empty mask: no samples with |v| above threshold")
    resid = -kinetic_scale * second_derivative(v).values + V.values * v.values
    return float(np.linalg.norm(resid[mask]) / np.linalg.norm(v.values[mask]))


def verify_isospectral(
    bp,
    lambdas,
    k: int,
    tol: float,
    perturbation: SampledFunction | None = None,
) -> SpectralReport:
    """Compare the k lowest FD levels of the base and deformed potentials.

    Both operators are discretized on the base problem's grid and solved with
    the same bisection solver; the report passes iff max_abs_diff <= tol.
    ``perturbation`` (test hook) is added to the deformed potential before
    discretization so that broken inputs demonstrably fail.
    """
    deformed = closed_form.closed_potential(bp, lambdas)
    mode = closed_form.closed_mode(bp, lambdas)
    if perturbation is not None:
        deformed = deformed.with_values(deformed.values + perturbation.values)
    kappa = bp.kinetic_scale
    base_levels = lowest_eigenvalues(discretize(bp.potential, kappa), k)
    deformed_levels = lowest_eigenvalues(discretize(deformed, kappa), k)
    diff = float(np.max(np.abs(base_levels - deformed_levels)))
    residual = zero_mode_residual(deformed, mode, kappa)
    viete = closed_form.viete_coefficients(lambdas)
    return SpectralReport(
        base_levels=tuple(float(e) for e in base_levels),
        deformed_levels=tuple(float(e) for e in deformed_levels),
        max_abs_diff=diff,
        zero_mode_residual=residual,
        k=k,
        parameters=tuple(float(lam) for lam in lambdas),
        tol=float(tol),
        passed=diff <= tol,
        lambda_eff=viete.lambda_eff,
    )
