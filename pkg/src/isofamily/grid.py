"""Uniform grids, sampled real functions, and the discrete calculus on them.

All quantities in the construction live on a shared uniform grid: functions
are plain value arrays, integrals are composite trapezoid sums, derivatives
are second-order finite differences (central in the interior, one-sided at
the endpoints).  Trapezoid quadrature and the O(h²) stencils are paired on
purpose: the fundamental-theorem identity derivative(cumulative_integral(f))
≈ f then holds to O(h²) on the interior.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform 1-D grid on [x_min, x_max] with n samples.

    The left endpoint doubles as the lower integration limit of every
    running integral (truncated full line, or half line when x_min = 0).
    """

    x_min: float
    x_max: float
    n: int
    x: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"grid needs at least 3 points, got n={self.n}")
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_min >= self.x_max:
            raise ValueError(
                f"invalid bounds: x_min={self.x_min} must be < x_max={self.x_max}"
            )
        object.__setattr__(self, "x", np.linspace(self.x_min, self.x_max, self.n))

    @property
    def h(self) -> float:
        """Grid spacing (x_max - x_min)/(n - 1)."""
        return (self.x_max - self.x_min) / (self.n - 1)

    def index_of(self, x0: float) -> int:
        """Index of the sample nearest to x0 (x0 must lie inside the grid)."""
        if not (self.x_min <= x0 <= self.x_max):
            raise ValueError(f"x={x0} outside grid [{self.x_min}, {self.x_max}]")
        return int(round((x0 - self.x_min) / self.h))


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real-valued function sampled on a Grid.

    ``mask`` (optional) marks samples whose values are trustworthy; carriers
    with singular regions (log-derivatives in wavefunction tails, the
    state-deleting limit potentials) set it.  Values must be finite wherever
    the mask is true; masked-out values may be anything (typically NaN).
    """

    grid: Grid
    values: np.ndarray
    mask: np.ndarray | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"values shape {values.shape} does not match grid size {self.grid.n}"
            )
        if self.mask is not None:
            mask = np.asarray(self.mask, dtype=bool)
            object.__setattr__(self, "mask", mask)
            if mask.shape != (self.grid.n,):
                raise ValueError("mask shape does not match grid size")
            checked = values[mask]
        else:
            checked = values
        if not np.all(np.isfinite(checked)):
            raise ValueError("sampled values must be finite (outside any mask)")

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def with_values(self, values: np.ndarray, mask: np.ndarray | None = None) -> "SampledFunction":
        """New function on the same grid."""
        return SampledFunction(self.grid, values, mask)

    def __call__(self, x0: float) -> float:
        """Value at the grid sample nearest to x0."""
        return float(self.values[self.grid.index_of(x0)])


def make_grid(x_min: float, x_max: float, n: int) -> Grid:
    """Build a uniform grid; raises ValueError for invalid bounds or n < 3."""
    return Grid(float(x_min), float(x_max), int(n))


def sample(grid: Grid, fn) -> SampledFunction:
    """Sample a vectorized callable on the grid."""
    return SampledFunction(grid, np.asarray(fn(grid.x), dtype=float))


def derivative(f: SampledFunction) -> SampledFunction:
    """First derivative: central differences, second-order one-sided endpoints.

    Exact for polynomials up to degree 2; O(h²) truncation error otherwise.
    """
    v = f.values
    h = f.grid.h
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    out[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    return f.with_values(out)


def second_derivative(f: SampledFunction) -> SampledFunction:
    """Second derivative: 3-point interior stencil, O(h²).

    Endpoint values are quadratically extrapolated from the three adjacent
    interior stencil values, keeping smooth-function accuracy at the ends.
    """
    v = f.values
    h = f.grid.h
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)
    out[0] = 3.0 * out[1] - 3.0 * out[2] + out[3]
    out[-1] = 3.0 * out[-2] - 3.0 * out[-3] + out[-4]
    return f.with_values(out)


def cumulative_integral(f: SampledFunction) -> SampledFunction:
    """Trapezoid running integral from the grid's left endpoint.

    The value at x_min is exactly 0, and the result is monotone
    nondecreasing whenever f >= 0 (each increment is a nonnegative sum).
    """
    v = f.values
    h = f.grid.h
    out = np.empty_like(v)
    out[0] = 0.0
    np.cumsum((v[1:] + v[:-1]) * (0.5 * h), out=out[1:])
    return f.with_values(out)


def total_integral(f: SampledFunction) -> float:
    """Trapezoid integral over the whole grid.

    Bit-identical to the last sample of cumulative_integral(f): both use the
    same running summation, so saturation values agree exactly.
    """
    v = f.values
    h = f.grid.h
    return float(np.cumsum((v[1:] + v[:-1]) * (0.5 * h))[-1])


def normalize(f: SampledFunction) -> SampledFunction:
    """Scale f so that the trapezoid integral of f² equals 1.

    Raises ValueError on (numerically) zero-norm input.  Idempotent to
    rounding: normalize(normalize(f)) == normalize(f) within 1e-12.
    """
    norm_sq = total_integral(f.with_values(f.values * f.values))
    if not norm_sq > 0.0:
        raise ValueError("cannot normalize a function with zero norm")
    return f.with_values(f.values / np.sqrt(norm_sq))
