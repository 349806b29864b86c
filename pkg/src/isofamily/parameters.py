"""Validation of the deformation parameters.

Every deformation parameter must avoid the closed interval [-1, 0]: the
running integral of any normalized squared zero mode spans [0, 1], so
lambda = 0 makes the denominator vanish at the left endpoint and
lambda = -1 at the right one.  Half-line problems (hard wall at x = 0)
additionally require lambda > 0.
"""

from __future__ import annotations

from collections.abc import Iterable

FORBIDDEN_LOW = -1.0
FORBIDDEN_HIGH = 0.0


class ParameterError(ValueError):
    """A deformation parameter falls in the deleted interval or is otherwise inadmissible."""


def check_parameter(lam: float, half_line: bool = False, context: str = "") -> float:
    """Validate a single deformation parameter, returning it as float."""
    lam = float(lam)
    where = f" ({context})" if context else ""
    if not lam == lam or lam in (float("inf"), float("-inf")):
        raise ParameterError(f"parameter must be finite, got {lam}{where}")
    if FORBIDDEN_LOW <= lam <= FORBIDDEN_HIGH:
        raise ParameterError(
            f"parameter {lam} in deleted interval [-1,0]{where}"
        )
    if half_line and lam <= 0.0:
        raise ParameterError(
            f"half-line problems require positive parameters, got {lam}{where}"
        )
    return lam


def check_parameters(lambdas: Iterable[float], half_line: bool = False) -> tuple[float, ...]:
    """Validate a parameter list; empty lists are rejected."""
    out = tuple(
        check_parameter(lam, half_line, context=f"index {i}")
        for i, lam in enumerate(lambdas)
    )
    if not out:
        raise ParameterError("parameter list must not be empty")
    return out
