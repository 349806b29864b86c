"""Run configuration: a flat JSON key-value document.

Recognized keys
---------------
problem          "harmonic_oscillator" | "reflectionless" | "numeric"
potential_file   path to a two-column CSV "x,V" (numeric problems only)
half_line        bool, restricts parameters to be positive (default false)
x_min, x_max, n  grid specification (required)
kinetic_scale    κ; optional for catalog problems, required for numeric
lambdas          list of deformation parameters, each outside [-1, 0]
sweep_param_index, sweep_values | sweep_start/sweep_stop/sweep_count
                 1-D sweep replacing one entry of ``lambdas``
sweep2d_lambda1_start/stop/count, sweep2d_lambda2_start/stop/count, fixed_x
                 2-D parameter mesh evaluated at fixed positions
verify_k, verify_tol
                 spectral verification block
out              output path
format           "csv" | "json" (default "csv")

Exactly one of {lambdas-only, sweep, sweep2d} must be active.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .parameters import FORBIDDEN_HIGH, FORBIDDEN_LOW

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")

PROBLEMS = ("harmonic_oscillator", "reflectionless", "numeric")

_KNOWN_KEYS = {
    "problem", "potential_file", "half_line", "x_min", "x_max", "n",
    "kinetic_scale", "lambdas",
    "sweep_param_index", "sweep_values", "sweep_start", "sweep_stop", "sweep_count",
    "sweep2d_lambda1_start", "sweep2d_lambda1_stop", "sweep2d_lambda1_count",
    "sweep2d_lambda2_start", "sweep2d_lambda2_stop", "sweep2d_lambda2_count",
    "fixed_x", "verify_k", "verify_tol", "out", "format",
}


class ConfigError(ValueError):
    """Malformed or invalid run configuration; message names the offending key."""


@dataclass(frozen=True)
class SweepSpec:
    param_index: int
    values: tuple[float, ...]


@dataclass(frozen=True)
class Sweep2DSpec:
    lambda1: tuple[float, ...]
    lambda2: tuple[float, ...]
    fixed_x: tuple[float, ...]


@dataclass(frozen=True)
class VerifySpec:
    k: int = 6
    tol: float = 1e-6


@dataclass(frozen=True)
class RunConfig:
    problem: str
    x_min: float
    x_max: float
    n: int
    kinetic_scale: float | None
    lambdas: tuple[float, ...]
    sweep: SweepSpec | None
    sweep2d: Sweep2DSpec | None
    verify: VerifySpec | None
    potential_file: str | None
    half_line: bool
    out: str | None
    format: str

    @property
    def mode(self) -> str:
        if self.sweep2d is not None:
            return "sweep2d"
        if self.sweep is not None:
            return "sweep"
        return "lambdas"


def _require(doc: dict, key: str, kind, kind_name: str):
    if key not in doc:
        raise ConfigError(f"missing required key '{key}'")
    return _typed(doc, key, kind, kind_name)


def _typed(doc: dict, key: str, kind, kind_name: str):
    value = doc[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(f"key '{key}' must be {kind_name}, got {value!r}")
    return value


def _check_lambda(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    lam = float(value)
    if FORBIDDEN_LOW <= lam <= FORBIDDEN_HIGH:
        raise ConfigError(f"{where}: parameter in deleted interval [-1,0] (got {lam})")
    return lam


def _linspace(start: float, stop: float, count: int) -> tuple[float, ...]:
    if count < 2:
        return (start,)
    step = (stop - start) / (count - 1)
    return tuple(start + i * step for i in range(count))


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object of key-value pairs")
    unknown = sorted(set(doc) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown key '{unknown[0]}'")

    problem = _require(doc, "problem", str, "a string")
    if problem not in PROBLEMS:
        raise ConfigError(f"key 'problem' must be one of {PROBLEMS}, got {problem!r}")

    x_min = float(_require(doc, "x_min", float, "a number"))
    x_max = float(_require(doc, "x_max", float, "a number"))
    n = _require(doc, "n", int, "an integer")
    if x_min >= x_max:
        raise ConfigError(f"key 'x_min' ({x_min}) must be less than 'x_max' ({x_max})")
    if n < 3:
        raise ConfigError(f"key 'n' must be at least 3, got {n}")

    kinetic_scale = None
    if "kinetic_scale" in doc:
        kinetic_scale = float(_typed(doc, "kinetic_scale", float, "a number"))
        if kinetic_scale <= 0:
            raise ConfigError(f"key 'kinetic_scale' must be positive, got {kinetic_scale}")

    potential_file = None
    if problem == "numeric":
        potential_file = _require(doc, "potential_file", str, "a path string")
        if kinetic_scale is None:
            raise ConfigError("numeric problems require 'kinetic_scale'")
    elif "potential_file" in doc:
        raise ConfigError("key 'potential_file' only applies to numeric problems")

    half_line = bool(doc.get("half_line", False))
    if not isinstance(doc.get("half_line", False), bool):
        raise ConfigError("key 'half_line' must be a boolean")

    lambdas_raw = doc.get("lambdas", [])
    if not isinstance(lambdas_raw, list):
        raise ConfigError("key 'lambdas' must be a list of numbers")
    lambdas = tuple(_check_lambda(v, f"lambdas[{i}]") for i, v in enumerate(lambdas_raw))
    if half_line and any(lam <= 0 for lam in lambdas):
        raise ConfigError("half-line problems require positive parameters")

    sweep = None
    sweep_keys = {"sweep_param_index", "sweep_values", "sweep_start", "sweep_stop", "sweep_count"}
    if sweep_keys & set(doc):
        index = _require(doc, "sweep_param_index", int, "an integer")
        if "sweep_values" in doc:
            values_raw = _typed(doc, "sweep_values", list, "a list of numbers")
        else:
            start = float(_require(doc, "sweep_start", float, "a number"))
            stop = float(_require(doc, "sweep_stop", float, "a number"))
            count = _require(doc, "sweep_count", int, "an integer")
            if count < 1:
                raise ConfigError("key 'sweep_count' must be positive")
            values_raw = list(_linspace(start, stop, count))
        values = tuple(_check_lambda(v, f"sweep values[{i}]") for i, v in enumerate(values_raw))
        if not values:
            raise ConfigError("sweep requires at least one value")
        if not lambdas:
            raise ConfigError("sweep mode requires a base 'lambdas' tuple")
        if not 0 <= index < len(lambdas):
            raise ConfigError(
                f"key 'sweep_param_index' ({index}) out of range for {len(lambdas)} parameters"
            )
        sweep = SweepSpec(param_index=index, values=values)

    sweep2d = None
    s2_keys = {k for k in _KNOWN_KEYS if k.startswith("sweep2d_")} | {"fixed_x"}
    if s2_keys & set(doc):
        if sweep is not None:
            raise ConfigError("configure either a 1-D sweep or a 2-D sweep, not both")
        if lambdas:
            raise ConfigError("sweep2d mode does not take a base 'lambdas' tuple")
        axes = []
        for axis in ("lambda1", "lambda2"):
            start = float(_require(doc, f"sweep2d_{axis}_start", float, "a number"))
            stop = float(_require(doc, f"sweep2d_{axis}_stop", float, "a number"))
            count = _require(doc, f"sweep2d_{axis}_count", int, "an integer")
            if count < 1:
                raise ConfigError(f"key 'sweep2d_{axis}_count' must be positive")
            values = tuple(
                _check_lambda(v, f"sweep2d_{axis} values[{i}]")
                for i, v in enumerate(_linspace(start, stop, count))
            )
            axes.append(values)
        fixed_raw = _require(doc, "fixed_x", list, "a list of numbers")
        if not fixed_raw:
            raise ConfigError("key 'fixed_x' must not be empty")
        fixed = []
        for i, value in enumerate(fixed_raw):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"fixed_x[{i}] must be a number")
            if not x_min <= float(value) <= x_max:
                raise ConfigError(
                    f"fixed_x[{i}] = {value} outside grid [{x_min}, {x_max}]"
                )
            fixed.append(float(value))
        sweep2d = Sweep2DSpec(lambda1=axes[0], lambda2=axes[1], fixed_x=tuple(fixed))

    if sweep2d is None and sweep is None and not lambdas:
        raise ConfigError("missing 'lambdas' (or a sweep/sweep2d block)")

    verify = None
    if "verify_k" in doc or "verify_tol" in doc:
        k = _typed(doc, "verify_k", int, "an integer") if "verify_k" in doc else 6
        tol = float(_typed(doc, "verify_tol", float, "a number")) if "verify_tol" in doc else 1e-6
        if k < 1:
            raise ConfigError("key 'verify_k' must be positive")
        if tol <= 0:
            raise ConfigError("key 'verify_tol' must be positive")
        verify = VerifySpec(k=k, tol=tol)

    out = _typed(doc, "out", str, "a path string") if "out" in doc else None
    fmt = _typed(doc, "format", str, "a string") if "format" in doc else "csv"
    if fmt not in ("csv", "json"):
        raise ConfigError(f"key 'format' must be 'csv' or 'json', got {fmt!r}")

    return RunConfig(
        problem=problem,
        x_min=x_min,
        x_max=x_max,
        n=n,
        kinetic_scale=kinetic_scale,
        lambdas=lambdas,
        sweep=sweep,
        sweep2d=sweep2d,
        verify=verify,
        potential_file=potential_file,
        half_line=half_line,
        out=out,
        format=fmt,
    )


def load_preset(name: str) -> str:
    """Text of a shipped preset configuration (fig1..fig5)."""
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset '{name}': expected one of {PRESET_NAMES}")
    return resources.files("isofamily").joinpath(f"presets/{name}.json").read_text(encoding="utf-8")
