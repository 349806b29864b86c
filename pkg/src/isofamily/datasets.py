"""Dataset generation behind the CLI: family curves, 2-D sweeps, limits, verification.

All emitters are deterministic: numbers are written as shortest round-trip
decimals, column order is fixed, line endings are LF.  Every zero-mode
column is normalization-checked before anything is written; a violation
aborts the run instead of producing a bad file.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from . import closed_form
from .base import BaseProblem, harmonic_oscillator, numeric_ground_state, reflectionless_well
from .config import RunConfig
from .grid import SampledFunction, make_grid, total_integral
from .spectral import SpectralReport, verify_isospectral

NORMALIZATION_GATE = 1e-6
FORMAT_VERSION = 1


class VerificationError(RuntimeError):
    """A self-check on the produced data failed; nothing was written."""


def build_problem(cfg: RunConfig) -> BaseProblem:
    grid = make_grid(cfg.x_min, cfg.x_max, cfg.n)
    if cfg.problem == "harmonic_oscillator":
        return harmonic_oscillator(grid)
    if cfg.problem == "reflectionless":
        return reflectionless_well(grid)
    x, v = _read_potential_file(cfg.potential_file)
    if len(x) != cfg.n or abs(x[0] - cfg.x_min) > 1e-9 or abs(x[-1] - cfg.x_max) > 1e-9:
        raise VerificationError(
            f"potential file grid ({x[0]}..{x[-1]}, {len(x)} points) does not match "
            f"the configured grid ({cfg.x_min}..{cfg.x_max}, {cfg.n} points)"
        )
    spacing = np.diff(x)
    if np.max(np.abs(spacing - spacing[0])) > 1e-9 * max(1.0, abs(spacing[0])):
        raise VerificationError("potential file must be sampled on a uniform grid")
    return numeric_ground_state(SampledFunction(grid, v), cfg.kinetic_scale)


def _read_potential_file(path: str) -> tuple[np.ndarray, np.ndarray]:
    xs: list[float] = []
    vs: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row_index, row in enumerate(csv.reader(fh)):
            if not row:
                continue
            try:
                x, v = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if row_index == 0:
                    continue  # header row
                raise VerificationError(f"potential file row {row_index + 1}: expected 'x,V'")
            xs.append(x)
            vs.append(v)
    if len(xs) < 3:
        raise VerificationError("potential file needs at least 3 samples")
    return np.asarray(xs), np.asarray(vs)


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _write_json(path: Path, metadata: dict, header: list[str], rows) -> None:
    payload = {
        "metadata": metadata,
        "header": header,
        "rows": [[v for v in row] for row in rows],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def _write_meta(path: Path, metadata: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metadata, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _emit(cfg: RunConfig, out: Path, metadata: dict, header: list[str], rows) -> list[Path]:
    if cfg.format == "json":
        _write_json(out, metadata, header, rows)
        return [out]
    _write_csv(out, header, rows)
    meta_path = out.with_suffix(out.suffix + ".meta.json")
    _write_meta(meta_path, metadata)
    return [out, meta_path]


def _base_metadata(cfg: RunConfig, bp: BaseProblem, command: str) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "command": command,
        "problem": cfg.problem,
        "grid": {"x_min": cfg.x_min, "x_max": cfg.x_max, "n": cfg.n},
        "kinetic_scale": bp.kinetic_scale,
        "energy_shift": bp.energy_shift,
    }


def _checked_mode(bp: BaseProblem, lambdas) -> SampledFunction:
    mode = closed_form.closed_mode(bp, lambdas)
    err = abs(total_integral(mode.with_values(mode.values ** 2)) - 1.0)
    if err > NORMALIZATION_GATE:
        raise VerificationError(
            f"zero mode for {tuple(lambdas)} failed the normalization check: |∫v²-1| = {err:.3e}"
        )
    return mode


def _family_tuples(cfg: RunConfig) -> list[tuple[float, ...]]:
    if cfg.sweep is None:
        return [cfg.lambdas]
    tuples = []
    for value in cfg.sweep.values:
        lams = list(cfg.lambdas)
        lams[cfg.sweep.param_index] = value
        tuples.append(tuple(lams))
    return tuples


def run_family(cfg: RunConfig, out: Path) -> list[Path]:
    """Emit x, V0, V, v, lambda_eff stacked per parameter tuple."""
    bp = build_problem(cfg)
    tuples = _family_tuples(cfg)
    header = ["x", "V0", "V", "v", "lambda_eff"]
    rows: list[tuple] = []
    described = []
    for lams in tuples:
        vc = closed_form.viete_coefficients(lams)
        mode = _checked_mode(bp, lams)
        potential = closed_form.closed_potential(bp, lams)
        described.append({"lambdas": list(lams), "lambda_eff": vc.lambda_eff})
        leff = float("nan") if vc.lambda_eff is None else vc.lambda_eff
        for i in range(cfg.n):
            rows.append(
                (
                    float(bp.grid.x[i]),
                    float(bp.potential.values[i]),
                    float(potential.values[i]),
                    float(mode.values[i]),
                    leff,
                )
            )
    metadata = _base_metadata(cfg, bp, "family")
    metadata["tuples"] = described
    return _emit(cfg, out, metadata, header, rows)


def run_sweep2d(cfg: RunConfig, out: Path) -> list[Path]:
    """Emit (lambda1, lambda2, v_at_x) tables, one file per fixed x."""
    bp = build_problem(cfg)
    spec = cfg.sweep2d
    header = ["lambda1", "lambda2", "v_at_x"]
    written: list[Path] = []
    for x0 in spec.fixed_x:
        index = bp.grid.index_of(x0)
        rows = []
        for lam1 in spec.lambda1:
            for lam2 in spec.lambda2:
                mode = _checked_mode(bp, (lam1, lam2))
                rows.append((lam1, lam2, float(mode.values[index])))
        metadata = _base_metadata(cfg, bp, "sweep2d")
        metadata["fixed_x"] = x0
        metadata["grid_x"] = float(bp.grid.x[index])
        if len(spec.fixed_x) == 1:
            target = out
        else:
            target = out.with_name(f"{out.stem}_x{x0}{out.suffix}")
        written.extend(_emit(cfg, target, metadata, header, rows))
    return written


def run_verify(cfg: RunConfig, out: Path) -> tuple[SpectralReport, list[Path]]:
    """Write a spectral comparison report; the caller maps failure to exit status."""
    if cfg.verify is None:
        raise VerificationError("verify requires 'verify_k'/'verify_tol' in the configuration")
    if cfg.mode != "lambdas":
        raise VerificationError("verify runs on a single parameter tuple, not a sweep")
    bp = build_problem(cfg)
    report = verify_isospectral(bp, cfg.lambdas, cfg.verify.k, cfg.verify.tol)
    payload = _base_metadata(cfg, bp, "verify")
    payload.update(report.to_dict())
    _write_meta(out, payload)
    return report, [out]


def run_limits(cfg: RunConfig, out: Path) -> list[Path]:
    """Emit the two state-deleting limit potentials with validity masks."""
    bp = build_problem(cfg)
    header = ["x", "V0", "V_limit", "mask"]
    written: list[Path] = []
    for name, limit in (
        ("pursey", closed_form.pursey_limit_potential(bp)),
        ("abraham_moses", closed_form.abraham_moses_limit_potential(bp)),
    ):
        rows = []
        for i in range(cfg.n):
            valid = bool(limit.mask[i])
            rows.append(
                (
                    float(bp.grid.x[i]),
                    float(bp.potential.values[i]),
                    float(limit.values[i]) if valid else float("nan"),
                    int(valid),
                )
            )
        metadata = _base_metadata(cfg, bp, "limits")
        metadata["limit"] = name
        target = out.with_name(f"{out.stem}_{name}{out.suffix}")
        written.extend(_emit(cfg, target, metadata, header, rows))
    return written
