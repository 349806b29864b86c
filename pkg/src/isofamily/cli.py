"""Command-line interface.

Subcommands: catalog, family, sweep2d, verify, limits.  Each run command
takes --config PATH or --preset fig1..fig5, with --out/--format overrides.
Exit codes: 0 success, 1 validation error, 2 verification failure, 3 I/O
error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import PRESET_NAMES, ConfigError, RunConfig, load_preset, parse_config
from .datasets import VerificationError, run_family, run_limits, run_sweep2d, run_verify
from .parameters import ParameterError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3

_DEFAULT_OUT = {
    "family": "family.csv",
    "sweep2d": "sweep2d.csv",
    "verify": "verify.json",
    "limits": "limits.csv",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isofamily",
        description="Families of strictly isospectral 1-D Schrodinger potentials "
        "and their zero modes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", help="list the built-in base problems")
    for name, help_text in (
        ("family", "emit x, V0, V, v, lambda_eff for one tuple or a 1-D sweep"),
        ("sweep2d", "emit (lambda1, lambda2, v_at_x) tables at fixed positions"),
        ("verify", "compare base and deformed FD spectra, write a JSON report"),
        ("limits", "emit the masked state-deleting limit potentials"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        source = cmd.add_mutually_exclusive_group(required=True)
        source.add_argument("--config", metavar="PATH", help="configuration file (flat JSON)")
        source.add_argument("--preset", choices=PRESET_NAMES, help="shipped figure preset")
        cmd.add_argument("--out", metavar="PATH", help="output path (overrides the config)")
        cmd.add_argument("--format", choices=("csv", "json"), help="output format override")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    if args.preset is not None:
        text = load_preset(args.preset)
    else:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise exc
    cfg = parse_config(text)
    if args.format is not None:
        cfg = dataclasses.replace(cfg, format=args.format)
    if args.out is not None:
        cfg = dataclasses.replace(cfg, out=args.out)
    return cfg


def _out_path(cfg: RunConfig, command: str) -> Path:
    name = cfg.out if cfg.out is not None else _DEFAULT_OUT[command]
    path = Path(name)
    if cfg.format == "json" and path.suffix == ".csv":
        path = path.with_suffix(".json")
    return path


def _print_catalog() -> None:
    print("available base problems:")
    print("  harmonic_oscillator  kappa=0.5  V0 = x^2/2 - 1/2   grid must span [-8, 8]")
    print("  reflectionless       kappa=1.0  V0 = 1 - 2 sech^2x grid must span [-12, 12]")
    print("  numeric              arbitrary x,V CSV potential; lowest eigenpair solved numerically")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "catalog":
        _print_catalog()
        return EXIT_OK
    try:
        cfg = _load_config(args)
        out = _out_path(cfg, args.command)
        if args.command == "family":
            if cfg.mode == "sweep2d":
                raise ConfigError("family needs 'lambdas' or a 1-D sweep, not sweep2d")
            written = run_family(cfg, out)
        elif args.command == "sweep2d":
            if cfg.mode != "sweep2d":
                raise ConfigError("sweep2d needs the sweep2d_* keys in the configuration")
            written = run_sweep2d(cfg, out)
        elif args.command == "limits":
            written = run_limits(cfg, out)
        else:
            report, written = run_verify(cfg, out)
            for path in written:
                print(f"wrote {path}")
            status = "pass" if report.passed else "FAIL"
            print(
                f"verify {status}: max|dE| = {report.max_abs_diff:.3e} "
                f"(tol {report.tol:.1e}, k={report.k}), "
                f"zero-mode residual {report.zero_mode_residual:.3e}"
            )
            return EXIT_OK if report.passed else EXIT_VERIFICATION
        for path in written:
            print(f"wrote {path}")
        return EXIT_OK
    except (ConfigError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
