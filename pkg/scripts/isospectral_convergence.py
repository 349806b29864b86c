#!/usr/bin/env python3
"""Grid-refinement study of the base-vs-deformed eigenvalue agreement.

The deformed potentials are exactly isospectral to the base potential as
differential operators; on a finite-difference grid the comparison is
floored by the eigenfunction-dependent O(h²) truncation bias.  This script
tabulates that floor: the max |E_k(base) - E_k(deformed)| over the lowest k
levels shrinks by ~4x per halving of h and the absolute level error behaves
the same way.

Usage: python scripts/isospectral_convergence.py [--levels 6]
"""

import argparse

import numpy as np

import isofamily as iso

CHAINS = ((0.2,), (0.1, 0.2), (5.0, 0.2, 1.0))
SIZES = (1001, 2001, 4001, 8001)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=6)
    args = parser.parse_args()
    k = args.levels

    header = f"{'n':>6} {'h':>9} {'|E-exact|':>11}" + "".join(
        f" {str(c):>16}" for c in CHAINS
    )
    print(header)
    print("-" * len(header))
    previous = None
    for n in SIZES:
        bp = iso.harmonic_oscillator(iso.make_grid(-10.0, 10.0, n))
        base = iso.lowest_eigenvalues(iso.discretize(bp.potential, bp.kinetic_scale), k)
        abs_err = float(np.max(np.abs(base - np.arange(k))))
        diffs = [iso.verify_isospectral(bp, c, k, 1.0).max_abs_diff for c in CHAINS]
        row = f"{n:>6} {bp.grid.h:>9.4f} {abs_err:>11.3e}" + "".join(
            f" {d:>16.3e}" for d in diffs
        )
        if previous is not None:
            ratios = ", ".join(f"{p / d:.2f}" for p, d in zip(previous, diffs))
            row += f"   (x{ratios} vs previous)"
        print(row)
        previous = diffs
    print()
    print("each halving of h divides the differences by ~4: the spectra agree")
    print("to the accuracy the 3-point discretization can resolve.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
