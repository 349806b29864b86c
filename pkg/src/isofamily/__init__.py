"""Multi-parameter families of strictly isospectral 1-D Schrodinger potentials.

Starting from a potential with its normalized zero-energy ground state, the
package builds deformed potentials sharing the full spectrum together with
their true zero modes, both step by step (iterated Darboux transformations
at zero factorization energy) and in closed form through the Viete
reduction of the denominators, and certifies the spectra numerically.
"""

from .base import (
    BaseProblem,
    harmonic_oscillator,
    integration_factor,
    numeric_ground_state,
    reflectionless_well,
    superpotential,
)
from .chain import (
    ChainResult,
    ParamChain,
    chain_modes,
    chain_potential,
    iterate_mode,
    one_param_mode,
    one_param_potential,
    partner_potential,
    riccati_general_solution,
)
from .closed_form import (
    KinkDecomposition,
    VieteCoefficients,
    abraham_moses_limit_potential,
    admissible,
    closed_mode,
    closed_potential,
    elementary_symmetric,
    from_polynomial,
    kink_from_cumulative,
    kink_parameters,
    pursey_limit_potential,
    viete_coefficients,
)
from .config import ConfigError, RunConfig, load_preset, parse_config
from .datasets import VerificationError, run_family, run_limits, run_sweep2d, run_verify
from .grid import (
    Grid,
    SampledFunction,
    cumulative_integral,
    derivative,
    make_grid,
    normalize,
    sample,
    second_derivative,
    total_integral,
)
from .parameters import ParameterError
from .spectral import (
    SpectralReport,
    TridiagonalHamiltonian,
    discretize,
    lowest_eigenvalues,
    verify_isospectral,
    zero_mode_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BaseProblem",
    "ChainResult",
    "ConfigError",
    "Grid",
    "KinkDecomposition",
    "ParamChain",
    "ParameterError",
    "RunConfig",
    "SampledFunction",
    "SpectralReport",
    "TridiagonalHamiltonian",
    "VerificationError",
    "VieteCoefficients",
    "abraham_moses_limit_potential",
    "admissible",
    "chain_modes",
    "chain_potential",
    "closed_mode",
    "closed_potential",
    "cumulative_integral",
    "derivative",
    "discretize",
    "elementary_symmetric",
    "from_polynomial",
    "harmonic_oscillator",
    "integration_factor",
    "iterate_mode",
    "kink_from_cumulative",
    "kink_parameters",
    "load_preset",
    "lowest_eigenvalues",
    "make_grid",
    "normalize",
    "numeric_ground_state",
    "one_param_mode",
    "one_param_potential",
    "parse_config",
    "partner_potential",
    "pursey_limit_potential",
    "reflectionless_well",
    "riccati_general_solution",
    "run_family",
    "run_limits",
    "run_sweep2d",
    "run_verify",
    "sample",
    "second_derivative",
    "superpotential",
    "total_integral",
    "verify_isospectral",
    "viete_coefficients",
    "zero_mode_residual",
]
