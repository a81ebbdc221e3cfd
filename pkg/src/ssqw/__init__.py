"""Two-dimensional split-step quantum walks with a one-defect coin.

Simulation of the walk on finite windows with exact interior dynamics, the
gap function and its closed-form zeros, explicit eigenvectors, threshold
resonances with generalized eigenfunctions, and localization probes.
"""

from .lattice import ScalarField, VectorState, Window, norms
from .operators import WalkOperator
from .params import (
    PRESETS,
    PSET_A,
    PSET_B,
    PSET_C,
    CoinParameters,
    StrongShiftParameters,
    essential_interval,
    load_parameters,
    require_strong_shift,
    validate_parameters,
)
from .spectral import (
    QuadratureSpec,
    build_eigenvector,
    eval_f,
    find_f_zeros,
    lambda0_closed,
    psi_lambda,
    unitary_eigenvalues,
)

__all__ = [
    "CoinParameters",
    "PRESETS",
    "PSET_A",
    "PSET_B",
    "PSET_C",
    "QuadratureSpec",
    "ScalarField",
    "StrongShiftParameters",
    "VectorState",
    "WalkOperator",
    "Window",
    "build_eigenvector",
    "essential_interval",
    "eval_f",
    "find_f_zeros",
    "lambda0_closed",
    "load_parameters",
    "norms",
    "psi_lambda",
    "require_strong_shift",
    "unitary_eigenvalues",
    "validate_parameters",
]

__version__ = "0.1.0"
