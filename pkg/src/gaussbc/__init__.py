"""Gaussian phase-space toolkit for bit-commitment cheating attacks.

The main entry points are re-exported here; see the submodules for the
full API.
"""

from .attack import AttackReport, Protocol, build_attack, concealment, perfect_cheat, sweep
from .errors import (
    CertificationError,
    DimensionError,
    GaugeError,
    GaussianError,
    NumericError,
    PhysicalityError,
    PreconditionError,
)
from .metrics import (
    DistinguishabilityReport,
    bhattacharyya,
    distinguishability,
    fidelity,
    guessing_probability,
    oracle_commuting,
    overlap,
    trace_distance_bounds,
    trace_distance_pure,
)
from .purification import (
    BipartiteGaussianState,
    intrinsic_purify,
    relate_purifications,
    tmsv,
)
from .state import (
    GaussianState,
    ScaledGaussian,
    ThermalForm,
    apply_unitary,
    partial_trace,
    sqrt_state,
    tensor,
    thermal_form,
    validate,
)
from .symplectic import (
    GaussianUnitary,
    NormalModeDecomposition,
    WilliamsonDecomposition,
    is_symplectic,
    normal_mode_decompose,
    omega,
    random_covariance,
    random_symplectic,
    star_conjugate,
    symplectic_eigenvalues,
    williamson,
)

__all__ = [
    "AttackReport",
    "BipartiteGaussianState",
    "CertificationError",
    "DimensionError",
    "DistinguishabilityReport",
    "GaugeError",
    "GaussianError",
    "GaussianState",
    "GaussianUnitary",
    "NormalModeDecomposition",
    "NumericError",
    "PhysicalityError",
    "PreconditionError",
    "Protocol",
    "ScaledGaussian",
    "ThermalForm",
    "WilliamsonDecomposition",
    "apply_unitary",
    "bhattacharyya",
    "build_attack",
    "concealment",
    "distinguishability",
    "fidelity",
    "guessing_probability",
    "intrinsic_purify",
    "is_symplectic",
    "normal_mode_decompose",
    "omega",
    "oracle_commuting",
    "overlap",
    "partial_trace",
    "perfect_cheat",
    "random_covariance",
    "random_symplectic",
    "relate_purifications",
    "sqrt_state",
    "star_conjugate",
    "sweep",
    "symplectic_eigenvalues",
    "tensor",
    "thermal_form",
    "tmsv",
    "trace_distance_bounds",
    "trace_distance_pure",
    "validate",
    "williamson",
]

__version__ = "0.1.0"
