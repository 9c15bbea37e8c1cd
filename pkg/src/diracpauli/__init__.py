"""Bound states of a neutral spin-1/2 particle with an anomalous magnetic
moment in the central field a + b/r, within an energy-dependent mass
profile that makes the radial problem exactly solvable.

The package computes the closed-form energies and normalized radial
wavefunctions for both solution families and verifies every closed form
with independent numerical oracles: analytic-residual checks against the
radial equations, a shooting-method eigenvalue search, and exact
Gauss-Laguerre quadrature for the normalization integrals.
"""

from ._kernels import USE_NUMBA
from .core import (
    Branch,
    Convention,
    FieldConfig,
    QuantumNumbers,
    electric_field,
    mass_ode_check,
    mass_profile,
    resolve_convention,
)
from .errors import (
    AmbiguousBranchError,
    BracketError,
    ComplexExponentError,
    DiracPauliError,
    DomainError,
    NoAdmissibleBranchError,
    NonNormalizableError,
    NoSquareCompletionError,
    UnsupportedFamilyError,
    WrongStateError,
)
from .nu import (
    HypergeometricTypeEquation,
    NUReduction,
    Polynomial,
    WeightSpec,
    candidate_ks,
    lambda_n,
    reduce,
    rodrigues_polynomial,
    select_integrable_reduction,
    weight_spec,
)
from .oracle import (
    FirstOrderResiduals,
    ResidualReport,
    ShootingResult,
    SpectrumComparison,
    canonical_residual,
    compare_spectrum,
    first_order_residual,
    shoot_eigenvalue,
    standard_grid,
)
from .special import (
    QuadratureRule,
    gauss_laguerre,
    laguerre,
    laguerre_derivative,
    log_gamma,
)
from .spectrum import (
    BoundState,
    CanonicalRadialODE,
    DegeneracyReport,
    NormalizationData,
    PartnerMode,
    StateKind,
    bound_state,
    canonical_equation,
    classify_state,
    coefficients,
    degeneracy_scan,
    energy_level,
    normalization_closed,
    normalization_numeric,
    quantization_residual,
    wavefunction_partner,
    wavefunction_upper,
)
from .verify import build_report

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA",
    "Branch",
    "Convention",
    "FieldConfig",
    "QuantumNumbers",
    "electric_field",
    "mass_ode_check",
    "mass_profile",
    "resolve_convention",
    "AmbiguousBranchError",
    "BracketError",
    "ComplexExponentError",
    "DiracPauliError",
    "DomainError",
    "NoAdmissibleBranchError",
    "NonNormalizableError",
    "NoSquareCompletionError",
    "UnsupportedFamilyError",
    "WrongStateError",
    "HypergeometricTypeEquation",
    "NUReduction",
    "Polynomial",
    "WeightSpec",
    "candidate_ks",
    "lambda_n",
    "reduce",
    "rodrigues_polynomial",
    "select_integrable_reduction",
    "weight_spec",
    "FirstOrderResiduals",
    "ResidualReport",
    "ShootingResult",
    "SpectrumComparison",
    "canonical_residual",
    "compare_spectrum",
    "first_order_residual",
    "shoot_eigenvalue",
    "standard_grid",
    "QuadratureRule",
    "gauss_laguerre",
    "laguerre",
    "laguerre_derivative",
    "log_gamma",
    "BoundState",
    "CanonicalRadialODE",
    "DegeneracyReport",
    "NormalizationData",
    "PartnerMode",
    "StateKind",
    "bound_state",
    "canonical_equation",
    "classify_state",
    "coefficients",
    "degeneracy_scan",
    "energy_level",
    "normalization_closed",
    "normalization_numeric",
    "quantization_residual",
    "wavefunction_partner",
    "wavefunction_upper",
    "build_report",
]
