"""Physical configuration, quantum-number bookkeeping, and radial profiles.

Everything here is a pure function of immutable inputs.  Natural units
(hbar = c = 1) are used throughout; all quantities are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError


class Branch(Enum):
    """The two independent radial solution families."""

    PLUS = "plus"
    MINUS = "minus"


class Convention(Enum):
    """How sign ambiguities of the closed-form expressions are resolved.

    LITERAL evaluates the published closed forms exactly as printed (the
    decay rate is mu*a, which must be positive).  SIGN_AWARE enforces
    normalizability by taking the decay rate |mu*a| and solving the
    quantization relation for the energy.  CORRECTED_MINUS additionally
    repairs the sign of the minus-branch constant term so the angular
    exponent stays real; it is the default for the minus branch.
    """

    LITERAL = "paper-literal"
    SIGN_AWARE = "sign-aware"
    CORRECTED_MINUS = "corrected-minus"


def resolve_convention(branch: Branch, convention: Convention | None) -> Convention:
    """Branch-dependent default: SIGN_AWARE for plus, CORRECTED_MINUS for minus."""
    if convention is not None:
        return convention
    return Convention.SIGN_AWARE if branch is Branch.PLUS else Convention.CORRECTED_MINUS


@dataclass(frozen=True)
class FieldConfig:
    """Inputs defining the central electric field a + b/r and the moment mu.

    No sign restrictions at construction; individual operations decide
    which sign combinations they support.
    """

    a: float
    b: float
    mu: float

    def __post_init__(self):
        for name in ("a", "b", "mu"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"FieldConfig.{name} must be finite, got {value}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial degree n and orbital quantum number ell, both nonnegative."""

    n: int
    ell: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be >= 0, got {self.n}")
        if self.ell < 0:
            raise DomainError(f"ell must be >= 0, got {self.ell}")


def electric_field(cfg: FieldConfig, r: float) -> float:
    """Field strength a + b/r at radius r > 0."""
    if r <= 0:
        raise DomainError(f"electric_field requires r > 0, got {r}")
    return cfg.a + cfg.b / r


def mass_profile(branch: Branch, epsilon: float, r: float,
                 constant: float = 0.0) -> float:
    """Energy-dependent mass -1/r -+ epsilon (+ for minus branch).

    ``constant`` is the integration constant of the defining first-order
    mass equation; it is zero in the model proper and exposed only so the
    choice is visible.
    """
    if r <= 0:
        raise DomainError(f"mass_profile requires r > 0, got {r}")
    if branch is Branch.PLUS:
        return -1.0 / r - epsilon + constant
    return -1.0 / r + epsilon + constant


def mass_ode_check(branch: Branch, epsilon: float, r: float, h: float) -> float:
    """Residual of the defining mass equation dM/dr = (eps +- M)^2.

    Returns |centered finite difference of the mass profile at r minus the
    squared combination|.  Since the profile satisfies the equation
    exactly, the result is pure O(h^2) finite-difference error.
    """
    if h <= 0:
        raise DomainError(f"mass_ode_check requires h > 0, got {h}")
    if r <= h:
        raise DomainError(f"mass_ode_check requires r > h, got r={r}, h={h}")
    fd = (mass_profile(branch, epsilon, r + h)
          - mass_profile(branch, epsilon, r - h)) / (2.0 * h)
    m = mass_profile(branch, epsilon, r)
    if branch is Branch.PLUS:
        target = (epsilon + m) ** 2
    else:
        target = (epsilon - m) ** 2
    return abs(fd - target)
