"""Closed-form bound-state spectrum and wavefunctions.

Both radial families reduce to the canonical equation

    y'' + (3/r) y' + (1/r^2) [ -c1 r - c2^2 r^2 - c3sq ] y = 0,

whose normalizable solutions are r^{L-1} e^{-c2 r} L_n^{2L}(2 c2 r) with
L = sqrt(1 + c3sq), quantized by the linear relation
c1(eps) = -2 c2 (n + L + 1/2).  This module builds the coefficient sets
for either branch under explicit sign conventions, solves for the energy,
evaluates the normalized wavefunctions and their partner components, and
provides both the closed-form and the quadrature route to the
normalization constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .core import Branch, Convention, FieldConfig, QuantumNumbers, resolve_convention
from .errors import ComplexExponentError, DomainError, NonNormalizableError
from .nu import HypergeometricTypeEquation, Polynomial
from .special import gauss_laguerre, laguerre, laguerre_derivative, log_gamma

_QUANT_RTOL = 1e-12


class StateKind(Enum):
    PARTICLE = "particle"
    ANTIPARTICLE = "antiparticle"
    THRESHOLD = "threshold"


class PartnerMode(Enum):
    """How the second radial component is produced.

    RELATION derives it from the first-order coupling applied to the
    closed-form upper component; the pair then satisfies the full system
    by construction.  LITERAL evaluates the published partner expression
    exactly as printed, which omits the field and centrifugal terms, and
    is kept for comparison.
    """

    RELATION = "relation-derived"
    LITERAL = "paper-literal"


def _c3sq(branch: Branch, conv: Convention, ell: int, mu: float, b: float) -> float:
    mb = mu * b
    if branch is Branch.PLUS:
        return (1.0 + ell) * (ell + 1.0 - 2.0 * mb) + mb * mb
    if conv is Convention.CORRECTED_MINUS:
        return (1.0 + ell) * (ell + 1.0 + 2.0 * mb) + mb * mb
    return (1.0 + ell) * (2.0 * mb - ell - 1.0) + mb * mb


def _angular_exponent(branch: Branch, conv: Convention, ell: int,
                      mu: float, b: float) -> tuple[float, float]:
    c3 = _c3sq(branch, conv, ell, mu, b)
    one_plus = 1.0 + c3
    if one_plus <= 0.0:
        raise ComplexExponentError(
            f"1 + c3sq = {one_plus!r} <= 0 for branch={branch.value}, "
            f"convention={conv.value}, ell={ell}, mu*b={mu * b!r}", one_plus)
    return c3, math.sqrt(one_plus)


@dataclass(frozen=True)
class CanonicalRadialODE:
    """Coefficients of the shared radial equation for one branch and energy.

    c1 multiplies 1/r, c2 is the exponential decay rate, c3sq the constant
    in the centrifugal-like term, and L = sqrt(1 + c3sq).
    """

    c1: float
    c2: float
    c3sq: float
    L: float
    branch: Branch
    convention: Convention

    def __post_init__(self):
        one_plus = 1.0 + self.c3sq
        if one_plus <= 0.0:
            raise ComplexExponentError(
                f"1 + c3sq = {one_plus!r} <= 0", one_plus)
        if self.c2 <= 0.0:
            raise NonNormalizableError(
                f"decay rate c2 = {self.c2!r} <= 0; profile not normalizable")
        if abs(self.L - math.sqrt(one_plus)) > 1e-15 * max(self.L, 1.0):
            raise DomainError(
                f"L = {self.L!r} inconsistent with sqrt(1 + c3sq) = "
                f"{math.sqrt(one_plus)!r}")


def coefficients(cfg: FieldConfig, qn: QuantumNumbers, branch: Branch,
                 epsilon: float, convention: Convention | None = None
                 ) -> CanonicalRadialODE:
    """Canonical-equation coefficients at a given energy.

    Under the LITERAL convention the decay rate is mu*a as printed and a
    nonpositive value raises NonNormalizableError; the other conventions
    take |mu*a|.  The minus branch's constant term keeps its printed form
    except under CORRECTED_MINUS, which flips the sign of the cross term
    so that 1 + c3sq = 1 + (ell + 1 + mu*b)^2 stays positive.
    """
    conv = resolve_convention(branch, convention)
    mu, a, b = cfg.mu, cfg.a, cfg.b
    ell = qn.ell
    c3, L = _angular_exponent(branch, conv, ell, mu, b)
    if branch is Branch.PLUS:
        c1 = 2.0 * epsilon - mu * a * (3.0 + 2.0 * ell) + 2.0 * mu * mu * a * b
    else:
        c1 = mu * a * (3.0 + 2.0 * ell) + 2.0 * mu * mu * a * b - 2.0 * epsilon
    c2 = mu * a if conv is Convention.LITERAL else abs(mu * a)
    if c2 <= 0.0:
        raise NonNormalizableError(
            f"decay rate c2 = {c2!r} <= 0 under convention {conv.value}")
    return CanonicalRadialODE(c1=c1, c2=c2, c3sq=c3, L=L,
                              branch=branch, convention=conv)


def energy_level(cfg: FieldConfig, qn: QuantumNumbers, branch: Branch,
                 convention: Convention | None = None) -> float:
    """Bound-state energy for quantum numbers (n, ell).

    LITERAL evaluates the printed closed forms verbatim (they assume a
    positive decay rate mu*a but are plain arithmetic, so any sign of mu
    is accepted here; normalizability is checked only when an ODE or a
    bound state is constructed).  The other conventions solve the
    quantization relation c1(eps) = -2 c2 (n + L + 1/2) with c2 = |mu*a|,
    which reproduces the printed forms whenever mu*a > 0.
    """
    conv = resolve_convention(branch, convention)
    mu, a, b = cfg.mu, cfg.a, cfg.b
    n, ell = qn.n, qn.ell
    _, L = _angular_exponent(branch, conv, ell, mu, b)
    if conv is Convention.LITERAL:
        if branch is Branch.PLUS:
            return -mu * a * (n - ell - 1.0 + L + mu * b)
        return mu * a * (n + ell + 2.0 + L + mu * b)
    c2 = abs(mu * a)
    target = n + L + 0.5
    if branch is Branch.PLUS:
        return (mu * a * (3.0 + 2.0 * ell) - 2.0 * mu * mu * a * b
                - 2.0 * c2 * target) / 2.0
    return (mu * a * (3.0 + 2.0 * ell) + 2.0 * mu * mu * a * b
            + 2.0 * c2 * target) / 2.0


def classify_state(epsilon: float) -> StateKind:
    """Particle for positive energy, antiparticle for negative, threshold at 0."""
    if epsilon > 0.0:
        return StateKind.PARTICLE
    if epsilon < 0.0:
        return StateKind.ANTIPARTICLE
    return StateKind.THRESHOLD


def quantization_residual(ode: CanonicalRadialODE, qn: QuantumNumbers) -> float:
    """Relative residual of c1 + 2 c2 (n + L + 1/2) = 0."""
    lhs = ode.c1 + 2.0 * ode.c2 * (qn.n + ode.L + 0.5)
    scale = max(abs(ode.c1), 2.0 * ode.c2 * (qn.n + ode.L + 0.5))
    return abs(lhs) / scale if scale > 0 else abs(lhs)


@dataclass(frozen=True)
class NormalizationData:
    """Auxiliary omega constants and the normalization constant N."""

    omega1p: float
    omega2p: float
    omega1: float
    omega2: float
    omega3: float
    N: float

    def __post_init__(self):
        if not self.N > 0:
            raise DomainError(f"normalization constant must be positive, got {self.N}")


@dataclass(frozen=True)
class BoundState:
    """A fully determined bound state: branch, quantum numbers, energy,
    canonical coefficients, and normalization data.

    The field configuration is carried along because the partner component
    depends on the field profile, not only on the canonical coefficients.
    """

    branch: Branch
    qn: QuantumNumbers
    energy: float
    ode: CanonicalRadialODE
    norm: NormalizationData
    cfg: FieldConfig

    def __post_init__(self):
        res = quantization_residual(self.ode, self.qn)
        if res > _QUANT_RTOL:
            raise DomainError(
                f"energy violates the quantization relation: residual {res!r}")


def normalization_closed(cfg: FieldConfig, qn: QuantumNumbers,
                         ode: CanonicalRadialODE) -> NormalizationData:
    """Closed-form normalization constant with factorials read as Gamma.

    The omega constants follow the published definitions for either
    branch; at n = 0 the middle term drops (its 1/(n-1)! prefactor is the
    reciprocal of a gamma pole).  On the plus branch this expression is
    the exact norm of the (upper, relation-derived partner) pair.
    """
    n, ell = qn.n, qn.ell
    mu, a, b = cfg.mu, cfg.a, cfg.b
    L, c2 = ode.L, ode.c2
    omega2p = mu * a / (2.0 * c2) - 0.5
    omega1p = n - 1.0 - ell + L + mu * b
    omega1 = omega1p + omega2p * (2.0 * n + 2.0 * L + 1.0)
    omega2 = (n + 2.0 * L) * (1.0 + omega2p)
    omega3 = omega2p * (1.0 + n)

    for arg in (n + 2.0 * L + 1.0, n + 2.0 * L + 2.0) + ((n + 2.0 * L,) if n >= 1 else ()):
        if arg <= 0:
            raise DomainError(f"gamma argument {arg!r} <= 0 in normalization")

    denom = math.exp(log_gamma(n + 2.0 * L + 1.0) - log_gamma(n + 1.0)) \
        * (1.0 + omega1 * omega1)
    if n >= 1:
        denom += math.exp(log_gamma(n + 2.0 * L) - log_gamma(float(n))) \
            * omega2 * omega2
    denom += math.exp(log_gamma(n + 2.0 * L + 2.0) - log_gamma(n + 2.0)) \
        * omega3 * omega3
    n_const = math.exp(0.5 * ((1.0 + 2.0 * L) * math.log(2.0 * c2)
                              - math.log(denom)))
    return NormalizationData(omega1p=omega1p, omega2p=omega2p, omega1=omega1,
                             omega2=omega2, omega3=omega3, N=n_const)


def _partner_poly_coeffs(cfg: FieldConfig, qn: QuantumNumbers,
                         ode: CanonicalRadialODE, mode: PartnerMode
                         ) -> tuple[float, float]:
    """Coefficients (t0, t1) such that, with z = 2 c2 r and P = L_n^{2L},

        partner = N r^{L-1} e^{-c2 r} [ (t0 + t1 z) P(z) + z P'(z) ].
    """
    L, c2 = ode.L, ode.c2
    if mode is PartnerMode.LITERAL:
        return L - 1.0, -0.5
    sgn = 1.0 if ode.branch is Branch.PLUS else -1.0
    t0 = L - 1.0 - qn.ell + sgn * cfg.mu * cfg.b
    t1 = (sgn * cfg.mu * cfg.a - c2) / (2.0 * c2)
    return t0, t1


def normalization_numeric(cfg: FieldConfig, qn: QuantumNumbers,
                          ode: CanonicalRadialODE,
                          partner_mode: PartnerMode = PartnerMode.RELATION,
                          m: int | None = None) -> float:
    """Normalization constant from Gauss-Laguerre quadrature.

    In z = 2 c2 r the density integrand is z^{2L} e^{-z} times a
    polynomial of degree at most 2n + 2, so any rule with m >= n + 3
    points evaluates the integral exactly and the result is independent
    of m.
    """
    n = qn.n
    L, c2 = ode.L, ode.c2
    points = n + 3 if m is None else int(m)
    if points < n + 3:
        raise DomainError(
            f"need at least n + 3 = {n + 3} quadrature points, got {points}")
    rule = gauss_laguerre(points, 2.0 * L)
    z = rule.nodes
    p = laguerre(n, 2.0 * L, z)
    if n >= 1:
        zdp = n * p - (n + 2.0 * L) * laguerre(n - 1, 2.0 * L, z)
    else:
        zdp = np.zeros_like(z)
    t0, t1 = _partner_poly_coeffs(cfg, qn, ode, partner_mode)
    t = (t0 + t1 * z) * p + zdp
    total = rule.integrate(p * p + t * t)
    return math.exp(0.5 * (1.0 + 2.0 * L) * math.log(2.0 * c2)) / math.sqrt(total)


def bound_state(cfg: FieldConfig, qn: QuantumNumbers, branch: Branch,
                convention: Convention | None = None,
                norm: str = "numeric") -> BoundState:
    """Construct the bound state for (n, ell) under the given convention.

    ``norm`` selects where the normalization constant comes from:
    "numeric" (default) uses the exact quadrature with the
    relation-derived partner, so the two-component density integrates to
    one by construction; "closed" stores the closed-form constant.  On the
    plus branch the two agree to machine precision.
    """
    conv = resolve_convention(branch, convention)
    eps = energy_level(cfg, qn, branch, conv)
    ode = coefficients(cfg, qn, branch, eps, conv)
    data = normalization_closed(cfg, qn, ode)
    if norm == "numeric":
        data = replace(data, N=normalization_numeric(cfg, qn, ode))
    elif norm != "closed":
        raise DomainError(f"norm must be 'numeric' or 'closed', got {norm!r}")
    return BoundState(branch=branch, qn=qn, energy=eps, ode=ode, norm=data,
                      cfg=cfg)


def wavefunction_upper(state: BoundState, r):
    """Upper radial component N r^{L-1} e^{-c2 r} L_n^{2L}(2 c2 r).

    ``r`` may be a positive scalar or array.
    """
    r = _check_radius(r)
    L, c2, n = state.ode.L, state.ode.c2, state.qn.n
    z = 2.0 * c2 * r
    out = state.norm.N * r ** (L - 1.0) * np.exp(-c2 * r) * laguerre(n, 2.0 * L, z)
    return out if isinstance(r, np.ndarray) else float(out)


def wavefunction_partner(state: BoundState, r,
                         mode: PartnerMode = PartnerMode.RELATION):
    """Second radial component, either relation-derived or as printed.

    The relation-derived form applies the first-order coupling to the
    closed-form upper component, using the fact that the energy-mass
    combination on the coupling side collapses to -+1/r; the resulting
    pair satisfies the full first-order system whenever the energy sits on
    the quantization relation.
    """
    r = _check_radius(r)
    L, c2, n = state.ode.L, state.ode.c2, state.qn.n
    z = 2.0 * c2 * r
    p = laguerre(n, 2.0 * L, z)
    zdp = z * laguerre_derivative(n, 2.0 * L, z) if n >= 1 else np.zeros_like(z)
    t0, t1 = _partner_poly_coeffs(state.cfg, state.qn, state.ode, mode)
    envelope = state.norm.N * r ** (L - 1.0) * np.exp(-c2 * r)
    out = envelope * ((t0 + t1 * z) * p + zdp)
    return out if isinstance(r, np.ndarray) else float(out)


def _check_radius(r):
    if isinstance(r, np.ndarray):
        if np.any(r <= 0):
            raise DomainError("radius grid must be positive")
        return np.asarray(r, dtype=np.float64)
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    return float(r)


@dataclass(frozen=True)
class DegeneracyReport:
    """Energies over a quantum-number grid, grouped by coincidence."""

    states: tuple          # ((n, ell, energy), ...) ordered by (n, ell)
    groups: tuple          # tuple of tuples of (n, ell), one per energy cluster
    max_multiplicity: int
    failures: tuple        # ((n, ell, error_name, message), ...)


def degeneracy_scan(cfg: FieldConfig, branch: Branch,
                    convention: Convention | None = None, n_max: int = 3,
                    ell_max: int = 3, tol: float = 1e-12) -> DegeneracyReport:
    """Energies for all (n, ell) with n <= n_max, ell <= ell_max.

    Energies equal within ``tol`` are grouped; the maximal multiplicity is
    finite because distinct (n, ell) shift the energy through both n and
    the irrational exponent L(ell).  Pairs whose construction fails are
    listed separately instead of aborting the scan.
    """
    if not (0 <= n_max <= 64 and 0 <= ell_max <= 64):
        raise DomainError("grid bounds must lie in [0, 64]")
    conv = resolve_convention(branch, convention)
    states = []
    failures = []
    for n in range(n_max + 1):
        for ell in range(ell_max + 1):
            qn = QuantumNumbers(n=n, ell=ell)
            try:
                eps = energy_level(cfg, qn, branch, conv)
                coefficients(cfg, qn, branch, eps, conv)
            except Exception as exc:  # per-pair, non-fatal
                failures.append((n, ell, type(exc).__name__, str(exc)))
                continue
            states.append((n, ell, eps))

    order = sorted(range(len(states)), key=lambda i: states[i][2])
    groups = []
    current = []
    for idx in order:
        if current and abs(states[idx][2] - states[current[-1]][2]) > tol:
            groups.append(tuple((states[i][0], states[i][1]) for i in current))
            current = []
        current.append(idx)
    if current:
        groups.append(tuple((states[i][0], states[i][1]) for i in current))
    max_mult = max((len(g) for g in groups), default=0)
    return DegeneracyReport(states=tuple(states), groups=tuple(groups),
                            max_multiplicity=max_mult, failures=tuple(failures))


def canonical_equation(ode: CanonicalRadialODE) -> HypergeometricTypeEquation:
    """The hypergeometric-type form of the canonical radial equation.

    Multiplying the canonical equation by r^2 gives sigma = r,
    tau_tilde = 3, sigma_tilde = -c3sq - c1 r - c2^2 r^2.
    """
    return HypergeometricTypeEquation(
        sigma=Polynomial((0.0, 1.0)),
        tau_tilde=Polynomial((3.0,)),
        sigma_tilde=Polynomial((-ode.c3sq, -ode.c1, -ode.c2 ** 2)),
    )
