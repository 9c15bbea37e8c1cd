"""Independent numerical verification of the closed forms.

Two kinds of oracle live here.  Residual evaluators apply the canonical
second-order operator, or the first-order coupled system, to the
closed-form wavefunctions using exact analytic derivatives; if the closed
forms are right the residuals are pure roundoff.  The shooting oracle
rediscovers each eigenvalue by integrating the canonical equation outward
from the singular origin and bisecting the energy on the decay/blow-up
sign at large radius, never consulting the closed-form energy expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from . import _kernels
from .core import Branch, Convention, FieldConfig, QuantumNumbers, resolve_convention
from .errors import BracketError, DiracPauliError, DomainError, WrongStateError
from .special import laguerre
from .spectrum import (
    BoundState,
    CanonicalRadialODE,
    PartnerMode,
    bound_state,
    coefficients,
    energy_level,
)


class ResidualMode(Enum):
    CANONICAL_ODE = "canonical-ode"
    FIRST_ORDER_SYSTEM = "first-order-system"


@dataclass(frozen=True)
class ResidualReport:
    """Pointwise operator residuals, scaled by the local term magnitude."""

    grid: np.ndarray
    residuals: np.ndarray
    max_rel: float
    rms_rel: float
    mode: ResidualMode

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        res = np.asarray(self.residuals, dtype=np.float64)
        if grid.ndim != 1 or grid.shape != res.shape:
            raise DomainError("grid and residuals must be 1-d of equal length")
        if grid.size and not np.all(np.diff(grid) > 0):
            raise DomainError("grid must be strictly increasing")
        if not (self.max_rel >= self.rms_rel >= 0.0):
            raise DomainError("expected max_rel >= rms_rel >= 0")
        grid.setflags(write=False)
        res.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "residuals", res)


def _report(grid, residual, scale, mode) -> ResidualReport:
    rel = np.where(scale > 0.0, np.abs(residual) / np.where(scale > 0, scale, 1.0), 0.0)
    max_rel = float(rel.max()) if rel.size else 0.0
    rms_rel = float(math.sqrt(np.mean(rel * rel))) if rel.size else 0.0
    return ResidualReport(grid=grid, residuals=residual, max_rel=max_rel,
                          rms_rel=rms_rel, mode=mode)


def standard_grid(ode: CanonicalRadialODE, points: int = 200) -> np.ndarray:
    """Log-spaced radii from 0.05 out to 40/c2 (the far decay region)."""
    lo = 0.05
    hi = 40.0 / ode.c2
    if hi <= lo:
        hi = 100.0 * lo
    return np.logspace(math.log10(lo), math.log10(hi), points)


def _laguerre_triplet(n: int, alpha: float, z: np.ndarray):
    """L_n, L_{n-1}, L_{n-2} on the grid (absent degrees as zeros)."""
    p = laguerre(n, alpha, z)
    p1 = laguerre(n - 1, alpha, z) if n >= 1 else np.zeros_like(z)
    p2 = laguerre(n - 2, alpha, z) if n >= 2 else np.zeros_like(z)
    return p, p1, p2


def upper_with_derivatives(state: BoundState, grid: np.ndarray):
    """Closed-form upper component and its first two analytic derivatives.

    Derivatives of the Laguerre factor use the identity
    z dL_n/dz = n L_n - (n + alpha) L_{n-1} applied twice, so no finite
    differencing enters anywhere.
    """
    ode = state.ode
    n = state.qn.n
    L, c2 = ode.L, ode.c2
    alpha = 2.0 * L
    r = np.asarray(grid, dtype=np.float64)
    z = 2.0 * c2 * r

    p, p1, p2 = _laguerre_triplet(n, alpha, z)
    if n >= 1:
        dp = (n * p - (n + alpha) * p1) / z
    else:
        dp = np.zeros_like(z)
    if n >= 2:
        dp1 = ((n - 1) * p1 - (n - 1 + alpha) * p2) / z
    else:
        dp1 = np.zeros_like(z)
    if n >= 1:
        ddp = (n * dp - (n + alpha) * dp1) / z - (n * p - (n + alpha) * p1) / (z * z)
    else:
        ddp = np.zeros_like(z)

    envelope = state.norm.N * r ** (L - 1.0) * np.exp(-c2 * r)
    w1 = (L - 1.0) / r - c2
    w1p = -(L - 1.0) / (r * r)
    f = envelope * p
    f1 = envelope * (w1 * p + 2.0 * c2 * dp)
    f2 = envelope * ((w1 * w1 + w1p) * p + 4.0 * c2 * w1 * dp
                     + 4.0 * c2 * c2 * ddp)
    return f, f1, f2


def canonical_residual_values(ode: CanonicalRadialODE, grid: np.ndarray,
                              f: np.ndarray, f1: np.ndarray, f2: np.ndarray
                              ) -> ResidualReport:
    """Apply the canonical operator to given value/derivative samples."""
    r = np.asarray(grid, dtype=np.float64)
    term_dd = f2
    term_d = (3.0 / r) * f1
    term_0 = (-ode.c1 / r - ode.c2 ** 2 - ode.c3sq / (r * r)) * f
    residual = term_dd + term_d + term_0
    scale = np.maximum(np.abs(term_dd), np.maximum(np.abs(term_d), np.abs(term_0)))
    return _report(r, residual, scale, ResidualMode.CANONICAL_ODE)


def canonical_residual(ode: CanonicalRadialODE, state: BoundState,
                       grid: np.ndarray) -> ResidualReport:
    """Residual of the canonical operator on the state's closed form.

    The operator coefficients come from ``ode``, the wavefunction from
    ``state``; passing an ODE built at a perturbed energy therefore
    measures how sharply the residual detects a wrong eigenvalue.
    """
    r = np.asarray(grid, dtype=np.float64)
    if np.any(r <= 0):
        raise DomainError("grid must be positive")
    f, f1, f2 = upper_with_derivatives(state, r)
    return canonical_residual_values(ode, r, f, f1, f2)


def _partner_with_derivative(state: BoundState, r: np.ndarray,
                             mode: PartnerMode):
    """Partner component and its first analytic derivative on the grid."""
    cfg = state.cfg
    ode = state.ode
    n, ell = state.qn.n, state.qn.ell
    f, f1, f2 = upper_with_derivatives(state, r)
    mu_e = cfg.mu * (cfg.a * r + cfg.b)  # mu E(r) r

    if mode is PartnerMode.RELATION:
        if state.branch is Branch.PLUS:
            g = r * f1 + (mu_e - ell) * f
            g1 = f1 + r * f2 + cfg.mu * cfg.a * f + (mu_e - ell) * f1
        else:
            g = r * f1 - (mu_e + ell) * f
            g1 = f1 + r * f2 - cfg.mu * cfg.a * f - (mu_e + ell) * f1
        return g, g1

    # printed partner expression
    L, c2 = ode.L, ode.c2
    alpha = 2.0 * L
    z = 2.0 * c2 * r
    p, p1, p2 = _laguerre_triplet(n, alpha, z)
    if n >= 1:
        dp = (n * p - (n + alpha) * p1) / z
        if n >= 2:
            dp1 = ((n - 1) * p1 - (n - 1 + alpha) * p2) / z
        else:
            dp1 = np.zeros_like(z)
        ddp = (n * dp - (n + alpha) * dp1) / z - (n * p - (n + alpha) * p1) / (z * z)
    else:
        dp = np.zeros_like(z)
        ddp = np.zeros_like(z)

    envelope = state.norm.N * r ** (L - 1.0) * np.exp(-c2 * r)
    w1 = (L - 1.0) / r - c2
    t = (L - 1.0 - c2 * r) * p + z * dp
    tprime = (-c2) * p + (L - 1.0 - c2 * r) * 2.0 * c2 * dp \
        + 2.0 * c2 * (dp + z * ddp)
    g = envelope * t
    g1 = envelope * (w1 * t + tprime)
    return g, g1


@dataclass(frozen=True)
class FirstOrderResiduals:
    """Residuals of the two coupled first-order relations.

    ``defining`` is the relation used to produce the partner from the
    upper component (identically zero for the relation-derived partner);
    ``closure`` is the other relation, whose size is the informative
    content of the check.
    """

    defining: ResidualReport
    closure: ResidualReport
    branch: Branch
    partner_mode: PartnerMode


def first_order_residual(cfg: FieldConfig, state: BoundState,
                         partner_mode: PartnerMode = PartnerMode.RELATION,
                         grid: np.ndarray | None = None) -> FirstOrderResiduals:
    """Evaluate both first-order relations on (upper, partner).

    On the plus branch with the relation-derived partner both residuals
    vanish to roundoff because the closed form solves the canonical
    equation exactly.  On the minus branch the closure relation measures a
    real analytic gap: the printed second-order minus equation is not the
    reduction of the printed first-order system, so this report is a
    diagnostic rather than an assertion.
    """
    if grid is None:
        grid = standard_grid(state.ode)
    r = np.asarray(grid, dtype=np.float64)
    if np.any(r <= 0):
        raise DomainError("grid must be positive")

    ell = state.qn.ell
    eps = state.energy
    mu_e = cfg.mu * (cfg.a + cfg.b / r)  # mu E(r)
    f, f1, _ = upper_with_derivatives(state, r)
    g, g1 = _partner_with_derivative(state, r, partner_mode)

    if state.branch is Branch.PLUS:
        # defining: (d/dr + mu E - ell/r) upper = (1/r) partner
        t1, t2, t3, t4 = f1, mu_e * f, -(ell / r) * f, -g / r
        defining = _residual_from_terms(r, (t1, t2, t3, t4))
        # closure: (d/dr - mu E + (ell+2)/r) partner = (2 eps + 1/r) upper
        u1, u2, u3 = g1, -mu_e * g, ((ell + 2.0) / r) * g
        u4 = -(2.0 * eps + 1.0 / r) * f
        closure = _residual_from_terms(r, (u1, u2, u3, u4))
    else:
        # defining: (d/dr - mu E - ell/r) upper = (1/r) partner
        t1, t2, t3, t4 = f1, -mu_e * f, -(ell / r) * f, -g / r
        defining = _residual_from_terms(r, (t1, t2, t3, t4))
        # closure: (d/dr + mu E - (ell+2)/r) partner = -(2 eps - 1/r) upper
        gp, gp1 = g, g1
        fp, fp1 = _minus_partner_derivative(state, r, partner_mode)
        u1, u2, u3 = fp1, mu_e * fp, -((ell + 2.0) / r) * fp
        u4 = (2.0 * eps - 1.0 / r) * gp
        closure = _residual_from_terms(r, (u1, u2, u3, u4))
        del gp1
    return FirstOrderResiduals(defining=defining, closure=closure,
                               branch=state.branch, partner_mode=partner_mode)


def _minus_partner_derivative(state: BoundState, r: np.ndarray,
                              mode: PartnerMode):
    """Minus-branch partner and derivative; needs the upper second derivative
    when the partner is relation-derived."""
    cfg = state.cfg
    ell = state.qn.ell
    if mode is PartnerMode.RELATION:
        f, f1, f2 = upper_with_derivatives(state, r)
        mu_e_r = cfg.mu * (cfg.a * r + cfg.b)
        fp = r * f1 - (mu_e_r + ell) * f
        fp1 = f1 + r * f2 - cfg.mu * cfg.a * f - (mu_e_r + ell) * f1
        return fp, fp1
    return _partner_with_derivative(state, r, mode)


def _residual_from_terms(r: np.ndarray, terms) -> ResidualReport:
    residual = terms[0].copy()
    scale = np.abs(terms[0])
    for t in terms[1:]:
        residual = residual + t
        scale = np.maximum(scale, np.abs(t))
    return _report(r, residual, scale, ResidualMode.FIRST_ORDER_SYSTEM)


@dataclass(frozen=True)
class ShootingResult:
    """Converged shooting eigenvalue with its final bracket and node count."""

    energy: float
    bracket_lo: float
    bracket_hi: float
    bisections: int
    node_count: int

    def __post_init__(self):
        if not (self.bracket_lo < self.energy < self.bracket_hi):
            raise DomainError("energy must lie strictly inside the bracket")


def _integrate_sign(ode: CanonicalRadialODE, node_cut: float) -> tuple[float, int]:
    r0 = 1e-3 / ode.c2
    rmax = 40.0 / ode.c2
    y_end, nodes, _steps, ok = _kernels.shoot_integrate(
        ode.c1, ode.c2, ode.c3sq, ode.L, r0, rmax, 1e-12, node_cut)
    if not ok:
        raise DomainError("outward integration failed to reach the far boundary")
    return y_end, nodes


def shoot_eigenvalue(ode_family: Callable[[float], CanonicalRadialODE],
                     n: int, eps_bracket: tuple[float, float],
                     tol: float = 1e-9) -> ShootingResult:
    """Bisect the energy until the outward solution flips from decay to blow-up.

    ``ode_family`` maps a trial energy to canonical coefficients.  The
    integration starts at r0 = 1e-3/c2 with a Frobenius series and stops
    at 40/c2, where the decaying solution is ~4e-18 of its peak, so the
    sign of y there cleanly separates the two asymptotic behaviors.
    Interior sign changes are counted below the classically relevant
    radius and must equal n.
    """
    lo, hi = float(eps_bracket[0]), float(eps_bracket[1])
    if not lo < hi:
        raise DomainError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    if n < 0:
        raise DomainError(f"node target must be >= 0, got {n}")

    def node_cut_for(ode: CanonicalRadialODE) -> float:
        return min(0.95 * 40.0 / ode.c2, (4.0 * n + 2.0 * ode.L + 8.0) / (2.0 * ode.c2))

    def sign_at(eps: float) -> float:
        ode = ode_family(eps)
        y_end, _nodes = _integrate_sign(ode, node_cut_for(ode))
        return 1.0 if y_end > 0.0 else (-1.0 if y_end < 0.0 else 0.0)

    s_lo = sign_at(lo)
    s_hi = sign_at(hi)
    if s_lo == s_hi or s_lo == 0.0 or s_hi == 0.0:
        raise BracketError(
            f"no sign change across bracket ({lo!r}, {hi!r}): "
            f"signs ({s_lo}, {s_hi})")

    bisections = 0
    mid = 0.5 * (lo + hi)
    while (hi - lo) > tol * abs(mid) and bisections < 200:
        bisections += 1
        mid = 0.5 * (lo + hi)
        s_mid = sign_at(mid)
        if s_mid == 0.0:
            break
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)

    ode = ode_family(mid)
    _y_end, nodes = _integrate_sign(ode, node_cut_for(ode))
    if nodes != n:
        raise WrongStateError(
            f"converged on a state with {nodes} nodes, expected {n}")
    return ShootingResult(energy=mid, bracket_lo=lo, bracket_hi=hi,
                          bisections=bisections, node_count=nodes)


@dataclass(frozen=True)
class SpectrumComparisonRow:
    n: int
    ell: int
    energy_closed: float
    energy_shoot: float
    rel_diff: float
    node_count: int
    bisections: int


@dataclass(frozen=True)
class SpectrumComparison:
    rows: tuple
    failures: tuple  # ((n, ell, error_name, message), ...)

    @property
    def max_rel_diff(self) -> float:
        return max((row.rel_diff for row in self.rows), default=0.0)


def compare_spectrum(cfg: FieldConfig, branch: Branch,
                     convention: Convention | None = None,
                     n_max: int = 2, ell_max: int = 2) -> SpectrumComparison:
    """Shooting energies against closed-form energies over an (n, ell) grid.

    Brackets are seeded at the closed-form value +- 20 percent, capped at
    just under half the level spacing (the quantization relation is linear
    in the energy with slope -+2, so consecutive levels at fixed ell sit
    exactly c2 apart) so each bracket contains exactly one eigenvalue.
    Rows are emitted in (n, ell) order; per-pair construction or
    bracketing errors are collected instead of aborting the grid.
    """
    if not (0 <= n_max <= 64 and 0 <= ell_max <= 64):
        raise DomainError("grid bounds must lie in [0, 64]")
    conv = resolve_convention(branch, convention)
    rows = []
    failures = []
    for n in range(n_max + 1):
        for ell in range(ell_max + 1):
            qn = QuantumNumbers(n=n, ell=ell)
            try:
                eps = energy_level(cfg, qn, branch, conv)
                ode = coefficients(cfg, qn, branch, eps, conv)
                half = min(0.2 * abs(eps), 0.45 * ode.c2)
                bracket = (eps - half, eps + half)
                result = shoot_eigenvalue(
                    lambda e, _qn=qn: coefficients(cfg, _qn, branch, e, conv),
                    n, bracket)
            except DiracPauliError as exc:
                failures.append((n, ell, type(exc).__name__, str(exc)))
                continue
            rel = abs(result.energy - eps) / abs(eps) if eps != 0 else abs(result.energy)
            rows.append(SpectrumComparisonRow(
                n=n, ell=ell, energy_closed=eps, energy_shoot=result.energy,
                rel_diff=rel, node_count=result.node_count,
                bisections=result.bisections))
    return SpectrumComparison(rows=tuple(rows), failures=tuple(failures))


def residual_for_state(cfg: FieldConfig, qn: QuantumNumbers, branch: Branch,
                       convention: Convention | None = None,
                       points: int = 200) -> ResidualReport:
    """Canonical residual of the freshly constructed state on the standard grid."""
    state = bound_state(cfg, qn, branch, convention)
    return canonical_residual(state.ode, state, standard_grid(state.ode, points))
