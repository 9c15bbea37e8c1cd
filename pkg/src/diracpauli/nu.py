"""Reduction of hypergeometric-type second-order equations.

Equations of the form

    sigma(r)^2 y'' + sigma(r) tau_tilde(r) y' + sigma_tilde(r) y = 0,

with sigma, sigma_tilde of degree <= 2 and tau_tilde of degree <= 1, admit
polynomial solutions once a constant k is chosen so that

    [ (sigma' - tau_tilde)/2 ]^2 - sigma_tilde + k sigma

is the square of a first-degree polynomial q.  The shift pi = half +- q
then defines tau = tau_tilde + 2 pi, which must have a strictly negative
derivative, and the eigenvalue constants lambda = k + pi' and
lambda_n = -n tau' - n(n-1) sigma''/2.  Polynomial solutions follow from
the Rodrigues formula against the weight solving (sigma rho)' = tau rho.

All arithmetic is plain floating point; every accepted reduction carries a
coefficientwise perfect-square certificate at 1e-12 relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    AmbiguousBranchError,
    DomainError,
    NoAdmissibleBranchError,
    NoSquareCompletionError,
    UnsupportedFamilyError,
)

_CERT_RTOL = 1e-12


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with ascending coefficients, degree at most 2 here."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0.0:
            return -1
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> float:
        return self.coeffs[k] if k < len(self.coeffs) else 0.0

    def __call__(self, r):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0.0,))
        return Polynomial(tuple((k + 1) * c for k, c in enumerate(self.coeffs[1:])))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(tuple(factor * c for c in self.coeffs))


@dataclass(frozen=True)
class HypergeometricTypeEquation:
    """Polynomial triple (sigma, tau_tilde, sigma_tilde) of the standard form."""

    sigma: Polynomial
    tau_tilde: Polynomial
    sigma_tilde: Polynomial

    def __post_init__(self):
        if self.sigma.degree < 0:
            raise DomainError("sigma must not be identically zero")
        if self.sigma.degree > 2:
            raise DomainError(f"sigma degree must be <= 2, got {self.sigma.degree}")
        if self.tau_tilde.degree > 1:
            raise DomainError(
                f"tau_tilde degree must be <= 1, got {self.tau_tilde.degree}")
        if self.sigma_tilde.degree > 2:
            raise DomainError(
                f"sigma_tilde degree must be <= 2, got {self.sigma_tilde.degree}")


class SignChoice(Enum):
    PLUS_ROOT = "plus-root"
    MINUS_ROOT = "minus-root"


@dataclass(frozen=True)
class NUReduction:
    """Result of a square completion: k, pi, tau, and lambda = k + pi'."""

    k: float
    pi: Polynomial
    tau: Polynomial
    lam: float
    sign_choice: SignChoice

    def __post_init__(self):
        if self.pi.degree > 1:
            raise DomainError("pi must have degree <= 1")
        if self.tau.degree > 1:
            raise DomainError("tau must have degree <= 1")
        if not self.tau.coeff(1) < 0:
            raise DomainError("tau must have a strictly negative derivative")


def _half_shift(eq: HypergeometricTypeEquation) -> Polynomial:
    return (eq.sigma.derivative() - eq.tau_tilde).scaled(0.5)


def _root_argument(eq: HypergeometricTypeEquation, k: float) -> Polynomial:
    half = _half_shift(eq)
    return half * half - eq.sigma_tilde + eq.sigma.scaled(k)


def candidate_ks(eq: HypergeometricTypeEquation):
    """All real k for which the root argument has zero discriminant.

    The argument is quadratic in r with coefficients affine in k, so the
    vanishing-discriminant condition is itself (at most) a quadratic in k.
    Returns the real solutions in ascending order.
    """
    half = _half_shift(eq)
    p = half * half - eq.sigma_tilde
    p0, p1, p2 = p.coeff(0), p.coeff(1), p.coeff(2)
    s0, s1, s2 = eq.sigma.coeff(0), eq.sigma.coeff(1), eq.sigma.coeff(2)

    # discriminant of (p2 + k s2) r^2 + (p1 + k s1) r + (p0 + k s0) in r
    ca = s1 * s1 - 4.0 * s2 * s0
    cb = 2.0 * p1 * s1 - 4.0 * (p2 * s0 + p0 * s2)
    cc = p1 * p1 - 4.0 * p2 * p0

    scale = max(abs(ca), abs(cb), abs(cc), 1e-300)
    if abs(ca) <= 1e-14 * scale:
        if abs(cb) <= 1e-14 * scale:
            raise NoSquareCompletionError(
                "discriminant is independent of k; no isolated square completion")
        return (-cc / cb,)
    disc = cb * cb - 4.0 * ca * cc
    tol = 1e-12 * max(cb * cb, abs(4.0 * ca * cc), 1e-300)
    if disc < -tol:
        raise NoSquareCompletionError(
            f"no real square-completion constant (discriminant {disc!r})")
    disc = max(disc, 0.0)
    root = math.sqrt(disc)
    k1 = (-cb - root) / (2.0 * ca)
    k2 = (-cb + root) / (2.0 * ca)
    if k1 > k2:
        k1, k2 = k2, k1
    if abs(k2 - k1) <= 1e-12 * max(abs(k1), abs(k2), 1.0):
        return (k1,)
    return (k1, k2)


def _polynomial_sqrt(arg: Polynomial) -> Polynomial:
    """Square root of a (numerically) perfect-square polynomial of degree <= 2.

    Normalized so that the leading coefficient is nonnegative.
    """
    c0, c1, c2 = arg.coeff(0), arg.coeff(1), arg.coeff(2)
    scale = max(abs(c0), abs(c1), abs(c2), 1e-300)
    tol = 1e-12 * scale
    if c2 < -tol or c0 < -tol:
        raise NoSquareCompletionError(
            "root argument is negative; no real polynomial square root")
    q2 = math.sqrt(max(c2, 0.0))
    q0 = math.sqrt(max(c0, 0.0))
    if q2 == 0.0 and q0 == 0.0:
        if abs(c1) > tol:
            raise NoSquareCompletionError("root argument is not a perfect square")
        return Polynomial((0.0,))
    if q2 == 0.0:
        if abs(c1) > tol:
            raise NoSquareCompletionError("root argument is not a perfect square")
        return Polynomial((q0,))
    sign = 1.0 if c1 >= 0.0 else -1.0
    return Polynomial((sign * q0, q2))


def reduce(eq: HypergeometricTypeEquation, k: float) -> NUReduction:
    """Square completion for a given k, with branch selection by tau' < 0.

    Both signs of the root polynomial are tried; the unique one whose tau
    has a strictly negative derivative is returned.  The accepted pi
    carries a coefficientwise certificate that its root part squares back
    to the argument polynomial.
    """
    half = _half_shift(eq)
    arg = _root_argument(eq, k)
    q = _polynomial_sqrt(arg)

    back = q * q
    n = max(len(back.coeffs), len(arg.coeffs))
    cert_scale = max((abs(arg.coeff(i)) for i in range(n)), default=0.0)
    cert_scale = max(cert_scale, 1e-300)
    for i in range(n):
        if abs(back.coeff(i) - arg.coeff(i)) > _CERT_RTOL * cert_scale:
            raise NoSquareCompletionError(
                f"square certificate failed at degree {i}: "
                f"{back.coeff(i)!r} vs {arg.coeff(i)!r}")

    choices = [(SignChoice.PLUS_ROOT, q)]
    if q.degree >= 0:
        choices.append((SignChoice.MINUS_ROOT, q.scaled(-1.0)))

    admissible = []
    for sign_choice, qq in choices:
        pi = half + qq
        tau = eq.tau_tilde + pi.scaled(2.0)
        if tau.coeff(1) < 0.0:
            admissible.append(NUReduction(
                k=float(k), pi=pi, tau=tau,
                lam=float(k) + pi.coeff(1), sign_choice=sign_choice))

    if not admissible:
        raise NoAdmissibleBranchError(
            f"neither root sign yields tau' < 0 for k={k!r}")
    if len(admissible) == 2:
        raise AmbiguousBranchError(
            f"both root signs yield tau' < 0 for k={k!r}", admissible)
    return admissible[0]


def lambda_n(red: NUReduction, sigma: Polynomial, n: int) -> float:
    """Eigenvalue constant -n tau' - n(n-1) sigma''/2 for polynomial degree n."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    sigma_pp = 2.0 * sigma.coeff(2)
    return -n * red.tau.coeff(1) - 0.5 * n * (n - 1) * sigma_pp


@dataclass(frozen=True)
class WeightSpec:
    """Weight rho(r) = r^power * exp(rate * r) solving (sigma rho)' = tau rho."""

    power: float
    rate: float


def weight_spec(red: NUReduction, sigma: Polynomial) -> WeightSpec:
    """Weight function parameters for the sigma(r) = r family.

    For sigma = r the self-adjointness condition (sigma rho)' = tau rho is
    solved by rho = r^{tau(0) - 1} exp(tau' r).  Other sigmas are not
    needed by this artifact and are rejected.
    """
    if (abs(sigma.coeff(0)) > 1e-12 or abs(sigma.coeff(1) - 1.0) > 1e-12
            or abs(sigma.coeff(2)) > 1e-12):
        raise UnsupportedFamilyError(
            f"weight function only implemented for sigma(r) = r, got {sigma.coeffs}")
    return WeightSpec(power=red.tau(0.0) - 1.0, rate=red.tau.coeff(1))


def rodrigues_polynomial(spec: WeightSpec, n: int, z: float) -> float:
    """Degree-n Rodrigues-formula solution for the r^power e^{rate r} weight.

    Normalized to the standard Laguerre convention (leading coefficient
    (-1)^n / n!), so the value equals L_n^{power}(-rate * z).  Evaluated by
    the explicit Leibniz expansion of the n-th derivative, which keeps this
    route independent of the recurrence in :mod:`diracpauli.special`.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if spec.rate >= 0:
        raise UnsupportedFamilyError(
            f"Rodrigues solutions require a decaying weight, got rate {spec.rate}")
    x = -spec.rate * z
    p = spec.power
    total = 0.0
    binom = 1.0
    falling = 1.0
    for j in range(n + 1):
        if j > 0:
            binom *= (n - j + 1) / j
            falling *= n + p - (j - 1)
        total += binom * falling * (-1.0) ** (n - j) * x ** (n - j)
    return total / math.factorial(n)


def select_integrable_reduction(eq: HypergeometricTypeEquation):
    """The (k, reduction) pair whose weight is integrable at the origin.

    For the sigma(r) = r family both square-completion constants admit a
    reduction with decreasing tau; only one gives a weight exponent
    power > -1 and a decaying rate, i.e. a normalizable polynomial family.
    """
    errors = []
    for k in candidate_ks(eq):
        try:
            red = reduce(eq, k)
            spec = weight_spec(red, eq.sigma)
        except (NoAdmissibleBranchError, AmbiguousBranchError,
                UnsupportedFamilyError) as exc:
            errors.append(f"k={k!r}: {exc}")
            continue
        if spec.power > -1.0 and spec.rate < 0.0:
            return k, red
        errors.append(f"k={k!r}: weight not integrable "
                      f"(power={spec.power!r}, rate={spec.rate!r})")
    raise NoAdmissibleBranchError(
        "no square-completion constant gives an integrable weight: "
        + "; ".join(errors))
