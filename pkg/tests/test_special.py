import math

import numpy as np
import pytest

from diracpauli import (
    DomainError,
    gauss_laguerre,
    laguerre,
    laguerre_derivative,
    log_gamma,
)

RECURRENCE_ALPHAS = (0.0, 0.5, 1.0, 2.83, 5.0)


def test_log_gamma_spot_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-12)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-12)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-12)


def test_log_gamma_against_stdlib():
    # independent oracle: C library lgamma
    for x in np.linspace(0.5, 200.0, 2001):
        mine = log_gamma(float(x))
        ref = math.lgamma(float(x))
        assert abs(math.expm1(mine - ref)) <= 1e-12


def test_log_gamma_small_arguments_via_recurrence():
    for x in (0.05, 0.1, 0.25, 0.49):
        assert abs(math.expm1(log_gamma(x) - math.lgamma(x))) <= 1e-12


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-3.0)


def test_laguerre_basic_values():
    assert laguerre(0, 0.7, 13.2) == 1.0
    assert laguerre(1, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)
    # L_2^alpha(z) = (a+1)(a+2)/2 - (a+2) z + z^2/2
    assert laguerre(2, 1.0, 1.0) == pytest.approx(0.5, rel=1e-13)


def test_laguerre_array_matches_scalar():
    z = np.linspace(0.1, 40.0, 57)
    vals = laguerre(6, 2.83, z)
    for zi, vi in zip(z, vals):
        assert vi == laguerre(6, 2.83, float(zi))


def test_laguerre_parameter_domain():
    with pytest.raises(DomainError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 1.0)


def test_recurrence_identity():
    # (n+k) L_{n-1} + (n+1) L_{n+1} - (2n+k+1-z) L_n = 0
    rng = np.random.default_rng(7)
    z = rng.uniform(1e-6, 40.0, size=20)
    for alpha in RECURRENCE_ALPHAS:
        for n in range(1, 11):
            lhs = ((n + alpha) * laguerre(n - 1, alpha, z)
                   + (n + 1) * laguerre(n + 1, alpha, z)
                   - (2 * n + alpha + 1 - z) * laguerre(n, alpha, z))
            scale = np.maximum.reduce([
                np.abs((n + alpha) * laguerre(n - 1, alpha, z)),
                np.abs((n + 1) * laguerre(n + 1, alpha, z)),
                np.abs((2 * n + alpha + 1 - z) * laguerre(n, alpha, z)),
            ])
            assert np.all(np.abs(lhs) <= 1e-10 * np.maximum(scale, 1.0))


def test_derivative_identity_against_finite_differences():
    # the 1e-6 bound is scaled by the derivative magnitude: the h^2 f'''/6
    # truncation of the oracle itself exceeds 1e-6 once |f'| reaches ~1e3
    rng = np.random.default_rng(11)
    h = 1e-5
    for alpha in RECURRENCE_ALPHAS:
        for n in range(0, 11):
            for z in rng.uniform(0.1, 40.0, size=4):
                exact = laguerre_derivative(n, alpha, float(z))
                fd = (laguerre(n, alpha, float(z + h))
                      - laguerre(n, alpha, float(z - h))) / (2 * h)
                assert abs(exact - fd) <= 1e-6 * max(1.0, abs(exact))


def test_derivative_identity_against_parameter_shift():
    # independent exact route: d/dz L_n^alpha = -L_{n-1}^{alpha+1}
    rng = np.random.default_rng(13)
    z = rng.uniform(1e-3, 40.0, size=20)
    for alpha in RECURRENCE_ALPHAS:
        for n in range(1, 11):
            exact = laguerre_derivative(n, alpha, z)
            ref = -laguerre(n - 1, alpha + 1.0, z)
            assert np.all(np.abs(exact - ref) <= 1e-10 * np.maximum(1.0, np.abs(ref)))


def test_derivative_examples():
    assert laguerre_derivative(0, 2.0, 1.0) == 0.0
    assert laguerre_derivative(1, 0.0, 3.0) == pytest.approx(-1.0, rel=1e-14)
    with pytest.raises(DomainError):
        laguerre_derivative(2, 1.0, 0.0)
    with pytest.raises(DomainError):
        laguerre_derivative(2, 1.0, np.array([1.0, -2.0]))


def test_one_point_rule():
    rule = gauss_laguerre(1, 0.0)
    assert rule.nodes[0] == pytest.approx(1.0, rel=1e-14)
    assert rule.weights[0] == pytest.approx(1.0, rel=1e-14)
    rule = gauss_laguerre(1, 2.5)
    assert rule.nodes[0] == pytest.approx(3.5, rel=1e-14)
    assert rule.weights[0] == pytest.approx(math.exp(math.lgamma(3.5)), rel=1e-12)


def test_rule_bounds():
    with pytest.raises(DomainError):
        gauss_laguerre(0, 0.0)
    with pytest.raises(DomainError):
        gauss_laguerre(257, 0.0)
    with pytest.raises(DomainError):
        gauss_laguerre(4, -1.0)


def _moment_rel_error(rule, j):
    # log-space evaluation keeps huge moments representable
    t = rule.log_weights + j * np.log(rule.nodes)
    tmax = t.max()
    log_sum = math.log(np.exp(t - tmax).sum()) + tmax
    return abs(math.expm1(log_sum - log_gamma(rule.alpha + j + 1.0)))


@pytest.mark.parametrize("m,alpha", [(1, 0.0), (4, 0.0), (8, 0.0),
                                     (16, 2.83), (64, 0.5), (64, 2.83)])
def test_exactness_through_degree(m, alpha):
    rule = gauss_laguerre(m, alpha)
    for j in range(2 * m):
        assert _moment_rel_error(rule, j) <= 1e-10, f"moment {j} off"


def test_exactness_examples():
    rule = gauss_laguerre(8, 0.0)
    assert rule.integrate(rule.nodes ** 5) == pytest.approx(120.0, rel=1e-10)
    rule = gauss_laguerre(16, 2.83)
    expected = math.exp(log_gamma(2.83 + 3.0))
    assert rule.integrate(rule.nodes ** 2) == pytest.approx(expected, rel=1e-10)


def test_orthogonality_spot_check():
    alpha = 1.37
    rule = gauss_laguerre(6, alpha)
    p1 = laguerre(1, alpha, rule.nodes)
    p2 = laguerre(2, alpha, rule.nodes)
    cross = rule.integrate(p1 * p2)
    norm1 = rule.integrate(p1 * p1)
    norm2 = rule.integrate(p2 * p2)
    assert abs(cross) <= 1e-9 * math.sqrt(norm1 * norm2)


def test_weight_sum_and_structure_up_to_max_size():
    for m, alpha in ((32, 0.0), (128, 1.5), (256, 0.0), (256, 2.83)):
        rule = gauss_laguerre(m, alpha)
        assert rule.nodes.shape == (m,) == rule.weights.shape
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(rule.nodes > 0)
        assert np.all(rule.weights >= 0)
        assert np.all(np.isfinite(rule.log_weights))
        mu0 = math.exp(log_gamma(alpha + 1.0))
        assert rule.weights.sum() == pytest.approx(mu0, rel=1e-10)


def test_rule_arrays_are_read_only():
    rule = gauss_laguerre(4, 0.0)
    with pytest.raises(ValueError):
        rule.nodes[0] = 99.0
