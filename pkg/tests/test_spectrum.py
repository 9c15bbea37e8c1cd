import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracpauli import (
    Branch,
    ComplexExponentError,
    Convention,
    DomainError,
    FieldConfig,
    NonNormalizableError,
    PartnerMode,
    QuantumNumbers,
    StateKind,
    bound_state,
    canonical_equation,
    classify_state,
    coefficients,
    degeneracy_scan,
    energy_level,
    lambda_n,
    log_gamma,
    normalization_closed,
    normalization_numeric,
    quantization_residual,
    select_integrable_reduction,
    wavefunction_partner,
    wavefunction_upper,
)

CFG = FieldConfig(a=1.0, b=1.0, mu=0.001)
CFG_NEG = FieldConfig(a=1.0, b=1.0, mu=-0.001)
QN00 = QuantumNumbers(n=0, ell=0)


class TestCoefficients:
    def test_plus_exponent_example(self):
        ode = coefficients(CFG_NEG, QN00, Branch.PLUS, 0.0, Convention.SIGN_AWARE)
        assert 1.0 + ode.c3sq == pytest.approx(2.002001, rel=1e-12)
        assert ode.L == pytest.approx(1.4149208458426217, rel=1e-12)

    def test_minus_literal_detects_complex_exponent(self):
        with pytest.raises(ComplexExponentError) as excinfo:
            coefficients(CFG_NEG, QN00, Branch.MINUS, 0.0, Convention.LITERAL)
        assert excinfo.value.one_plus_c3sq == pytest.approx(-0.001999, rel=1e-9)

    def test_b_zero_collapses_cross_terms(self):
        cfg = FieldConfig(a=1.0, b=0.0, mu=0.001)
        ode = coefficients(cfg, QN00, Branch.PLUS, 0.0)
        assert ode.c3sq == pytest.approx(1.0, rel=1e-14)
        assert ode.L == pytest.approx(math.sqrt(2.0), rel=1e-14)

    def test_literal_requires_positive_decay(self):
        with pytest.raises(NonNormalizableError):
            coefficients(CFG_NEG, QN00, Branch.PLUS, 0.0, Convention.LITERAL)

    def test_zero_field_not_normalizable(self):
        cfg = FieldConfig(a=0.0, b=1.0, mu=0.001)
        with pytest.raises(NonNormalizableError):
            coefficients(cfg, QN00, Branch.PLUS, 0.0)


class TestEnergyLevel:
    def test_plus_literal_negative_mu(self):
        eps = energy_level(CFG_NEG, QN00, Branch.PLUS, Convention.LITERAL)
        assert eps == pytest.approx(4.139208458426217e-4, rel=1e-12)

    def test_plus_sign_aware_positive_mu_matches_literal(self):
        eps_sa = energy_level(CFG, QN00, Branch.PLUS, Convention.SIGN_AWARE)
        eps_lit = energy_level(CFG, QN00, Branch.PLUS, Convention.LITERAL)
        assert eps_sa == pytest.approx(-4.1450663245702537e-4, rel=1e-12)
        assert eps_sa == pytest.approx(eps_lit, rel=1e-14)

    def test_zero_a_gives_zero_energy(self):
        cfg = FieldConfig(a=0.0, b=1.0, mu=0.001)
        for branch in Branch:
            assert energy_level(cfg, QN00, branch) == 0.0

    def test_minus_corrected_solves_quantization(self):
        qn = QuantumNumbers(n=2, ell=1)
        eps = energy_level(CFG, qn, Branch.MINUS, Convention.CORRECTED_MINUS)
        ode = coefficients(CFG, qn, Branch.MINUS, eps, Convention.CORRECTED_MINUS)
        assert quantization_residual(ode, qn) <= 1e-12

    def test_linearity_in_a(self):
        # L does not depend on a, so the energy is exactly linear in a
        qn = QuantumNumbers(n=1, ell=1)
        for conv in (Convention.LITERAL, Convention.SIGN_AWARE):
            samples = []
            for a in (1.0, 2.0, 3.0):
                cfg = FieldConfig(a=a, b=1.0, mu=-0.001 if conv is Convention.LITERAL else 0.001)
                samples.append(energy_level(cfg, qn, Branch.PLUS, conv))
            e1, e2, e3 = samples
            assert e3 - e2 == pytest.approx(e2 - e1, rel=1e-12)

    def test_monotone_decreasing_in_b(self):
        qn = QuantumNumbers(n=0, ell=0)
        previous = None
        for b in np.linspace(0.0, 10.0, 201):
            cfg = FieldConfig(a=1.0, b=float(b), mu=-0.001)
            eps = energy_level(cfg, qn, Branch.PLUS, Convention.LITERAL)
            if previous is not None:
                assert eps < previous
            previous = eps


class TestClassify:
    def test_examples(self):
        assert classify_state(4.139e-4) is StateKind.PARTICLE
        assert classify_state(-3.41e-3) is StateKind.ANTIPARTICLE
        assert classify_state(0.0) is StateKind.THRESHOLD


@settings(deadline=None, max_examples=200)
@given(
    ell=st.integers(min_value=0, max_value=40),
    mu=st.floats(min_value=-0.05, max_value=0.05),
    b=st.floats(min_value=-10.0, max_value=10.0),
)
def test_plus_exponent_identity(ell, mu, b):
    # (1+ell)(ell+1-2 mu b) + (mu b)^2 == (ell+1-mu b)^2, so 1+c3sq >= 1
    c3 = (1.0 + ell) * (ell + 1.0 - 2.0 * mu * b) + (mu * b) ** 2
    target = 1.0 + (ell + 1.0 - mu * b) ** 2
    assert 1.0 + c3 == pytest.approx(target, rel=1e-14)
    assert 1.0 + c3 >= 1.0 - 1e-14 * target


@settings(deadline=None, max_examples=200)
@given(
    n=st.integers(min_value=0, max_value=40),
    ell=st.integers(min_value=0, max_value=40),
    mu_b=st.floats(min_value=-50.0, max_value=50.0),
)
def test_plus_energy_bracket_strictly_positive(n, ell, mu_b):
    # sqrt(1 + x^2) > |x| makes n - ell - 1 + L + mu b positive for all inputs
    L = math.sqrt(1.0 + (ell + 1.0 - mu_b) ** 2)
    assert n - ell - 1.0 + L + mu_b > 0.0


class TestBoundState:
    @pytest.mark.parametrize("branch,conv", [
        (Branch.PLUS, Convention.SIGN_AWARE),
        (Branch.MINUS, Convention.CORRECTED_MINUS),
    ])
    def test_quantization_invariant(self, branch, conv):
        for n in range(3):
            for ell in range(3):
                state = bound_state(CFG, QuantumNumbers(n=n, ell=ell), branch, conv)
                assert quantization_residual(state.ode, state.qn) <= 1e-12

    def test_numeric_and_closed_norms_agree_on_plus(self):
        state_num = bound_state(CFG, QuantumNumbers(2, 1), Branch.PLUS)
        state_clo = bound_state(CFG, QuantumNumbers(2, 1), Branch.PLUS, norm="closed")
        assert state_num.norm.N == pytest.approx(state_clo.norm.N, rel=1e-12)

    def test_invalid_norm_mode(self):
        with pytest.raises(DomainError):
            bound_state(CFG, QN00, Branch.PLUS, norm="guess")

    def test_spectrum_quantization_matches_nu_eigenvalue_constants(self):
        # lambda = lambda_n is the same condition as the linear relation in c1
        state = bound_state(CFG, QuantumNumbers(n=2, ell=1), Branch.PLUS)
        eq = canonical_equation(state.ode)
        k, red = select_integrable_reduction(eq)
        assert red.lam == pytest.approx(lambda_n(red, eq.sigma, state.qn.n), rel=1e-9)


class TestWavefunctions:
    def test_nodeless_profile_and_origin_behavior(self):
        state = bound_state(CFG, QN00, Branch.PLUS)
        rs = np.logspace(-2, math.log10(40.0 / state.ode.c2), 300)
        vals = wavefunction_upper(state, rs)
        assert np.all(vals > 0.0)
        # L > 1 pushes the wavefunction to zero at the origin like r^{L-1}
        L, N = state.ode.L, state.norm.N
        seq = [wavefunction_upper(state, r) for r in (1e-3, 1e-6, 1e-9)]
        assert seq[0] > seq[1] > seq[2] > 0.0
        assert seq[2] == pytest.approx(N * (1e-9) ** (L - 1.0), rel=1e-6)

    def test_single_node_location(self):
        state = bound_state(CFG, QuantumNumbers(n=1, ell=0), Branch.PLUS)
        L, c2 = state.ode.L, state.ode.c2
        r_node = (1.0 + 2.0 * L) / (2.0 * c2)
        assert wavefunction_upper(state, r_node) == pytest.approx(0.0, abs=1e-18)
        assert wavefunction_upper(state, 0.99 * r_node) * \
            wavefunction_upper(state, 1.01 * r_node) < 0.0

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5])
    def test_node_count(self, n):
        state = bound_state(CFG, QuantumNumbers(n=n, ell=1), Branch.PLUS)
        L, c2 = state.ode.L, state.ode.c2
        r_hi = (4.0 * n + 4.0 * L + 8.0) / c2
        rs = np.linspace(1e-4 / c2, r_hi, 200001)
        vals = wavefunction_upper(state, rs)
        signs = np.sign(vals)
        signs = signs[signs != 0]
        assert int(np.sum(signs[1:] != signs[:-1])) == n

    def test_partner_nodeless_closed_reduction(self):
        # for n = 0, ell = 0 the relation-derived partner collapses to
        # [(L - 1 + mu b) + (mu a - c2) r] * upper
        state = bound_state(CFG, QN00, Branch.PLUS)
        L, c2 = state.ode.L, state.ode.c2
        for r in (0.5, 1.0, 10.0, 500.0):
            upper = wavefunction_upper(state, r)
            expected = ((L - 1.0 + CFG.mu * CFG.b)
                        + (CFG.mu * CFG.a - c2) * r) * upper
            assert wavefunction_partner(state, r) == pytest.approx(expected, rel=1e-12)

    def test_partner_literal_nodeless(self):
        state = bound_state(CFG, QN00, Branch.PLUS)
        L, c2, N = state.ode.L, state.ode.c2, state.norm.N
        r = 2.0
        expected = N * r ** (L - 1.0) * math.exp(-c2 * r) * (L - 1.0 - c2 * r)
        assert wavefunction_partner(state, r, PartnerMode.LITERAL) == \
            pytest.approx(expected, rel=1e-12)

    def test_partner_mode_gap_matches_analytic_difference(self):
        # relation-derived minus literal = (mu E r - ell) * upper for n = 0
        state = bound_state(CFG, QN00, Branch.PLUS)
        r = 1.0
        gap = (wavefunction_partner(state, r, PartnerMode.RELATION)
               - wavefunction_partner(state, r, PartnerMode.LITERAL))
        upper = wavefunction_upper(state, r)
        expected = (CFG.mu * (CFG.a * r + CFG.b) - 0.0) * upper
        assert gap == pytest.approx(expected, rel=1e-12)
        assert gap != 0.0

    def test_domain_checks(self):
        state = bound_state(CFG, QN00, Branch.PLUS)
        with pytest.raises(DomainError):
            wavefunction_upper(state, 0.0)
        with pytest.raises(DomainError):
            wavefunction_partner(state, -1.0)


class TestNormalization:
    def test_omega_consistency(self):
        state = bound_state(CFG, QuantumNumbers(n=2, ell=1), Branch.PLUS)
        d = normalization_closed(CFG, state.qn, state.ode)
        n, L = state.qn.n, state.ode.L
        assert d.omega1 == pytest.approx(
            d.omega1p + d.omega2p * (2 * n + 2 * L + 1), rel=1e-12)
        assert d.omega2 == pytest.approx((n + 2 * L) * (1 + d.omega2p), rel=1e-12)
        assert d.omega3 == pytest.approx(d.omega2p * (1 + n), rel=1e-12)
        assert d.N > 0

    def test_omega2p_vanishes_when_decay_rate_matches_mu_a(self):
        state = bound_state(CFG, QN00, Branch.PLUS)
        d = normalization_closed(CFG, state.qn, state.ode)
        assert d.omega2p == pytest.approx(0.0, abs=1e-15)
        assert d.omega3 == pytest.approx(0.0, abs=1e-15)

    def test_nodeless_closed_form_structure(self):
        # n = 0: N^2 = (2 c2)^{1+2L} / (Gamma(1+2L)(1+omega1^2)), omega3 = 0
        state = bound_state(CFG, QN00, Branch.PLUS)
        d = normalization_closed(CFG, state.qn, state.ode)
        L, c2 = state.ode.L, state.ode.c2
        expected = math.sqrt((2 * c2) ** (1 + 2 * L)
                             / (math.exp(log_gamma(1 + 2 * L)) * (1 + d.omega1 ** 2)))
        assert d.N == pytest.approx(expected, rel=1e-12)

    def test_numeric_m_independence(self):
        for n, ell in ((0, 0), (1, 1), (2, 0)):
            qn = QuantumNumbers(n=n, ell=ell)
            state = bound_state(CFG, qn, Branch.PLUS)
            ref = normalization_numeric(CFG, qn, state.ode)
            for m in (32, 64):
                val = normalization_numeric(CFG, qn, state.ode, m=m)
                assert val == pytest.approx(ref, rel=1e-12)

    def test_numeric_requires_enough_points(self):
        state = bound_state(CFG, QuantumNumbers(n=3, ell=0), Branch.PLUS)
        with pytest.raises(DomainError):
            normalization_numeric(CFG, state.qn, state.ode, m=4)

    def test_pure_upper_integral_matches_gamma_identity(self):
        # with the partner forced to zero the density integral has a closed form
        state = bound_state(CFG, QN00, Branch.PLUS)
        L, c2, N = state.ode.L, state.ode.c2, state.norm.N
        from diracpauli import gauss_laguerre, laguerre
        rule = gauss_laguerre(8, 2.0 * L)
        p = laguerre(0, 2.0 * L, rule.nodes)
        integral = N ** 2 * rule.integrate(p * p) / (2 * c2) ** (1 + 2 * L)
        expected = N ** 2 * math.exp(log_gamma(2 * L + 1)) / (2 * c2) ** (2 * L + 1)
        assert integral == pytest.approx(expected, rel=1e-12)

    def test_closed_equals_relation_quadrature_even_for_negative_mu(self):
        # omega'2 = -1 exercises all three closed-form terms
        qn = QuantumNumbers(n=2, ell=1)
        eps = energy_level(CFG_NEG, qn, Branch.PLUS, Convention.SIGN_AWARE)
        ode = coefficients(CFG_NEG, qn, Branch.PLUS, eps, Convention.SIGN_AWARE)
        closed = normalization_closed(CFG_NEG, qn, ode)
        numeric = normalization_numeric(CFG_NEG, qn, ode, PartnerMode.RELATION)
        assert closed.omega3 != 0.0
        assert closed.N == pytest.approx(numeric, rel=1e-12)


class TestDegeneracyScan:
    def test_four_by_four_grid(self):
        report = degeneracy_scan(CFG, Branch.PLUS, n_max=3, ell_max=3)
        assert len(report.states) == 16
        assert not report.failures
        assert 1 <= report.max_multiplicity <= 2

    def test_single_state_grid(self):
        report = degeneracy_scan(CFG, Branch.PLUS, n_max=0, ell_max=0)
        assert len(report.states) == 1
        assert report.max_multiplicity == 1

    def test_zero_field_flags_everything(self):
        cfg = FieldConfig(a=0.0, b=1.0, mu=0.001)
        report = degeneracy_scan(cfg, Branch.PLUS, n_max=1, ell_max=1)
        assert not report.states
        assert len(report.failures) == 4
        assert all(f[2] == "NonNormalizableError" for f in report.failures)

    def test_bounds(self):
        with pytest.raises(DomainError):
            degeneracy_scan(CFG, Branch.PLUS, n_max=65, ell_max=0)
