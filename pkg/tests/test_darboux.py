"""Seed solution, partner potential, and eigenfunction tests.

Frozen reference values come from 40-50 digit mpmath evaluations of the
underlying series and Gamma ratios (independent of this implementation).
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from susyosc import (
    BetaOutOfRange,
    DomainError,
    EpsilonTooLarge,
    GridError,
    PartnerParams,
    SeedSolution,
    apply_a_op,
    apply_oscillator_op,
    beta_critical,
    energy_level,
    excited_state,
    ground_state,
    hamiltonian_residual,
    oscillator_state,
    partner_potential,
    second_derivative,
    seed_u,
    susy_phi,
    validate_params,
)
from susyosc.darboux import DEFAULT_GRID, GridSpec, WavefunctionGrid


def random_valid_params(rng, complex_beta=False):
    eps = float(rng.uniform(-4.0, 0.45))
    if complex_beta:
        beta = complex(rng.uniform(-1.5, 1.5), float(rng.choice([-1.0, 1.0])) * rng.uniform(0.1, 1.5))
    else:
        beta = float(rng.uniform(-0.9, 0.9)) * beta_critical(eps)
    return PartnerParams(eps, beta)


class TestBetaCritical:
    def test_frozen_gamma_ratio_values(self):
        # mpmath: 2 Gamma(3/4 - eps/2) / Gamma(1/4 - eps/2)
        assert beta_critical(-0.5) == pytest.approx(1.1283791670955125739, rel=1e-12)
        assert beta_critical(-3.5) == pytest.approx(2.6586807763582740409, rel=1e-12)
        # collapses toward zero as eps -> 1/2 (Gamma(1/4 - eps/2) -> +inf)
        assert beta_critical(0.4999) == pytest.approx(0.00017723310053122653836, rel=1e-10)

    def test_domain(self):
        with pytest.raises(EpsilonTooLarge):
            beta_critical(0.5)


class TestValidateParams:
    def test_zero_beta_always_valid(self):
        p = validate_params(PartnerParams(-0.5, 0.0))
        assert not p.complex_family

    def test_real_beta_out_of_range(self):
        with pytest.raises(BetaOutOfRange) as err:
            validate_params(PartnerParams(-0.5, 1.2))
        # message cites the violated bound 2/sqrt(pi)
        assert "1.128379167" in str(err.value)

    def test_complex_beta_flagged(self):
        p = validate_params(PartnerParams(-0.5, 0.5 + 0.5j))
        assert p.complex_family
        # even a large real part is fine once the imaginary part is nonzero
        validate_params(PartnerParams(-0.5, 5.0 + 0.01j))

    def test_epsilon_too_large(self):
        with pytest.raises(EpsilonTooLarge):
            validate_params(PartnerParams(0.5, 0.0))
        with pytest.raises(EpsilonTooLarge):
            validate_params(PartnerParams(0.7, 0.0))

    def test_soft_guard_near_half(self):
        with pytest.raises(EpsilonTooLarge):
            validate_params(PartnerParams(0.4995, 0.0))
        p = validate_params(PartnerParams(0.4995, 0.0), allow_near_half=True)
        assert p.epsilon == 0.4995


class TestSeedSolution:
    def test_gaussian_seed(self):
        # eps = -1/2, beta = 0: 1F1(1/2, 1/2, x^2) = e^{x^2}, so u = e^{x^2/2}
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        xs = np.linspace(-5.0, 5.0, 41)
        u, up = seed_u(seed, xs)
        assert np.allclose(u, np.exp(0.5 * xs * xs), rtol=1e-12)
        assert np.allclose(up, xs * np.exp(0.5 * xs * xs), rtol=1e-12, atol=1e-12)

    def test_value_at_origin(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            params = random_valid_params(rng, complex_beta=bool(rng.integers(0, 2)))
            seed = SeedSolution(params)
            u0, up0 = seed.u_and_deriv(0.0)
            assert u0 == pytest.approx(1.0, abs=1e-14)
            assert up0 == pytest.approx(params.beta, abs=1e-14)

    def test_frozen_oracle_point(self):
        # mpmath 50-digit series at (eps, beta, x) = (0, 0.5, 1)
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        u, up = seed.u_and_deriv(1.0)
        assert u == pytest.approx(1.6101822053249832531, rel=1e-13)
        assert up == pytest.approx(0.97352820537087524444, rel=1e-13)

    def test_finite_out_to_30(self):
        seed = SeedSolution(PartnerParams(0.0, 0.3))
        for x in (-30.0, 30.0):
            u, up = seed.u_and_deriv(x)
            assert np.isfinite(u) and np.isfinite(up)
            assert abs(u) > 0.0

    def test_ode_residual(self):
        # -u''/2 + x^2 u/2 = eps u, probed by finite differences on |x| <= 8
        rng = np.random.default_rng(31)
        xs = np.linspace(-8.004, 8.004, 8005)
        h = xs[1] - xs[0]
        for k in range(12):
            params = random_valid_params(rng, complex_beta=k >= 8)
            seed = SeedSolution(params)
            u, _ = seed.u_and_deriv(xs)
            resid = -0.5 * second_derivative(u, h) + (0.5 * xs * xs - params.epsilon) * u
            rel = np.abs(resid[2:-2]) / np.abs(u[2:-2])
            assert np.max(rel) < 1e-6

    def test_nodeless_scan(self):
        # no sign change and no near-zero of u across 200 random valid params
        # (thinner sample on the pure-Python kernel path, which is ~50x slower)
        from susyosc import _kernels

        n_params = 200 if _kernels.USING_NUMBA else 20
        rng = np.random.default_rng(41)
        xs = np.arange(-10.0, 10.0 + 1e-9, 1e-3)
        for _ in range(n_params):
            params = random_valid_params(rng)
            seed = SeedSolution(params)
            u_s, _, _ = seed._scaled(xs, with_deriv=False)
            u_s = np.real(u_s)
            assert np.all(u_s > 0.0) or np.all(u_s < 0.0)
            assert np.min(np.abs(u_s)) > 1e-12


class TestSusyPhi:
    def test_linear_for_gaussian_seed(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        xs = np.linspace(-8.0, 8.0, 33)
        assert np.allclose(susy_phi(seed, xs), xs, rtol=0, atol=1e-13)

    def test_origin_value_is_beta(self):
        rng = np.random.default_rng(13)
        for _ in range(8):
            params = random_valid_params(rng, complex_beta=bool(rng.integers(0, 2)))
            seed = SeedSolution(params)
            assert susy_phi(seed, 0.0) == pytest.approx(params.beta, abs=1e-14)

    def test_frozen_oracle_point(self):
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        assert susy_phi(seed, 2.0) == pytest.approx(1.6639180636554285414, rel=1e-12)


class TestPartnerPotential:
    def test_shifted_oscillator(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        xs = np.linspace(-10.0, 10.0, 2001)
        v = partner_potential(seed, xs)
        assert np.max(np.abs(v - (0.5 * xs * xs - 1.0))) < 1e-12
        assert partner_potential(seed, 0.0) == pytest.approx(-1.0, abs=1e-14)

    def test_frozen_oracle_point(self):
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        assert partner_potential(seed, 1.5) == pytest.approx(-0.003908342181530557344, abs=1e-10)

    def test_oscillator_growth_at_infinity(self):
        # V approaches x^2/2 - 1 for every family member
        for eps in (-2.0, -0.5, 0.3):
            seed = SeedSolution(PartnerParams(eps, 0.0))
            for x in (-20.0, 20.0):
                assert partner_potential(seed, x) / (0.5 * x * x) == pytest.approx(1.0, abs=1e-2)

    def test_bounded_offset_at_20(self):
        # mpmath oracle at (0, 0.5, +-20): V = 198.99874290951325109
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        for x in (-20.0, 20.0):
            v = partner_potential(seed, x)
            assert v == pytest.approx(198.99874290951325109, rel=1e-9)
            assert abs(v - (0.5 * x * x - 1.0)) < 0.05

    def test_complex_family_is_complex(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.5 + 0.5j))
        v = partner_potential(seed, 1.0)
        assert abs(v.imag) > 1e-8


class TestGroundState:
    def test_gaussian_case(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        state = ground_state(seed)
        expected = math.pi ** (-0.25) * np.exp(-0.5 * state.x**2)
        assert np.max(np.abs(state.values - expected)) < 1e-9

    def test_even_for_zero_beta(self):
        seed = SeedSolution(PartnerParams(-1.3, 0.0))
        state = ground_state(seed)
        assert np.allclose(state.values, state.values[::-1], rtol=0, atol=1e-12)

    def test_normalization_against_adaptive_quadrature(self):
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        state = ground_state(seed)

        def density(x):
            u, _ = seed.u_and_deriv(float(x))
            return 1.0 / abs(u) ** 2

        norm_sq, _ = quad(density, -12.0, 12.0, epsabs=1e-13, epsrel=1e-11, limit=200)
        n_quad = 1.0 / math.sqrt(norm_sq)
        u0, _ = seed.u_and_deriv(0.0)
        n_trap = state.values[np.argmin(np.abs(state.x))] * u0
        assert n_trap == pytest.approx(n_quad, rel=1e-8)

    def test_unit_norm(self):
        seed = SeedSolution(PartnerParams(-2.0, -1.0))
        state = ground_state(seed)
        assert state.norm_sq() == pytest.approx(1.0, abs=1e-6)

    def test_grid_too_small(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        with pytest.raises(GridError):
            ground_state(seed, GridSpec(-2.0, 2.0, 201))

    def test_complex_beta_rejected(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.5 + 0.5j))
        with pytest.raises(DomainError):
            ground_state(seed)


class TestExcitedStates:
    def test_gaussian_case_matches_oscillator(self):
        # eps = -1/2, beta = 0: phi = x, so the n = 0 state collapses to the
        # first oscillator eigenfunction
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        state = excited_state(seed, 0)
        plus = oscillator_state(1)
        assert np.max(np.abs(state.values - plus.values)) < 1e-12

    def test_unit_norm_closed_form_constant(self):
        # the printed normalization is used as-is; norms must come out 1
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        for n in range(6):
            state = excited_state(seed, n)
            assert state.norm_sq() == pytest.approx(1.0, abs=1e-6)

    def test_orthogonality(self):
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        s0 = excited_state(seed, 0)
        s1 = excited_state(seed, 1)
        assert abs(s0.inner(s1)) < 1e-6

    def test_eigen_equation(self):
        for eps, beta in ((-0.5, 0.5), (0.0, 0.3), (-2.0, -1.0)):
            seed = SeedSolution(PartnerParams(eps, beta))
            xs = DEFAULT_GRID.points()
            v = partner_potential(seed, xs)
            for n in range(0, 9, 2):
                state = excited_state(seed, n)
                assert hamiltonian_residual(state, v, energy_level(n)) < 1e-5

    def test_ground_eigen_equation(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.5))
        xs = DEFAULT_GRID.points()
        v = partner_potential(seed, xs)
        state = ground_state(seed)
        assert hamiltonian_residual(state, v, -0.5) < 1e-5

    def test_complex_family_real_spectrum(self):
        # complex beta gives a complex potential with the same real levels
        seed = SeedSolution(PartnerParams(0.0, 0.5 + 0.5j))
        xs = DEFAULT_GRID.points()
        v = partner_potential(seed, xs)
        for n in (0, 2, 5):
            state = excited_state(seed, n)
            assert hamiltonian_residual(state, v, energy_level(n)) < 1e-5


class TestOscillatorStates:
    def test_gaussian_ground(self):
        state = oscillator_state(0)
        expected = math.pi ** (-0.25) * np.exp(-0.5 * state.x**2)
        assert np.max(np.abs(state.values - expected)) < 1e-13

    def test_eigen_equation(self):
        xs = DEFAULT_GRID.points()
        v = 0.5 * xs * xs
        for n in range(6):
            state = oscillator_state(n)
            assert hamiltonian_residual(state, v, energy_level(n)) < 1e-6

    def test_orthonormality(self):
        states = [oscillator_state(n) for n in range(6)]
        for i, si in enumerate(states):
            for j, sj in enumerate(states):
                assert si.inner(sj) == pytest.approx(float(i == j), abs=1e-6)


class TestOperatorMaps:
    def test_a_annihilates_ground(self):
        seed = SeedSolution(PartnerParams(0.0, 0.5))
        state = ground_state(seed)
        out = apply_a_op(seed, state)
        assert np.max(np.abs(out.values)) < 1e-5 * np.max(np.abs(state.values))

    def test_a_dagger_builds_excited(self):
        for eps, beta in ((-0.5, 0.5), (-2.0, -1.0)):
            seed = SeedSolution(PartnerParams(eps, beta))
            for n in range(6):
                plus = oscillator_state(n)
                mapped = apply_a_op(seed, plus, dagger=True)
                target = excited_state(seed, n)
                scale = 1.0 / math.sqrt(energy_level(n) - eps)
                diff = scale * mapped.values - target.values
                assert np.max(np.abs(diff)) < 1e-5

    def test_a_recovers_oscillator(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.5))
        for n in range(6):
            minus = excited_state(seed, n)
            mapped = apply_a_op(seed, minus)
            target = oscillator_state(n)
            scale = 1.0 / math.sqrt(energy_level(n) + 0.5)
            assert np.max(np.abs(scale * mapped.values - target.values)) < 1e-5

    def test_intertwining(self):
        # H_+ (A psi) = A (H_- psi) on a smooth compactly-supported function
        seed = SeedSolution(PartnerParams(-0.7, 0.4))
        xs = DEFAULT_GRID.points()
        h = xs[1] - xs[0]
        psi = WavefunctionGrid(xs, np.exp(-(xs**2)) * np.sin(2.0 * xs), "test")
        v_minus = partner_potential(seed, xs)

        h_minus_psi = WavefunctionGrid(
            xs, -0.5 * second_derivative(psi.values, h) + v_minus * psi.values, "H-psi"
        )
        lhs = apply_a_op(seed, h_minus_psi).values
        a_psi = apply_a_op(seed, psi)
        rhs = -0.5 * second_derivative(a_psi.values, h) + 0.5 * xs * xs * a_psi.values
        scale = np.max(np.abs(rhs))
        assert np.max(np.abs(rhs - lhs)) / scale < 1e-4

    def test_grid_spacing_guard(self):
        seed = SeedSolution(PartnerParams(-0.5, 0.0))
        coarse = oscillator_state(0, GridSpec(-12.0, 12.0, 241))
        with pytest.raises(GridError):
            apply_a_op(seed, coarse)
        with pytest.raises(GridError):
            apply_oscillator_op(coarse)
