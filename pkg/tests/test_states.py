"""State model: constructors, polar conversions, phase extraction."""

import numpy as np
import pytest

from qrel import (
    ConfigurationError,
    DegenerateStateError,
    GaussianParams,
    Grid,
    HydroState,
    WaveField,
    from_wave,
    make_double_gaussian,
    make_gaussian,
    p_translation,
    phase_gradient,
    s_gen,
    sigma_x2,
    to_wave,
)


class TestMakeGaussian:
    def test_normalization(self, minimal, grid):
        assert abs(grid.quadrature(minimal.rho) - 1.0) < 1e-12

    def test_second_moment(self, minimal):
        assert abs(sigma_x2(minimal) - 1.0) < 1e-10

    def test_mean_momentum(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, p0=2.0), grid)
        assert abs(p_translation(state) - 2.0) < 1e-10

    def test_tail_violation_names_parameters(self, grid):
        with pytest.raises(ConfigurationError, match="sigma2=30"):
            make_gaussian(GaussianParams(sigma2=30.0), grid)

    def test_translation_invariance_of_variance(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, x0=3.0), grid)
        assert abs(sigma_x2(state) - 1.0) < 1e-10

    def test_bimodal_variance(self, grid):
        # half-weight Gaussians at +-a: variance sigma^2 + a^2
        state = make_double_gaussian(3.0, 1.0, grid)
        assert abs(sigma_x2(state) - 10.0) < 1e-8

    def test_negative_density_rejected(self, grid):
        rho = np.full(grid.shape, 1.0 / grid.length)
        rho[3] = -rho[3]
        with pytest.raises(DegenerateStateError):
            HydroState(grid=grid, rho=rho, s=np.zeros(grid.shape))


class TestToWave:
    def test_zero_phase_gives_real_field(self, minimal):
        w = to_wave(minimal)
        assert np.abs(w.psi.imag).max() == 0.0
        assert np.allclose(w.psi.real, minimal.sqrt_rho)

    def test_modulus_identity(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0, p0=2.0), grid)
        w = to_wave(state)
        assert np.abs(np.abs(w.psi) ** 2 - state.rho).max() < 1e-14

    def test_norm_preserved(self, grid):
        state = make_gaussian(GaussianParams(sigma2=0.5, b=-1.0), grid)
        assert abs(to_wave(state).norm - 1.0) < 1e-12


class TestFromWave:
    def test_real_positive_field_has_zero_phase(self, minimal_wave):
        state = from_wave(minimal_wave)
        assert np.abs(state.s).max() < 1e-14

    def test_density_is_modulus_squared(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        w = to_wave(state)
        assert np.abs(from_wave(w).rho - np.abs(w.psi) ** 2).max() < 1e-14

    def test_quadratic_phase_gradient_recovered(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        w = to_wave(state)
        (ds,) = phase_gradient(w)
        mask = state.rho > 1e-12
        assert np.abs((ds - grid.coords[0])[mask]).max() < 1e-8

    def test_round_trip_phase_up_to_constant(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0, p0=2.0, c=0.3), grid)
        back = from_wave(to_wave(state))
        mask = state.rho > 1e-12
        diff = (back.s - state.s)[mask]
        assert np.abs(diff - diff.mean()).max() < 1e-8
        assert np.abs(back.rho - state.rho).max() < 1e-14

    def test_strict_mode_rejects_nodes(self, grid):
        x = grid.coords[0]
        psi = x * np.exp(-(x**2) / 4.0)
        psi = psi / np.sqrt(grid.quadrature(np.abs(psi) ** 2))
        w = WaveField(grid=grid, psi=psi.astype(complex))
        with pytest.raises(DegenerateStateError):
            from_wave(w, strict=True)

    def test_norm_preserved_by_conversions(self, grid):
        state = make_gaussian(GaussianParams(sigma2=2.0, b=-1.0, p0=2.0), grid)
        assert abs(from_wave(to_wave(state)).norm - 1.0) < 1e-12


class TestGaugeInvariance:
    @pytest.mark.parametrize("theta", [0.7, -1.2])
    def test_global_phase_shifts_only_s_gen(self, grid, theta):
        from qrel import delta_p2_q, fisher_information, h_q

        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        w = to_wave(state)
        shifted = WaveField(grid=grid, psi=w.psi * np.exp(1j * theta), hbar=w.hbar, mass=w.mass)
        a, b = from_wave(w), from_wave(shifted)
        assert abs(h_q(a) - h_q(b)) < 1e-12
        assert abs(delta_p2_q(a) - delta_p2_q(b)) < 1e-12
        assert abs(fisher_information(a) - fisher_information(b)) < 1e-13
        assert abs((s_gen(b) - s_gen(a)) - w.hbar * theta) < 1e-10


class TestPhaseGradientOfHydroState:
    def test_exact_for_quadratic_phase(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=-1.0, p0=2.0), grid)
        (ds,) = phase_gradient(state)
        expected = -grid.coords[0] + 2.0
        interior = np.abs(grid.coords[0]) < grid.length / 2 - 2 * grid.spacing
        assert np.abs((ds - expected)[interior]).max() < 1e-12
