"""Dual-time dynamics: exact t-flow, nonlinear tau-flow, guards, probes."""

import math

import numpy as np
import pytest

from qrel import (
    GaussianOdeState,
    GaussianParams,
    Grid,
    HydroState,
    ResolutionGuardError,
    WaveField,
    continuity_residual,
    cross_flow_defect,
    evolve_t,
    evolve_tau,
    free_packet_sigma_x2,
    from_wave,
    hydro_rhs,
    inner_product,
    integrate_gaussian_ode,
    make_gaussian,
    measured_rates,
    run_trajectory,
    to_wave,
    uncertainty_rates,
)
from qrel.functionals import (
    wave_delta_p2_q,
    wave_delta_x2,
    wave_p_translation,
    wave_sigma_x2,
)
from qrel.states import phase_gradient


def gaussian_parameters_of(w):
    """Extract (sigma2, b) of a Gaussian-family wave field."""
    grid = w.grid
    rho = w.rho
    x = grid.coords[0]
    mean = grid.quadrature(rho * x)
    sigma2 = grid.quadrature(rho * (x - mean) ** 2)
    ds = phase_gradient(w)[0]
    b = grid.quadrature(rho * (x - mean) * ds) / sigma2
    return sigma2, b


class TestTFlow:
    def test_zero_step_is_identity(self, minimal_wave):
        assert evolve_t(minimal_wave, 0.0) is minimal_wave

    def test_plane_wave_keeps_modulus(self, grid):
        k = 2 * np.pi * 3 / grid.length
        psi = np.exp(1j * k * grid.coords[0]) / np.sqrt(grid.length)
        w = WaveField(grid=grid, psi=psi)
        out = evolve_t(w, 0.7)
        assert np.abs(np.abs(out.psi) - np.abs(psi)).max() < 1e-14
        phase = np.angle(out.psi / psi)
        assert np.abs(phase - phase[0]).max() < 1e-12

    def test_packet_spreading(self, minimal_wave):
        out = evolve_t(minimal_wave, 2.0)
        assert abs(wave_sigma_x2(out) - free_packet_sigma_x2(2.0, 1.0)) < 1e-8

    def test_conservation(self, minimal_wave):
        dp0 = wave_delta_p2_q(minimal_wave)
        for t in (0.5, 2.0, 4.0):
            out = evolve_t(minimal_wave, t)
            assert abs(out.norm - 1.0) < 1e-14
            assert abs(wave_delta_p2_q(out) - dp0) < 1e-12


class TestHydroRhs:
    def test_uniform_state_is_stationary(self, grid):
        state = HydroState(grid=grid, rho=np.full(grid.shape, 1.0 / grid.length),
                           s=np.zeros(grid.shape))
        for flow in ("t", "tau"):
            drho, ds = hydro_rhs(state, flow)
            assert np.abs(drho).max() < 1e-12
            assert np.abs(ds).max() < 1e-12

    def test_minimal_gaussian_phase_rate(self, minimal, grid):
        # ds/dt = +(hbar^2/2m) lap(sqrt rho)/sqrt rho = (1/2)(x^2/4 - 1/2)
        x = grid.coords[0]
        _, ds = hydro_rhs(minimal, "t")
        expected = 0.5 * (x**2 / 4.0 - 0.5)
        mask = minimal.rho > 1e-12
        assert np.abs((ds - expected)[mask]).max() < 1e-8

    def test_tau_flow_flips_quantum_potential(self, minimal):
        _, ds_t = hydro_rhs(minimal, "t")
        _, ds_tau = hydro_rhs(minimal, "tau")
        mask = minimal.rho > 1e-12
        assert np.abs((ds_t + ds_tau)[mask]).max() < 1e-12

    def test_euler_step_matches_wave_propagator(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        dt = 1e-4
        drho, _ = hydro_rhs(state, "t")
        rho_euler = state.rho + dt * drho
        rho_exact = evolve_t(to_wave(state), dt).rho
        assert np.abs(rho_euler - rho_exact).max() < 1e-7

    def test_flow_validation(self, minimal):
        with pytest.raises(ValueError):
            hydro_rhs(minimal, "sideways")


class TestTauFlow:
    def test_zero_step_is_identity(self, minimal_wave):
        assert evolve_tau(minimal_wave, 0.0, 5) is minimal_wave
        assert evolve_tau(minimal_wave, 1e-3, 0) is minimal_wave

    def test_matches_gaussian_ode_oracle(self, minimal_wave):
        out = evolve_tau(minimal_wave, 1e-3, 500)
        _, y = integrate_gaussian_ode(GaussianOdeState(1.0, 0.0), "tau", [0.5])
        sigma2, b = gaussian_parameters_of(out)
        assert abs(sigma2 - y[0, -1]) < 1e-6
        assert abs(b - y[1, -1]) < 1e-6

    def test_initial_contraction_rate(self, minimal_wave):
        # db/dtau = -(b^2 + 1/4 sigma^4) = -0.25 at the minimal Gaussian
        out = evolve_tau(minimal_wave, 1e-3, 20)
        _, b = gaussian_parameters_of(out)
        assert b == pytest.approx(-0.25 * 0.02, rel=1e-3)

    def test_strang_is_second_order(self, minimal_wave):
        def terminal_error(dtau):
            steps = int(round(0.5 / dtau))
            out = evolve_tau(minimal_wave, dtau, steps)
            _, y = integrate_gaussian_ode(GaussianOdeState(1.0, 0.0), "tau", [0.5])
            sigma2, b = gaussian_parameters_of(out)
            return abs(sigma2 - y[0, -1]) + abs(b - y[1, -1])

        ratio = terminal_error(1e-3) / terminal_error(5e-4)
        assert abs(ratio - 4.0) <= 0.4

    def test_norm_conserved(self, grid):
        w = to_wave(make_gaussian(GaussianParams(sigma2=0.5, b=1.0), grid))
        out = evolve_tau(w, 1e-3, 400)
        assert abs(out.norm - 1.0) < 1e-10

    def test_translation_generator_conserved(self, grid):
        w = to_wave(make_gaussian(GaussianParams(sigma2=1.0, p0=2.0), grid))
        out = evolve_tau(w, 1e-3, 300)
        assert abs(wave_p_translation(out) - wave_p_translation(w)) < 1e-8

    def test_resolution_guard_trips_on_contraction(self, grid):
        w = to_wave(make_gaussian(GaussianParams(sigma2=0.5, b=-1.0), grid))
        with pytest.raises(ResolutionGuardError) as err:
            evolve_tau(w, 1e-3, 500)
        assert err.value.steps_completed > 100
        assert err.value.wavefield is not None

    def test_node_state_rejected(self, grid):
        x = grid.coords[0]
        psi = x * np.exp(-(x**2) / 4.0)
        psi = (psi / np.sqrt(grid.quadrature(np.abs(psi) ** 2))).astype(complex)
        w = WaveField(grid=grid, psi=psi)
        with pytest.raises(Exception):
            evolve_tau(w, 1e-3, 5)

    def test_nonunitarity_with_norm_conservation(self, grid, minimal_wave):
        other = to_wave(make_gaussian(GaussianParams(sigma2=1.0, x0=1.5), grid))
        before = inner_product(minimal_wave, other)
        a = evolve_tau(minimal_wave, 1e-3, 200)
        b = evolve_tau(other, 1e-3, 200)
        assert abs(a.norm - 1.0) < 1e-10 and abs(b.norm - 1.0) < 1e-10
        assert abs(abs(inner_product(a, b)) - abs(before)) > 1e-4


class TestContinuityResidual:
    def test_stationary_uniform_state(self, grid):
        psi = np.full(grid.shape, 1.0 / math.sqrt(grid.length), dtype=complex)
        w = WaveField(grid=grid, psi=psi)
        assert continuity_residual(w, "t", 1e-3) < 1e-12
        assert continuity_residual(w, "tau", 1e-3) < 1e-12

    def test_minimal_gaussian_both_flows(self, minimal_wave):
        assert continuity_residual(minimal_wave, "t", 1e-3) < 1e-5
        assert continuity_residual(minimal_wave, "tau", 1e-3) < 1e-5


class TestTrajectories:
    def test_t_flow_columns(self, minimal_wave):
        traj = run_trajectory(minimal_wave, "t", 0.05, 80)
        assert len(traj.records) == 81
        assert np.abs(traj.column("norm") - 1.0).max() < 1e-14
        dp2 = traj.column("delta_p2_q")
        assert np.abs(dp2 - dp2[0]).max() < 1e-12
        assert traj.column("continuity_residual").max() < 1e-5
        assert not traj.guard_tripped

    def test_tau_flow_lyapunov(self, minimal_wave):
        traj = run_trajectory(minimal_wave, "tau", 1e-3, 500)
        s_gen = traj.column("s_gen")
        h_q = traj.column("h_q")
        assert np.diff(s_gen).min() > 0.0
        rates = measured_rates(s_gen, 1e-3)
        assert np.abs((rates - h_q[2:-2]) / h_q[2:-2]).max() < 1e-5
        assert h_q.min() >= 0.0
        kq = traj.column("k_q")
        assert np.abs(kq - kq[0]).max() < 1e-6

    def test_guarded_run_is_truncated_and_flagged(self, grid):
        w = to_wave(make_gaussian(GaussianParams(sigma2=0.5, b=-1.0), grid))
        traj = run_trajectory(w, "tau", 1e-3, 500)
        assert traj.guard_tripped
        assert 0 < traj.last_valid_step < 500
        assert "guard" in traj.guard_reason
        assert traj.column("continuity_residual").max() < 1e-5

    def test_single_record_run(self, minimal_wave):
        traj = run_trajectory(minimal_wave, "tau", 1e-3, 0)
        assert len(traj.records) == 1
        assert traj.records[0].time == 0.0


class TestRates:
    def test_chirped_tau_rates(self, grid):
        # d(dx2)/dtau = 2 b sigma2 = 2; d(dp2)/dtau = -b/sigma2 = -1
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        ddx2, ddp2 = uncertainty_rates(state, "tau")
        assert abs(ddx2 - 2.0) < 1e-5
        assert abs(ddp2 + 1.0) < 1e-5
        assert abs(ddx2 * ddp2 + 2.0) < 1e-4

    def test_minimal_rates_saturate(self, minimal):
        ddx2, ddp2 = uncertainty_rates(minimal, "tau")
        assert abs(ddx2) < 1e-8
        assert abs(ddx2 * ddp2) < 1e-10

    def test_battery_products_nonpositive(self, battery):
        for label, state in battery:
            ddx2, ddp2 = uncertainty_rates(state, "tau")
            assert ddx2 * ddp2 <= 1e-8, label

    def test_t_flow_momentum_rate_vanishes(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        _, ddp2 = uncertainty_rates(state, "t")
        assert abs(ddp2) < 1e-8

    def test_t_flow_contraction_counterexample(self, grid):
        # contracting packets shrink delta_x2 under the t-flow: measured, not asserted
        state = make_gaussian(GaussianParams(sigma2=1.0, b=-0.5), grid)
        ddx2, _ = uncertainty_rates(state, "t")
        assert ddx2 < 0.0


class TestCrossFlow:
    def test_holomorphy_on_chirped_state(self, grid):
        state = make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)
        dk_dt, dh_dtau, defect = cross_flow_defect(state)
        assert abs(dk_dt - 0.5) < 1e-5
        assert abs(dh_dtau + 0.5) < 1e-5
        assert abs(defect) < 1e-6

    def test_holomorphy_on_battery_sample(self, battery):
        for label, state in battery[::5]:
            _, _, defect = cross_flow_defect(state)
            assert abs(defect) < 1e-6, label


class TestGaussianOracleInternals:
    def test_t_flow_ode_matches_spreading_law(self):
        times = np.linspace(0.0, 4.0, 9)
        _, y = integrate_gaussian_ode(GaussianOdeState(1.0, 0.0), "t", times)
        for t, sigma2 in zip(times, y[0]):
            assert abs(sigma2 - free_packet_sigma_x2(t, 1.0)) < 1e-9

    def test_lyapunov_identity_inside_oracle(self):
        # d(s_gen)/dtau = h_q holds exactly in the parameter ODEs
        times = np.linspace(0.0, 0.4, 5)
        _, y = integrate_gaussian_ode(GaussianOdeState(1.0, 0.5, 0.1), "tau", times)
        sg = 0.5 * y[1] * y[0] + y[2]
        hq = (y[1] ** 2 * y[0] + 1.0 / (4.0 * y[0])) / 2.0
        rate = np.gradient(sg, times)
        assert abs(rate[2] - hq[2]) < 1e-3


class TestPotentialClamp:
    def test_clamp_counter_reports_events(self, minimal_wave, monkeypatch):
        import qrel.dynamics as dyn_mod

        # force an artificially low clamp so the diagnostic path is exercised
        monkeypatch.setattr(dyn_mod, "W_MAX", 1e-3)
        traj = dyn_mod.run_trajectory(minimal_wave, "tau", 1e-3, 5)
        assert traj.clamp_events > 0

    def test_no_clamping_on_battery_states(self, battery):
        import qrel.dynamics as dyn_mod

        for label, state in battery[:3]:
            traj = dyn_mod.run_trajectory(to_wave(state), "tau", 1e-3, 50)
            assert traj.clamp_events == 0, label
